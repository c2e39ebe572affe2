//! Exact conjugation `u⁻¹ M u` by a generic `u ∈ U_π`.

use std::fmt::Write as _;

use crate::error::Result;
use crate::rootsys::{Family, RootId, RootSet, RootSystem};
use crate::weyl::WeylElement;

use super::poly::{Poly, PolyMatrix};
use super::realization::MatrixRealization;

/// `u⁻¹ M u` with one indeterminate per root of `Φ_π` (restricted to an
/// allowed set), `u = exp(X_n) ⋯ exp(X_1)`.
#[derive(Debug, Clone)]
pub struct GenericConjugate {
    matrix: PolyMatrix,
    /// `variables[v]` is the root carrying indeterminate `v`.
    variables: Vec<RootId>,
}

impl GenericConjugate {
    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn variables(&self) -> &[RootId] {
        &self.variables
    }

    /// Coefficient polynomial of `E_α`.
    pub fn coefficient<'a>(&'a self, real: &MatrixRealization, alpha: RootId) -> &'a Poly {
        real.coefficient_poly(&self.matrix, alpha)
    }

    /// Positive roots with a nonzero coefficient polynomial.
    pub fn support(&self, sys: &RootSystem, real: &MatrixRealization) -> RootSet {
        (0..sys.num_positive())
            .filter(|&a| !self.coefficient(real, a).is_zero())
            .collect()
    }

    /// Text dump: one line per positive root with nonzero coefficient.
    pub fn dump(&self, sys: &RootSystem, real: &MatrixRealization) -> String {
        let names = |v: u32| variable_name(sys, self.variables[v as usize]);
        let mut out = String::new();
        for a in 0..sys.num_positive() {
            let p = self.coefficient(real, a);
            if !p.is_zero() {
                let _ = writeln!(out, "{}: {}", sys.root(a), p.display_with(&names));
            }
        }
        out
    }
}

/// `a_ij` for `e_i − e_j` in type A, `x_<coefficients>` otherwise.
pub fn variable_name(sys: &RootSystem, alpha: RootId) -> String {
    if sys.family() == Family::A {
        let eps = sys.eps(alpha);
        let i = eps.iter().position(|&x| x == 1).unwrap() + 1;
        let j = eps.iter().position(|&x| x == -1).unwrap() + 1;
        if i < 10 && j < 10 {
            format!("a_{i}{j}")
        } else {
            format!("a_{i}_{j}")
        }
    } else {
        let c: Vec<String> = sys
            .root(alpha)
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect();
        format!("x_{}", c.join(""))
    }
}

/// Exact `u⁻¹ M u` for `M = Σ_{β∈support} E_β` and generic
/// `u ∈ U_π ∩ U_allowed`.
pub fn generic_conjugate(
    sys: &RootSystem,
    real: &MatrixRealization,
    support: &[RootId],
    pi: &WeylElement,
    allowed: RootSet,
) -> Result<GenericConjugate> {
    super::check_rank(sys)?;
    let rows = pi.inversion_rows(sys)?;
    let variables: Vec<RootId> = rows.iter().flat_map(|r| (*r & allowed).iter()).collect();
    let var_of = |a: RootId| variables.iter().position(|&v| v == a).unwrap() as u32;

    let terms: Vec<(RootId, Poly)> = support.iter().map(|&b| (b, Poly::from_int(1))).collect();
    let mut m = real.combination_poly(&terms);
    for row in rows.iter().rev() {
        let vars = *row & allowed;
        if vars.is_empty() {
            continue;
        }
        let x_terms: Vec<(RootId, Poly)> = vars.iter().map(|a| (a, Poly::var(var_of(a)))).collect();
        let x = real.combination_poly(&x_terms);
        let minus_one = num_rational::BigRational::from_integer((-1).into());
        let e = x.exp_nilpotent();
        let einv = x.scale(&minus_one).exp_nilpotent();
        m = einv.mul(&m).mul(&e);
    }
    Ok(GenericConjugate {
        matrix: m,
        variables,
    })
}

/// `Φ_{U·M}`: positive roots whose coefficient in `u⁻¹ M u` is not
/// identically zero.
pub fn orbit_roots(
    sys: &RootSystem,
    real: &MatrixRealization,
    support: &[RootId],
    pi: &WeylElement,
    allowed: RootSet,
) -> Result<RootSet> {
    if support.is_empty() {
        return Ok(RootSet::EMPTY);
    }
    Ok(generic_conjugate(sys, real, support, pi, allowed)?.support(sys, real))
}
