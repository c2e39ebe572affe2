//! Cell nonemptiness and dimension by the closed formulas, and Poincaré
//! polynomials.

pub mod operator;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::{complement_roots, to_h, HessFunction, HessenbergSpace};
use crate::oracle::realization::MatrixRealization;
use crate::oracle::symbolic;
use crate::rootsys::{Family, Root, RootSet, RootSystem};
use crate::tableaux::{
    dimension, index_boxes, is_nonempty, multidiagram_dimension, multidiagram_nonempty, Filling,
    MultiDiagram, Partition,
};
use crate::weyl::{self, WeylElement};

use operator::{canonical_form, CanonicalForm, OperatorSpec};

/// Which closed formula produced a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    RegularNilpotent,
    TypeANilpotent,
    TypeAGeneral,
    Semisimple,
}

impl Formula {
    pub fn for_spec(spec: &OperatorSpec) -> Formula {
        match spec {
            OperatorSpec::RegularNilpotent => Formula::RegularNilpotent,
            OperatorSpec::Nilpotent(_) => Formula::TypeANilpotent,
            OperatorSpec::General(_) => Formula::TypeAGeneral,
            OperatorSpec::Semisimple(_) => Formula::Semisimple,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::RegularNilpotent => "regular-nilpotent",
            Formula::TypeANilpotent => "type-a-nilpotent",
            Formula::TypeAGeneral => "type-a-general",
            Formula::Semisimple => "semisimple",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub pi: Vec<i32>,
    pub length: usize,
    pub nonempty: bool,
    pub dim: Option<usize>,
    pub formula: Formula,
}

impl CellReport {
    fn empty(pi: &WeylElement, formula: Formula) -> Self {
        CellReport {
            pi: pi.window().to_vec(),
            length: pi.length(),
            nonempty: false,
            dim: None,
            formula,
        }
    }

    fn with_dim(pi: &WeylElement, dim: usize, formula: Formula) -> Self {
        CellReport {
            pi: pi.window().to_vec(),
            length: pi.length(),
            nonempty: true,
            dim: Some(dim),
            formula,
        }
    }
}

/// Source of `Φ_{U·M}` for `U = U_π ∩ U_allowed`.
pub trait OrbitRoots: Sync {
    fn orbit_roots(&self, pi: &WeylElement, allowed: RootSet) -> Result<RootSet>;
}

/// Symbolic conjugation with a per-`(π, allowed)` cache.
pub struct SymbolicOrbits {
    sys: RootSystem,
    real: MatrixRealization,
    support: Vec<usize>,
    cache: Mutex<HashMap<(Vec<i32>, RootSet), RootSet>>,
}

impl SymbolicOrbits {
    pub fn new(sys: &RootSystem, canon: &CanonicalForm) -> Self {
        SymbolicOrbits {
            sys: sys.clone(),
            real: MatrixRealization::new(sys),
            support: canon.support.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl OrbitRoots for SymbolicOrbits {
    fn orbit_roots(&self, pi: &WeylElement, allowed: RootSet) -> Result<RootSet> {
        let key = (pi.window().to_vec(), allowed);
        if let Some(&hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit);
        }
        let roots = symbolic::orbit_roots(&self.sys, &self.real, &self.support, pi, allowed)?;
        self.cache.lock().unwrap().insert(key, roots);
        Ok(roots)
    }
}

fn support_fits(
    sys: &RootSystem,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
) -> Result<bool> {
    let inv = pi.inverse();
    for &b in &canon.support {
        if !space.contains(inv.act(sys, b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nilpotent `N` (regular in any type, any Jordan type in type A):
/// nonempty iff `π⁻¹β ∈ M_H` on the support, of dimension
/// `|Φ_π| − |C_{π·H} ∩ Φ_{U_π·N}|`.
pub fn cell_nilpotent(
    sys: &RootSystem,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
    orbits: &dyn OrbitRoots,
    formula: Formula,
) -> Result<CellReport> {
    if !support_fits(sys, canon, space, pi)? {
        return Ok(CellReport::empty(pi, formula));
    }
    let c = complement_roots(sys, space, pi)?;
    let lost = if c.is_empty() {
        0
    } else {
        (orbits.orbit_roots(pi, sys.positive_set())? & c).len()
    };
    Ok(CellReport::with_dim(pi, pi.length() - lost, formula))
}

pub fn cell_regular_nilpotent(
    sys: &RootSystem,
    space: &HessenbergSpace,
    pi: &WeylElement,
    orbits: &dyn OrbitRoots,
) -> Result<CellReport> {
    let canon = canonical_form(&OperatorSpec::RegularNilpotent, sys)?;
    cell_nilpotent(sys, &canon, space, pi, orbits, Formula::RegularNilpotent)
}

/// `|Φ_π ∩ Φ_n ∩ πM_H| + |Φ_π ∩ Φ_l|`; every cell is nonempty.
pub fn cell_semisimple(
    sys: &RootSystem,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
) -> Result<CellReport> {
    let inv = pi.inversion_set(sys)?;
    let c = complement_roots(sys, space, pi)?;
    let n_part = sys.positive_set() - canon.levi;
    let dim = ((inv & n_part) - c).len() + (inv & canon.levi).len();
    Ok(CellReport::with_dim(pi, dim, Formula::Semisimple))
}

/// Type A operator `S + N` with `N` in the Levi `l` of `S`: the
/// `n_M`-part counts `|Φ_π ∩ Φ_n ∩ πM_H|`, the Levi part is the nilpotent
/// formula for `U_π ∩ L`.
pub fn cell_type_a_general(
    sys: &RootSystem,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
    orbits: &dyn OrbitRoots,
) -> Result<CellReport> {
    if !support_fits(sys, canon, space, pi)? {
        return Ok(CellReport::empty(pi, Formula::TypeAGeneral));
    }
    let inv = pi.inversion_set(sys)?;
    let c = complement_roots(sys, space, pi)?;
    let levi = canon.levi;
    let n_part = sys.positive_set() - levi;
    let levi_c = c & levi;
    let lost = if levi_c.is_empty() {
        0
    } else {
        (orbits.orbit_roots(pi, levi)? & levi_c).len()
    };
    let dim = ((inv & n_part) - c).len() + (inv & levi).len() - lost;
    Ok(CellReport::with_dim(pi, dim, Formula::TypeAGeneral))
}

/// Tableau model of a type-A operator, when one applies.
#[derive(Debug, Clone)]
pub enum TableauModel {
    Single(Partition),
    Multi(MultiDiagram),
}

impl TableauModel {
    pub fn for_spec(sys: &RootSystem, spec: &OperatorSpec) -> Result<Option<TableauModel>> {
        if sys.family() != Family::A {
            return Ok(None);
        }
        let m = sys.rank() + 1;
        Ok(match spec {
            OperatorSpec::RegularNilpotent => Some(TableauModel::Single(Partition::new(vec![m])?)),
            OperatorSpec::Nilpotent(mu) => Some(TableauModel::Single(mu.clone())),
            OperatorSpec::General(blocks) => {
                let shapes: Vec<Partition> = blocks.iter().map(|b| b.partition.clone()).collect();
                Some(TableauModel::Multi(MultiDiagram::new(&shapes)?))
            }
            OperatorSpec::Semisimple(_) => {
                // Each eigenspace is a run of boxes; the multidiagram layout
                // requires the runs to be weakly decreasing left to right.
                let canon = canonical_form(spec, sys)?;
                let mut sizes = Vec::new();
                let mut run = 1;
                for i in 1..m {
                    if canon.levi_simples.contains(&i) {
                        run += 1;
                    } else {
                        sizes.push(run);
                        run = 1;
                    }
                }
                sizes.push(run);
                if sizes.windows(2).any(|w| w[0] < w[1]) {
                    None
                } else {
                    let shapes = sizes
                        .iter()
                        .map(|&s| Partition::new(vec![1; s]))
                        .collect::<Result<Vec<_>>>()?;
                    Some(TableauModel::Multi(MultiDiagram::new(&shapes)?))
                }
            }
        })
    }

    /// `None` for an empty cell, else its dimension.
    pub fn cell(&self, pi: &WeylElement, h: &HessFunction) -> Result<Option<usize>> {
        let f = Filling::from_permutation(pi);
        match self {
            TableauModel::Single(mu) => {
                let d = index_boxes(mu);
                if is_nonempty(&d, &f, h)? {
                    Ok(Some(dimension(&d, &f, h)?))
                } else {
                    Ok(None)
                }
            }
            TableauModel::Multi(md) => {
                if multidiagram_nonempty(md, &f, h)? {
                    Ok(Some(multidiagram_dimension(md, &f, h)?))
                } else {
                    Ok(None)
                }
            }
        }
    }
}

/// Shared read-only context for paving one operator over many spaces.
pub struct Paver {
    sys: RootSystem,
    spec: OperatorSpec,
    canon: CanonicalForm,
    formula: Formula,
    orbits: SymbolicOrbits,
    elements: Vec<WeylElement>,
}

impl Paver {
    pub fn new(sys: &RootSystem, spec: &OperatorSpec) -> Result<Self> {
        let canon = canonical_form(spec, sys)?;
        if !canon.support.is_empty() {
            crate::oracle::check_rank(sys)?;
        }
        Ok(Paver {
            sys: sys.clone(),
            spec: spec.clone(),
            orbits: SymbolicOrbits::new(sys, &canon),
            formula: Formula::for_spec(spec),
            canon,
            elements: weyl::enumerate(sys.id())?,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.canon
    }

    pub fn formula(&self) -> Formula {
        self.formula
    }

    /// Weyl group in enumeration order.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn cell(&self, space: &HessenbergSpace, pi: &WeylElement) -> Result<CellReport> {
        let (sys, canon) = (&self.sys, &self.canon);
        match self.formula {
            Formula::RegularNilpotent | Formula::TypeANilpotent => {
                cell_nilpotent(sys, canon, space, pi, &self.orbits, self.formula)
            }
            Formula::TypeAGeneral => cell_type_a_general(sys, canon, space, pi, &self.orbits),
            Formula::Semisimple => cell_semisimple(sys, canon, space, pi),
        }
    }

    /// All cells, in Weyl group enumeration order.
    pub fn pave(&self, space: &HessenbergSpace) -> Result<Vec<CellReport>> {
        self.elements
            .par_iter()
            .map(|pi| self.cell(space, pi))
            .collect()
    }

    pub fn report(&self, space: &HessenbergSpace) -> Result<PavingReport> {
        let cells = self.pave(space)?;
        let poincare = poincare(&self.sys, &cells)?;
        PavingReport::new(&self.sys, &self.spec, space, self.formula, cells, poincare)
    }
}

/// Coefficients of `x^d`, `d = 0, 1, 2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poincare(Vec<u64>);

impl Poincare {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poincare(coeffs)
    }

    /// `Σ_d counts[d] x^{2d}`.
    pub fn from_cell_counts(counts: &[u64]) -> Self {
        let mut c = vec![0; 2 * counts.len().max(1) - 1];
        for (d, &k) in counts.iter().enumerate() {
            c[2 * d] = k;
        }
        Poincare::new(c)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// Coefficients of `x^0, x^2, x^4, …`.
    pub fn betti(&self) -> Vec<u64> {
        self.0.iter().step_by(2).copied().collect()
    }

    pub fn euler_characteristic(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().skip(1).step_by(2).all(|&c| c == 0)
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && d > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match d {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{d}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Assembles `Σ x^{2 dim}` after checking that `reports` covers `W` once.
pub fn poincare(sys: &RootSystem, reports: &[CellReport]) -> Result<Poincare> {
    let mut seen = HashSet::new();
    for r in reports {
        WeylElement::new(sys.id(), r.pi.clone())?;
        if !seen.insert(r.pi.clone()) {
            return Err(Error::CellCoverage(format!("{:?} listed twice", r.pi)));
        }
        if r.nonempty != r.dim.is_some() {
            return Err(Error::CellCoverage(format!(
                "{:?} has inconsistent nonempty flag and dimension",
                r.pi
            )));
        }
    }
    let order = weyl::group_order(sys.id());
    if seen.len() as u128 != order {
        return Err(Error::CellCoverage(format!(
            "{} cells for a group of order {order}",
            seen.len()
        )));
    }
    let mut counts = Vec::new();
    for d in reports.iter().filter_map(|r| r.dim) {
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    Ok(Poincare::from_cell_counts(&counts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PavingReport {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub operator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HessFunction>,
    #[serde(rename = "M_H", default, skip_serializing_if = "Option::is_none")]
    pub m_h: Option<Vec<Root>>,
    pub formula: Formula,
    pub cells: Vec<CellReport>,
    pub poincare: Poincare,
}

impl PavingReport {
    pub fn new(
        sys: &RootSystem,
        spec: &OperatorSpec,
        space: &HessenbergSpace,
        formula: Formula,
        cells: Vec<CellReport>,
        poincare: Poincare,
    ) -> Result<Self> {
        let (h, m_h) = if sys.family() == Family::A {
            (Some(to_h(sys, space)?), None)
        } else {
            (None, Some(space.to_root_list(sys)))
        };
        Ok(PavingReport {
            family: sys.family(),
            rank: sys.rank(),
            operator: spec.to_string(),
            h,
            m_h,
            formula,
            cells,
            poincare,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::{enumerate_spaces, from_h, peterson_space};

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::from_parts(f, n).unwrap()
    }

    fn betti(s: &RootSystem, spec: &OperatorSpec, space: &HessenbergSpace) -> Vec<u64> {
        Paver::new(s, spec)
            .unwrap()
            .report(space)
            .unwrap()
            .poincare
            .betti()
    }

    #[test]
    fn peterson_a2_a3() {
        let a2 = sys(Family::A, 2);
        assert_eq!(
            betti(&a2, &OperatorSpec::RegularNilpotent, &peterson_space(&a2)),
            vec![1, 2, 1]
        );
        let a3 = sys(Family::A, 3);
        let spec: OperatorSpec = "nilpotent:4".parse().unwrap();
        assert_eq!(betti(&a3, &spec, &peterson_space(&a3)), vec![1, 3, 3, 1]);
    }

    #[test]
    fn flag_variety_for_full_space() {
        let a2 = sys(Family::A, 2);
        for spec in [
            "nilpotent:1,1,1",
            "nilpotent:2,1",
            "regular-nilpotent",
            "semisimple:",
            "general:a=2;b=1",
        ] {
            let spec: OperatorSpec = spec.parse().unwrap();
            assert_eq!(
                betti(&a2, &spec, &HessenbergSpace::full(&a2)),
                vec![1, 2, 2, 1],
                "{spec}"
            );
        }
    }

    #[test]
    fn springer_fiber_point() {
        for (f, n) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            let s = sys(f, n);
            let b = HessenbergSpace::borel(&s);
            assert_eq!(betti(&s, &OperatorSpec::RegularNilpotent, &b), vec![1]);
        }
    }

    #[test]
    fn semisimple_examples() {
        let a2 = sys(Family::A, 2);
        let regular = OperatorSpec::Semisimple(vec![]);
        assert_eq!(betti(&a2, &regular, &peterson_space(&a2)), vec![1, 4, 1]);
        let one = OperatorSpec::Semisimple(vec![vec![1]]);
        let b = HessenbergSpace::borel(&a2);
        let cells = Paver::new(&a2, &one).unwrap().pave(&b).unwrap();
        let s1 = sys(Family::A, 2).simple(1);
        for c in &cells {
            let pi = WeylElement::new(a2.id(), c.pi.clone()).unwrap();
            let expect = usize::from(pi.inversion_set(&a2).unwrap().contains(s1));
            assert_eq!(c.dim, Some(expect));
        }
    }

    #[test]
    fn tableau_matches_formula_a2() {
        let a2 = sys(Family::A, 2);
        for mu in Partition::all(3) {
            let spec = OperatorSpec::Nilpotent(mu);
            let paver = Paver::new(&a2, &spec).unwrap();
            let model = TableauModel::for_spec(&a2, &spec).unwrap().unwrap();
            for h in HessFunction::all(3) {
                let space = from_h(&a2, &h).unwrap();
                for pi in paver.elements() {
                    let c = paver.cell(&space, pi).unwrap();
                    assert_eq!(model.cell(pi, &h).unwrap(), c.dim, "{spec} {h} {pi}");
                }
            }
        }
    }

    #[test]
    fn coverage_errors() {
        let a1 = sys(Family::A, 1);
        let paver = Paver::new(&a1, &OperatorSpec::RegularNilpotent).unwrap();
        let mut cells = paver.pave(&HessenbergSpace::full(&a1)).unwrap();
        assert!(poincare(&a1, &cells[..1]).is_err());
        cells[1] = cells[0].clone();
        assert!(poincare(&a1, &cells).is_err());
    }

    #[test]
    fn poincare_display_and_parity() {
        let p = Poincare::from_cell_counts(&[1, 2, 1]);
        assert_eq!(p.coefficients(), &[1, 0, 2, 0, 1]);
        assert_eq!(p.to_string(), "1 + 2x^2 + x^4");
        assert!(p.is_even());
        assert!(!Poincare::new(vec![1, 1]).is_even());
        assert_eq!(p.euler_characteristic(), 4);
    }

    #[test]
    fn report_json_round_trip() {
        let b2 = sys(Family::B, 2);
        for space in enumerate_spaces(&b2).unwrap() {
            let r = Paver::new(&b2, &OperatorSpec::RegularNilpotent)
                .unwrap()
                .report(&space)
                .unwrap();
            let json = serde_json::to_string(&r).unwrap();
            assert!(json.contains("\"M_H\""));
            assert_eq!(serde_json::from_str::<PavingReport>(&json).unwrap(), r);
        }
    }
}
