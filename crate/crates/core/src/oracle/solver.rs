//! Randomized row-by-row solver for `U_π ∩ U(M, n_{π·H})`.
//!
//! The conditions `ρ_α(u⁻¹ M u) = 0`, `α ∈ C_{π·H}`, are solved row by row
//! from row `n` down to row `1`. Given values for the rows already
//! processed, the conditions of row `i` are affine in the variables of row
//! `i`; the solver evaluates them at a handful of points of `F_p`, solves
//! the linear system, records `#vars − rank`, and continues with a random
//! solution. In type C, rows `i < n` are split into two stages around the
//! long root `γ_i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::{complement_roots, HessenbergSpace};
use crate::paving::operator::CanonicalForm;
use crate::rootsys::{Family, RootId, RootSet, RootSystem};
use crate::weyl::WeylElement;

use super::field::{inconsistency_witness, solve_affine, DualMatrix, Fp, FpMatrix, LinearSolution};
use super::realization::MatrixRealization;
use super::{check_rank, derive_seed, operator_matrix, random_semisimple, root_value};

/// Verdict of [`cell_dim_oracle`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome", content = "value")]
pub enum OracleOutcome {
    Empty,
    Dim(usize),
    /// Per-trial results (`None` for an infeasible trial).
    Inconsistent(Vec<Option<usize>>),
}

impl OracleOutcome {
    pub fn nonempty(&self) -> Option<bool> {
        match self {
            OracleOutcome::Empty => Some(false),
            OracleOutcome::Dim(_) => Some(true),
            OracleOutcome::Inconsistent(_) => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            OracleOutcome::Dim(d) => Some(*d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub trials: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { trials: 5, seed: 0 }
    }
}

/// A linear functional `Σ c_α ρ_α` on the conjugated operator.
type Functional = Vec<(RootId, Fp)>;

/// Stages are keyed by `(row, part)`; part 1 exists only for the split
/// rows of type C.
type StageKey = (usize, usize);

const MAX_RESTARTS: usize = 32;

struct Stage {
    key: StageKey,
    vars: Vec<RootId>,
    conds: Vec<Functional>,
    later: Vec<RootId>,
}

enum StageResult {
    Solved(usize, Vec<(RootId, Fp)>),
    /// `λ` certifying that the stage system has no solution.
    Infeasible(Vec<Fp>),
}

struct Trial<'a> {
    sys: &'a RootSystem,
    real: &'a MatrixRealization,
    complement: RootSet,
    torus: Vec<Fp>,
    rng: ChaCha8Rng,
    /// Consistency conditions of later stages, moved to the last stage
    /// they depend on.
    derived: Vec<(StageKey, Functional)>,
}

impl Trial<'_> {
    fn apply(&self, m: &FpMatrix, f: &Functional) -> Fp {
        f.iter().fold(Fp::ZERO, |acc, &(a, c)| {
            acc + c * self.real.coefficient(m, a)
        })
    }

    /// Values of `conds` on `exp(−X) M' exp(X)`.
    fn evaluate(&self, m: &FpMatrix, x: &[(RootId, Fp)], conds: &[Functional]) -> Vec<Fp> {
        let conj = if x.is_empty() {
            m.clone()
        } else {
            m.conjugate_by_exp(&self.real.combination_fp(x))
        };
        conds.iter().map(|f| self.apply(&conj, f)).collect()
    }

    /// Solves one stage on top of the already-fixed part `fixed` of the
    /// row element.
    fn stage(
        &mut self,
        m: &FpMatrix,
        fixed: &[(RootId, Fp)],
        stage: &Stage,
    ) -> Result<StageResult> {
        let (vars, conds) = (&stage.vars, &stage.conds);
        let with = |vals: &[Fp]| -> Vec<(RootId, Fp)> {
            let mut x = fixed.to_vec();
            x.extend(vars.iter().copied().zip(vals.iter().copied()));
            x
        };
        let zero = vec![Fp::ZERO; vars.len()];
        let base = self.evaluate(m, &with(&zero), conds);
        let mut columns = Vec::with_capacity(vars.len());
        for k in 0..vars.len() {
            let mut unit = zero.clone();
            unit[k] = Fp::ONE;
            let v = self.evaluate(m, &with(&unit), conds);
            columns.push(
                v.iter()
                    .zip(&base)
                    .map(|(&a, &b)| a - b)
                    .collect::<Vec<Fp>>(),
            );
        }
        if !conds.is_empty() && !vars.is_empty() {
            let probe: Vec<Fp> = vars.iter().map(|_| Fp::random(&mut self.rng)).collect();
            let got = self.evaluate(m, &with(&probe), conds);
            for (c, &g) in got.iter().enumerate() {
                let predicted = base[c]
                    + columns
                        .iter()
                        .zip(&probe)
                        .fold(Fp::ZERO, |acc, (col, &p)| acc + col[c] * p);
                if predicted != g {
                    return Err(Error::Oracle(format!(
                        "conditions of row {} are not affine in its variables ({})",
                        stage.key.0,
                        self.sys.id()
                    )));
                }
            }
        }
        let a: Vec<Vec<Fp>> = (0..conds.len())
            .map(|c| columns.iter().map(|col| col[c]).collect())
            .collect();
        let rhs: Vec<Fp> = base.iter().map(|&b| -b).collect();
        let (particular, kernel, rank) = match solve_affine(&a, &rhs, vars.len()) {
            LinearSolution::Infeasible => {
                let lambda = inconsistency_witness(&a, &rhs, vars.len())
                    .expect("an infeasible system has a witness");
                return Ok(StageResult::Infeasible(lambda));
            }
            LinearSolution::Solutions {
                particular,
                kernel,
                rank,
            } => (particular, kernel, rank),
        };
        let mut sol = particular;
        for k in &kernel {
            let c = Fp::random(&mut self.rng);
            for (s, &v) in sol.iter_mut().zip(k) {
                *s += c * v;
            }
        }
        if !stage.later.is_empty() && !conds.is_empty() {
            let mut x = with(&sol);
            let before = self.evaluate(m, &x, conds);
            x.extend(stage.later.iter().map(|&a| (a, Fp::random(&mut self.rng))));
            if self.evaluate(m, &x, conds) != before {
                return Err(Error::Oracle(format!(
                    "type C refinement does not apply in {}",
                    self.sys.id()
                )));
            }
        }
        Ok(StageResult::Solved(vars.len() - rank, with(&sol)))
    }

    fn plan(&self, m: &FpMatrix, i: usize, vars_set: RootSet) -> Vec<Stage> {
        let sys = self.sys;
        let conds_set = self.complement & sys.row_set(i);
        let gamma = sys.long_root(i).filter(|&g| conds_set.contains(g));
        let parts: Vec<(RootSet, RootSet)> = match gamma {
            Some(g) if sys.family() == Family::C => {
                let lower = sys.sub(g, sys.simple(i)).expect("γ_i − α_i is a root");
                let split = if !root_value(sys, g, &self.torus).is_zero() {
                    RootSet::singleton(g)
                } else if !self.real.coefficient(m, sys.simple(i)).is_zero()
                    && root_value(sys, lower, &self.torus).is_zero()
                {
                    RootSet::singleton(g) | RootSet::singleton(lower)
                } else {
                    RootSet::singleton(g)
                };
                vec![
                    (vars_set - split, conds_set - RootSet::singleton(g)),
                    (vars_set & split, RootSet::singleton(g)),
                ]
            }
            _ => vec![(vars_set, conds_set)],
        };
        (0..parts.len())
            .map(|k| {
                let key = (i, k);
                let mut conds: Vec<Functional> =
                    parts[k].1.iter().map(|a| vec![(a, Fp::ONE)]).collect();
                conds.extend(
                    self.derived
                        .iter()
                        .filter(|(t, _)| *t == key)
                        .map(|(_, f)| f.clone()),
                );
                Stage {
                    key,
                    vars: parts[k].0.iter().collect(),
                    conds,
                    later: parts[k + 1..].iter().flat_map(|(v, _)| v.iter()).collect(),
                }
            })
            .collect()
    }

    /// `M` conjugated by the rows of `assign`, each row acting by the
    /// exponential of its combined stage values.
    fn conjugate(&self, m0: &FpMatrix, assign: &[(StageKey, Vec<(RootId, Fp)>)]) -> FpMatrix {
        let n = self.sys.rank();
        let mut m = m0.clone();
        for i in (1..=n).rev() {
            let x: Vec<(RootId, Fp)> = assign
                .iter()
                .filter(|(k, _)| k.0 == i)
                .flat_map(|(_, v)| v.iter().copied())
                .collect();
            if !x.is_empty() {
                m = m.conjugate_by_exp(&self.real.combination_fp(&x));
            }
        }
        m
    }

    /// Latest stage of `assign` on which `g` depends.
    fn last_dependency(
        &mut self,
        m0: &FpMatrix,
        assign: &[(StageKey, Vec<(RootId, Fp)>)],
        g: &Functional,
    ) -> Option<StageKey> {
        let base = self.apply(&self.conjugate(m0, assign), g);
        for j in (0..assign.len()).rev() {
            if assign[j].1.is_empty() {
                continue;
            }
            let mut moved = assign.to_vec();
            for v in moved[j].1.iter_mut() {
                v.1 = Fp::random(&mut self.rng);
            }
            if self.apply(&self.conjugate(m0, &moved), g) != base {
                return Some(assign[j].0);
            }
        }
        None
    }

    /// `|vars| − rank J` for the conditions `ρ_α(u⁻¹ M u)`, `α ∈ C`, at
    /// the point `assign`.
    fn tangent_dim(&self, m0: &FpMatrix, assign: &[(StageKey, Vec<(RootId, Fp)>)]) -> usize {
        let n = self.sys.rank();
        let dim = m0.dim();
        let rows: Vec<FpMatrix> = (1..=n)
            .map(|i| {
                let x: Vec<(RootId, Fp)> = assign
                    .iter()
                    .filter(|(k, _)| k.0 == i)
                    .flat_map(|(_, v)| v.iter().copied())
                    .collect();
                self.real.combination_fp(&x)
            })
            .collect();
        let vars: Vec<(usize, RootId)> = assign
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |&(a, _)| (k.0, a)))
            .collect();
        let conds: Vec<RootId> = self.complement.iter().collect();
        let mut jac = vec![Vec::with_capacity(vars.len()); conds.len()];
        for &(row, a) in &vars {
            let mut m = DualMatrix::constant(m0.clone());
            for i in (1..=n).rev() {
                let eps = if i == row {
                    self.real.root_vector_fp(a)
                } else {
                    FpMatrix::zeros(dim)
                };
                let x = DualMatrix::new(rows[i - 1].clone(), eps);
                if !x.is_zero() {
                    m = m.conjugate_by_exp(&x);
                }
            }
            for (r, &c) in conds.iter().enumerate() {
                jac[r].push(self.real.coefficient(&m.eps, c));
            }
        }
        let rank = match solve_affine(&jac, &vec![Fp::ZERO; conds.len()], vars.len()) {
            LinearSolution::Solutions { rank, .. } => rank,
            LinearSolution::Infeasible => unreachable!("homogeneous system"),
        };
        vars.len() - rank
    }

    fn run(&mut self, m0: &FpMatrix, rows: &[RootSet]) -> Result<Option<usize>> {
        let n = self.sys.rank();
        'restart: for _ in 0..MAX_RESTARTS {
            let mut m = m0.clone();
            let mut dim = 0;
            let mut assign: Vec<(StageKey, Vec<(RootId, Fp)>)> = Vec::new();
            for i in (1..=n).rev() {
                let stages = self.plan(&m, i, rows[i - 1]);
                let mut x: Vec<(RootId, Fp)> = Vec::new();
                for stage in &stages {
                    match self.stage(&m, &x, stage)? {
                        StageResult::Solved(d, next) => {
                            dim += d;
                            assign.push((stage.key, next[x.len()..].to_vec()));
                            x = next;
                        }
                        StageResult::Infeasible(lambda) => {
                            let mut g: Functional = Vec::new();
                            for (f, &l) in stage.conds.iter().zip(&lambda) {
                                g.extend(f.iter().map(|&(a, c)| (a, c * l)));
                            }
                            // Fixed values of this row's earlier stages count
                            // as dependencies too.
                            assign.push((stage.key, Vec::new()));
                            match self.last_dependency(m0, &assign, &g) {
                                None => return Ok(None),
                                Some(t) => {
                                    self.derived.push((t, g));
                                    continue 'restart;
                                }
                            }
                        }
                    }
                }
                if !x.is_empty() {
                    m = m.conjugate_by_exp(&self.real.combination_fp(&x));
                }
            }
            if self
                .complement
                .iter()
                .any(|a| !self.real.coefficient(&m, a).is_zero())
            {
                return Err(Error::Oracle(
                    "solution violates a condition of an earlier row".into(),
                ));
            }
            let tangent = self.tangent_dim(m0, &assign);
            if tangent < dim {
                return Err(Error::Oracle(format!(
                    "tangent space of dimension {tangent} below the constructed family ({dim})"
                )));
            }
            return Ok(Some(tangent));
        }
        Err(Error::Oracle(format!(
            "no consistent stage order found in {} restarts",
            MAX_RESTARTS
        )))
    }
}

/// Dimension of `H(M,H) ∩ BπB` from `trials` independent random runs.
pub fn cell_dim_oracle(
    sys: &RootSystem,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
    config: SolverConfig,
) -> Result<OracleOutcome> {
    check_rank(sys)?;
    if config.trials == 0 {
        return Err(Error::Oracle("at least one trial is required".into()));
    }
    let real = MatrixRealization::new(sys);
    cell_dim_oracle_with(sys, &real, canon, space, pi, config)
}

/// As [`cell_dim_oracle`], reusing a realization.
pub fn cell_dim_oracle_with(
    sys: &RootSystem,
    real: &MatrixRealization,
    canon: &CanonicalForm,
    space: &HessenbergSpace,
    pi: &WeylElement,
    config: SolverConfig,
) -> Result<OracleOutcome> {
    let complement = complement_roots(sys, space, pi)?;
    let rows = pi.inversion_rows(sys)?;
    let mut results = Vec::with_capacity(config.trials);
    for t in 0..config.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, pi, t as u64));
        let torus = random_semisimple(sys, canon, &mut rng)?;
        let m = operator_matrix(real, canon, &torus);
        let mut trial = Trial {
            sys,
            real,
            complement,
            torus,
            rng,
            derived: Vec::new(),
        };
        results.push(trial.run(&m, &rows)?);
    }
    Ok(if results.iter().all(Option::is_none) {
        OracleOutcome::Empty
    } else if results.iter().all(|r| *r == results[0]) {
        OracleOutcome::Dim(results[0].unwrap())
    } else {
        OracleOutcome::Inconsistent(results)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::{from_h, peterson_space, HessFunction};
    use crate::paving::operator::{canonical_form, OperatorSpec};
    use crate::rootsys::Family;
    use crate::weyl;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::from_parts(f, n).unwrap()
    }

    #[test]
    fn identity_cell() {
        let s = sys(Family::A, 2);
        let e = WeylElement::identity(s.id());
        let reg = canonical_form(&OperatorSpec::RegularNilpotent, &s).unwrap();
        let cfg = SolverConfig::default();
        // M ∈ b, so the identity cell is a point.
        let b = HessenbergSpace::borel(&s);
        assert_eq!(
            cell_dim_oracle(&s, &reg, &b, &e, cfg).unwrap(),
            OracleOutcome::Dim(0)
        );
    }

    #[test]
    fn peterson_a2_polynomial() {
        let s = sys(Family::A, 2);
        let reg = canonical_form(&OperatorSpec::RegularNilpotent, &s).unwrap();
        let h = peterson_space(&s);
        let mut poly = vec![0; 4];
        for pi in weyl::enumerate(s.id()).unwrap() {
            if let OracleOutcome::Dim(d) =
                cell_dim_oracle(&s, &reg, &h, &pi, SolverConfig::default()).unwrap()
            {
                poly[d] += 1;
            }
        }
        assert_eq!(poly, vec![1, 2, 1, 0]);
    }

    #[test]
    fn full_space_gives_length() {
        for (f, n) in [(Family::B, 2), (Family::C, 2), (Family::D, 3)] {
            let s = sys(f, n);
            let reg = canonical_form(&OperatorSpec::RegularNilpotent, &s).unwrap();
            let g = HessenbergSpace::full(&s);
            for pi in weyl::enumerate(s.id()).unwrap() {
                let out = cell_dim_oracle(&s, &reg, &g, &pi, SolverConfig { trials: 2, seed: 5 })
                    .unwrap();
                assert_eq!(out, OracleOutcome::Dim(pi.length()));
            }
        }
    }

    #[test]
    fn springer_fiber_is_a_point() {
        for (f, n) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::C, 2),
            (Family::D, 3),
        ] {
            let s = sys(f, n);
            let reg = canonical_form(&OperatorSpec::RegularNilpotent, &s).unwrap();
            let b = HessenbergSpace::borel(&s);
            let nonempty: Vec<OracleOutcome> = weyl::enumerate(s.id())
                .unwrap()
                .iter()
                .map(|pi| cell_dim_oracle(&s, &reg, &b, pi, SolverConfig::default()).unwrap())
                .filter(|o| *o != OracleOutcome::Empty)
                .collect();
            assert_eq!(nonempty, vec![OracleOutcome::Dim(0)], "{f}{n}");
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let s = sys(Family::A, 3);
        let canon = canonical_form(&OperatorSpec::Nilpotent("2,2".parse().unwrap()), &s).unwrap();
        let h = from_h(&s, &HessFunction::new(vec![2, 3, 4, 4]).unwrap()).unwrap();
        let cfg = SolverConfig {
            trials: 3,
            seed: 42,
        };
        for pi in weyl::enumerate(s.id()).unwrap() {
            assert_eq!(
                cell_dim_oracle(&s, &canon, &h, &pi, cfg).unwrap(),
                cell_dim_oracle(&s, &canon, &h, &pi, cfg).unwrap()
            );
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let s = sys(Family::A, 1);
        let canon = canonical_form(&OperatorSpec::RegularNilpotent, &s).unwrap();
        let e = WeylElement::identity(s.id());
        let cfg = SolverConfig { trials: 0, seed: 0 };
        assert!(cell_dim_oracle(&s, &canon, &HessenbergSpace::full(&s), &e, cfg).is_err());
    }

    #[test]
    fn outcome_json() {
        for o in [
            OracleOutcome::Empty,
            OracleOutcome::Dim(3),
            OracleOutcome::Inconsistent(vec![Some(1), None]),
        ] {
            let json = serde_json::to_string(&o).unwrap();
            assert_eq!(serde_json::from_str::<OracleOutcome>(&json).unwrap(), o);
        }
    }
}
