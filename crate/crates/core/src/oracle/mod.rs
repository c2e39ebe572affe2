//! Independent certification of the cell formulas: exact symbolic
//! conjugation by a generic unipotent element, and a randomized row-by-row
//! solver over a large prime field.

pub mod adform;
pub mod field;
pub mod poly;
pub mod realization;
pub mod solver;
pub mod symbolic;

use rand::Rng;

use crate::error::{Error, Result};
use crate::paving::operator::CanonicalForm;
use crate::rootsys::{RootId, RootSystem};
use crate::weyl::WeylElement;

use field::{solve_affine, Fp, FpMatrix, LinearSolution};
use realization::MatrixRealization;

/// Largest rank accepted by the symbolic and numeric oracles.
pub const ORACLE_MAX_RANK: usize = 7;

pub(crate) fn check_rank(sys: &RootSystem) -> Result<()> {
    if sys.rank() > ORACLE_MAX_RANK {
        return Err(Error::RankCap {
            what: "orbit oracle",
            rank: sys.rank(),
            max: ORACLE_MAX_RANK,
        });
    }
    Ok(())
}

/// SplitMix64 step, used to derive independent seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for one (element, trial) pair, stable across runs and threads.
pub fn derive_seed(seed: u64, pi: &WeylElement, trial: u64) -> u64 {
    let mut h = splitmix64(seed);
    for &w in pi.window() {
        h = splitmix64(h ^ (w as i64 as u64));
    }
    splitmix64(h ^ trial.wrapping_mul(0xA24B_AED4_963E_E407))
}

/// `⟨eps(α), t⟩`: the value `α(S)` for `S = Σ t_k H_k`.
pub fn root_value(sys: &RootSystem, alpha: RootId, t: &[Fp]) -> Fp {
    sys.eps(alpha)
        .iter()
        .zip(t)
        .fold(Fp::ZERO, |acc, (&e, &v)| acc + Fp::from_i64(e as i64) * v)
}

/// A random torus element annihilated exactly by the Levi roots of `canon`.
pub fn random_semisimple<R: Rng + ?Sized>(
    sys: &RootSystem,
    canon: &CanonicalForm,
    rng: &mut R,
) -> Result<Vec<Fp>> {
    let m = sys.id().eps_len();
    if !canon.has_semisimple {
        return Ok(vec![Fp::ZERO; m]);
    }
    let rows: Vec<Vec<Fp>> = canon
        .levi_simples
        .iter()
        .map(|&i| {
            sys.eps(sys.simple(i))
                .iter()
                .map(|&e| Fp::from_i64(e as i64))
                .collect()
        })
        .collect();
    let zeros = vec![Fp::ZERO; rows.len()];
    let kernel = match solve_affine(&rows, &zeros, m) {
        LinearSolution::Solutions { kernel, .. } => kernel,
        LinearSolution::Infeasible => unreachable!("homogeneous system"),
    };
    for _ in 0..16 {
        let mut t = vec![Fp::ZERO; m];
        for k in &kernel {
            let c = Fp::random(rng);
            for (ti, &ki) in t.iter_mut().zip(k) {
                *ti += c * ki;
            }
        }
        let generic = (0..sys.num_positive())
            .filter(|&a| !canon.levi.contains(a))
            .all(|a| !root_value(sys, a, &t).is_zero());
        if generic {
            return Ok(t);
        }
    }
    Err(Error::Oracle(
        "could not sample a semisimple element with the requested centralizer".into(),
    ))
}

/// `N + S` as a matrix, with `S` given by its torus coordinates.
pub fn operator_matrix(real: &MatrixRealization, canon: &CanonicalForm, torus: &[Fp]) -> FpMatrix {
    let terms: Vec<(RootId, Fp)> = canon.support.iter().map(|&b| (b, Fp::ONE)).collect();
    let mut m = real.combination_fp(&terms);
    for (h, &c) in real.cartan().iter().zip(torus) {
        if !c.is_zero() {
            m = m.add(&real.to_fp(h).scale(c));
        }
    }
    m
}

/// `u⁻¹ M u` for `u = exp(X_n) ⋯ exp(X_1)`, `rows[i - 1]` holding the
/// `(root, value)` pairs of `X_i`.
pub fn conjugate_by_rows(
    real: &MatrixRealization,
    m: &FpMatrix,
    rows: &[Vec<(RootId, Fp)>],
) -> FpMatrix {
    let mut out = m.clone();
    for row in rows.iter().rev() {
        if row.is_empty() {
            continue;
        }
        out = out.conjugate_by_exp(&real.combination_fp(row));
    }
    out
}

/// Checks `Φ_M ⊆ Φ_{u⁻¹·M}` and that `u⁻¹·M − M` has no component on
/// `Φ_M`, for random `u ∈ U_π`.
pub fn nonoverlap_check(
    sys: &RootSystem,
    canon: &CanonicalForm,
    pi: &WeylElement,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    use rand::SeedableRng;
    check_rank(sys)?;
    let real = MatrixRealization::new(sys);
    let rows = pi.inversion_rows(sys)?;
    for s in 0..samples {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(seed, pi, s as u64));
        let torus = random_semisimple(sys, canon, &mut rng)?;
        let m = operator_matrix(&real, canon, &torus);
        let x: Vec<Vec<(RootId, Fp)>> = rows
            .iter()
            .map(|r| r.iter().map(|a| (a, Fp::random(&mut rng))).collect())
            .collect();
        let conj = conjugate_by_rows(&real, &m, &x);
        let support = real.support(&conj);
        let diff = conj.sub(&m);
        for &b in &canon.support {
            if !support.contains(b) || !real.coefficient(&diff, b).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
