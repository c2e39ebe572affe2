//! Nilpotency of `ad X` for `X` in a single row `n_i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootId, RootSystem};

use super::field::{Fp, FpMatrix};
use super::realization::MatrixRealization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdformReport {
    pub holds: bool,
    /// Some sample had a nonzero `γ_i` component in `ρ_i (ad X)²`.
    pub gamma_component: bool,
}

fn random_combination(
    real: &MatrixRealization,
    roots: impl Iterator<Item = RootId>,
    rng: &mut ChaCha8Rng,
) -> FpMatrix {
    let terms: Vec<(RootId, Fp)> = roots.map(|a| (a, Fp::random(rng))).collect();
    real.combination_fp(&terms)
}

/// Checks on random `X ∈ n_i` and random `Y ∈ b`:
/// `(ad X)³ Y = 0`, `ρ_j (ad X)^k Y = 0` for `j > i`, `k ≥ 1`, and
/// `ρ_i (ad X)² Y` is zero (types A, B, D) or lies on `g_{γ_i}` (type C).
pub fn verify_adform(
    sys: &RootSystem,
    i: usize,
    samples: usize,
    seed: u64,
) -> Result<AdformReport> {
    let n = sys.rank();
    if i == 0 || i > n {
        return Err(Error::RowOutOfRange { row: i, rank: n });
    }
    super::check_rank(sys)?;
    let real = MatrixRealization::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32));
    let gamma = if sys.family() == Family::C {
        sys.long_root(i)
    } else {
        None
    };
    let row = sys.row_set(i);
    let mut report = AdformReport {
        holds: true,
        gamma_component: false,
    };
    for _ in 0..samples {
        let x = random_combination(&real, row.iter(), &mut rng);
        let mut y = random_combination(&real, 0..sys.num_positive(), &mut rng);
        for h in real.cartan() {
            y = y.add(&real.to_fp(h).scale(Fp::random(&mut rng)));
        }
        let y1 = x.bracket(&y);
        let y2 = x.bracket(&y1);
        let y3 = x.bracket(&y2);
        report.holds &= y3.is_zero();
        for j in i + 1..=n {
            for a in sys.row_set(j).iter() {
                report.holds &= real.coefficient(&y1, a).is_zero();
                report.holds &= real.coefficient(&y2, a).is_zero();
            }
        }
        for a in row.iter() {
            let c = real.coefficient(&y2, a);
            if Some(a) == gamma {
                report.gamma_component |= !c.is_zero();
            } else {
                report.holds &= c.is_zero();
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::from_parts(f, n).unwrap()
    }

    #[test]
    fn abelian_rows() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 2),
            (Family::B, 3),
            (Family::D, 4),
        ] {
            let s = sys(f, n);
            for i in 1..=n {
                let r = verify_adform(&s, i, 4, 1).unwrap();
                assert!(r.holds, "{f}{n} row {i}");
                assert!(!r.gamma_component);
            }
        }
    }

    #[test]
    fn heisenberg_rows_reach_gamma() {
        for n in 2..=4 {
            let s = sys(Family::C, n);
            for i in 1..=n {
                let r = verify_adform(&s, i, 4, 9).unwrap();
                assert!(r.holds, "C{n} row {i}");
                assert_eq!(r.gamma_component, i < n, "C{n} row {i}");
            }
        }
    }

    #[test]
    fn row_out_of_range() {
        assert!(verify_adform(&sys(Family::A, 2), 3, 1, 0).is_err());
        assert!(verify_adform(&sys(Family::A, 2), 0, 1, 0).is_err());
    }
}
