//! Matrix models of the classical Lie algebras with upper-triangular Borel.
//!
//! Type `A_n` is `gl_{n+1}`. Types B, C and D are `{X : XᵀJ + JX = 0}` for
//! an antidiagonal `J` (symmetric of size `2n+1` resp. `2n` for B and D,
//! skew of size `2n` for C). Position `a` carries the torus weight `e_a`
//! for `a ≤ n`, `−e_{a'}` for its mirror `a' = N + 1 − a`, and `0` for the
//! middle position in type B; the matrix unit `E_{ab}` has weight
//! `wt(a) − wt(b)`.

use crate::rootsys::{Family, RootId, RootSet, RootSystem, RootSystemId};

use super::field::{Fp, FpMatrix};
use super::poly::{Poly, PolyMatrix};

/// Sparse integer matrix entries `(row, col, value)`, 0-based.
pub type SparseInt = Vec<(usize, usize, i64)>;

#[derive(Debug, Clone)]
pub struct MatrixRealization {
    system: RootSystemId,
    n: usize,
    weights: Vec<Vec<i32>>,
    /// `J` as `(row, col, sign)`; empty in type A.
    form: SparseInt,
    root_vectors: Vec<SparseInt>,
    anchors: Vec<(usize, usize)>,
    cartan: Vec<SparseInt>,
}

impl MatrixRealization {
    pub fn new(sys: &RootSystem) -> Self {
        let id = sys.id();
        let r = id.rank();
        let n = match id.family() {
            Family::A => r + 1,
            Family::B => 2 * r + 1,
            Family::C | Family::D => 2 * r,
        };
        let m = id.eps_len();
        let mirror = |a: usize| n - 1 - a;
        let weights: Vec<Vec<i32>> = (0..n)
            .map(|a| {
                let mut w = vec![0; m];
                if id.family() == Family::A || a < r {
                    w[a] = 1;
                } else if a >= n - r {
                    w[mirror(a)] = -1;
                }
                w
            })
            .collect();
        let sign = |a: usize| -> i64 {
            if id.family() == Family::C && a >= r {
                -1
            } else {
                1
            }
        };
        let form: SparseInt = match id.family() {
            Family::A => Vec::new(),
            _ => (0..n).map(|a| (a, mirror(a), sign(a))).collect(),
        };

        let mut root_vectors = Vec::with_capacity(sys.num_roots());
        let mut anchors = Vec::with_capacity(sys.num_roots());
        for k in 0..sys.num_roots() {
            let target = sys.eps(k);
            let (a, b) = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .find(|&(a, b)| {
                    a != b
                        && weights[a]
                            .iter()
                            .zip(&weights[b])
                            .zip(target)
                            .all(|((x, y), t)| x - y == *t)
                })
                .expect("every root has a matrix position");
            let mut entries = vec![(a, b, 1i64)];
            if id.family() != Family::A {
                // X − J⁻¹XᵀJ for X = E_ab is E_ab − s_a s_b E_{b'a'}.
                let (c, d) = (mirror(b), mirror(a));
                if (c, d) != (a, b) {
                    entries.push((c, d, -sign(a) * sign(b)));
                }
            }
            root_vectors.push(entries);
            anchors.push((a, b));
        }

        let cartan = match id.family() {
            Family::A => (0..n).map(|k| vec![(k, k, 1)]).collect(),
            _ => (0..r)
                .map(|k| vec![(k, k, 1), (mirror(k), mirror(k), -1)])
                .collect(),
        };

        MatrixRealization {
            system: id,
            n,
            weights,
            form,
            root_vectors,
            anchors,
            cartan,
        }
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    /// Ambient matrix size `N`.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn weight(&self, a: usize) -> &[i32] {
        &self.weights[a]
    }

    pub fn root_vector(&self, alpha: RootId) -> &SparseInt {
        &self.root_vectors[alpha]
    }

    pub fn anchor(&self, alpha: RootId) -> (usize, usize) {
        self.anchors[alpha]
    }

    pub fn cartan(&self) -> &[SparseInt] {
        &self.cartan
    }

    pub fn to_fp(&self, entries: &SparseInt) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.n);
        for &(r, c, v) in entries {
            m.add_at(r, c, Fp::from_i64(v));
        }
        m
    }

    pub fn root_vector_fp(&self, alpha: RootId) -> FpMatrix {
        self.to_fp(&self.root_vectors[alpha])
    }

    /// `Σ c_k E_{α_k}` over `F_p`.
    pub fn combination_fp(&self, terms: &[(RootId, Fp)]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.n);
        for &(alpha, c) in terms {
            for &(r, col, v) in &self.root_vectors[alpha] {
                m.add_at(r, col, Fp::from_i64(v) * c);
            }
        }
        m
    }

    /// `Σ p_k E_{α_k}` with polynomial coefficients.
    pub fn combination_poly(&self, terms: &[(RootId, Poly)]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.n);
        for (alpha, p) in terms {
            for &(r, c, v) in &self.root_vectors[*alpha] {
                let mut entry = m.get(r, c).clone();
                entry.add_assign(&p.mul(&Poly::from_int(v)));
                m.set(r, c, entry);
            }
        }
        m
    }

    /// Coefficient of `E_α` in an element of the algebra.
    pub fn coefficient(&self, x: &FpMatrix, alpha: RootId) -> Fp {
        let (a, b) = self.anchors[alpha];
        x.get(a, b)
    }

    pub fn coefficient_poly<'a>(&self, x: &'a PolyMatrix, alpha: RootId) -> &'a Poly {
        let (a, b) = self.anchors[alpha];
        x.get(a, b)
    }

    /// Roots whose coefficient in `x` is nonzero.
    pub fn support(&self, x: &FpMatrix) -> RootSet {
        (0..self.anchors.len())
            .filter(|&k| !self.coefficient(x, k).is_zero())
            .collect()
    }

    /// `XᵀJ + JX = 0` (always true in type A).
    pub fn in_algebra(&self, x: &FpMatrix) -> bool {
        if self.form.is_empty() {
            return true;
        }
        let j = self.to_fp(&self.form);
        let mut xt = FpMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                xt.set(c, r, x.get(r, c));
            }
        }
        xt.mul(&j).add(&j.mul(x)).is_zero()
    }

    /// Rebuilds `x` from its root and Cartan coordinates; equality with `x`
    /// means `x` lies in the span of the basis.
    pub fn decompose_exactly(&self, x: &FpMatrix) -> bool {
        let mut rebuilt = FpMatrix::zeros(self.n);
        for k in 0..self.anchors.len() {
            let c = self.coefficient(x, k);
            if !c.is_zero() {
                rebuilt = rebuilt.add(&self.root_vector_fp(k).scale(c));
            }
        }
        for h in &self.cartan {
            let (a, _, _) = h[0];
            let c = x.get(a, a);
            rebuilt = rebuilt.add(&self.to_fp(h).scale(c));
        }
        rebuilt == *x
    }
}
