//! Arithmetic in the prime field `F_p`, `p = 2^61 + 15`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

pub const P: u64 = 2_305_843_009_213_693_967;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(P as i64);
        Fp(r as u64)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(P);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        Fp(r.to_u64().expect("reduced below p"))
    }

    /// `None` when the denominator vanishes mod `p`.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let den = Fp::from_bigint(q.denom());
        if den.is_zero() {
            return None;
        }
        Some(Fp::from_bigint(q.numer()) * den.inv())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in F_p");
        self.pow(P - 2)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(1..P))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + P - rhs.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    n: usize,
    data: Vec<Fp>,
}

impl FpMatrix {
    pub fn zeros(n: usize) -> Self {
        FpMatrix {
            n,
            data: vec![Fp::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FpMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Fp::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fp) {
        self.data[r * self.n + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: Fp) {
        self.data[r * self.n + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, s: Fp) -> FpMatrix {
        FpMatrix {
            n: self.n,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        FpMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        FpMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let mut out = FpMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &FpMatrix) -> FpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `exp(self)` for nilpotent `self`.
    pub fn exp_nilpotent(&self) -> FpMatrix {
        let mut out = FpMatrix::identity(self.n);
        let mut term = FpMatrix::identity(self.n);
        for k in 1..=self.n {
            term = term.mul(self).scale(Fp::from_i64(k as i64).inv());
            if term.is_zero() {
                return out;
            }
            out = out.add(&term);
        }
        assert!(term.mul(self).is_zero(), "exp of a non-nilpotent matrix");
        out
    }

    /// `exp(−X) · self · exp(X)`.
    pub fn conjugate_by_exp(&self, x: &FpMatrix) -> FpMatrix {
        let e = x.exp_nilpotent();
        let einv = x.scale(-Fp::ONE).exp_nilpotent();
        einv.mul(self).mul(&e)
    }
}

/// `re + ε·eps` with `ε² = 0`, for exact first derivatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMatrix {
    pub re: FpMatrix,
    pub eps: FpMatrix,
}

impl DualMatrix {
    pub fn new(re: FpMatrix, eps: FpMatrix) -> Self {
        DualMatrix { re, eps }
    }

    pub fn constant(re: FpMatrix) -> Self {
        let n = re.dim();
        DualMatrix {
            re,
            eps: FpMatrix::zeros(n),
        }
    }

    pub fn identity(n: usize) -> Self {
        DualMatrix::constant(FpMatrix::identity(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    pub fn add(&self, other: &DualMatrix) -> DualMatrix {
        DualMatrix::new(self.re.add(&other.re), self.eps.add(&other.eps))
    }

    pub fn scale(&self, s: Fp) -> DualMatrix {
        DualMatrix::new(self.re.scale(s), self.eps.scale(s))
    }

    pub fn mul(&self, other: &DualMatrix) -> DualMatrix {
        DualMatrix::new(
            self.re.mul(&other.re),
            self.re.mul(&other.eps).add(&self.eps.mul(&other.re)),
        )
    }

    pub fn exp_nilpotent(&self) -> DualMatrix {
        let n = self.re.dim();
        let mut out = DualMatrix::identity(n);
        let mut term = DualMatrix::identity(n);
        for k in 1..=2 * n {
            term = term.mul(self).scale(Fp::from_i64(k as i64).inv());
            if term.is_zero() {
                return out;
            }
            out = out.add(&term);
        }
        panic!("exp of a non-nilpotent matrix");
    }

    /// `exp(−X) · self · exp(X)`.
    pub fn conjugate_by_exp(&self, x: &DualMatrix) -> DualMatrix {
        let e = x.exp_nilpotent();
        let einv = x.scale(-Fp::ONE).exp_nilpotent();
        einv.mul(self).mul(&e)
    }
}

/// Result of [`solve_affine`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Infeasible,
    /// A particular solution and a basis of the kernel.
    Solutions {
        particular: Vec<Fp>,
        kernel: Vec<Vec<Fp>>,
        rank: usize,
    },
}

/// Solves `A x = b` over `F_p`, `A` given row-wise with `cols` columns.
pub fn solve_affine(a: &[Vec<Fp>], b: &[Fp], cols: usize) -> LinearSolution {
    let rows = a.len();
    let mut m: Vec<Vec<Fp>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for v in m[r].iter_mut() {
            *v *= inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c];
                for j in c..=cols {
                    let t = m[r][j] * f;
                    m[k][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return LinearSolution::Infeasible;
    }
    let mut particular = vec![Fp::ZERO; cols];
    for (k, &c) in pivots.iter().enumerate() {
        particular[c] = m[k][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Fp::ZERO; cols];
            v[f] = Fp::ONE;
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = -m[k][f];
            }
            v
        })
        .collect();
    LinearSolution::Solutions {
        particular,
        kernel,
        rank: pivots.len(),
    }
}

/// A row vector `λ` with `λ A = 0` and `λ b ≠ 0`, if `A x = b` has no
/// solution.
pub fn inconsistency_witness(a: &[Vec<Fp>], b: &[Fp], cols: usize) -> Option<Vec<Fp>> {
    let rows = a.len();
    // [A | b | I], reduced on the A columns.
    let mut m: Vec<Vec<Fp>> = (0..rows)
        .map(|k| {
            let mut r = a[k].clone();
            r.push(b[k]);
            r.extend((0..rows).map(|j| if j == k { Fp::ONE } else { Fp::ZERO }));
            r
        })
        .collect();
    let width = cols + 1 + rows;
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for v in m[r].iter_mut() {
            *v *= inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c];
                for j in c..width {
                    let t = m[r][j] * f;
                    m[k][j] -= t;
                }
            }
        }
        r += 1;
    }
    m[r.min(rows)..]
        .iter()
        .find(|row| !row[cols].is_zero())
        .map(|row| row[cols + 1..].to_vec())
}
