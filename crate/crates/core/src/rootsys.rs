//! Classical root systems in simple-root coordinates.
//!
//! Roots are stored as integer coefficient vectors over the simple roots
//! `α_1, ..., α_n` (Bourbaki numbering, so the bond between `α_{n-1}` and
//! `α_n` determines the type). Every system also carries the orthonormal
//! `ε`-coordinates of its roots, which is where the Weyl group acts.
//!
//! Positive roots are split into *rows*: row `i` holds the positive roots
//! whose first nonzero coefficient sits at index `i`. Rows are further
//! graded by height, and in type C every row `i < n` carries one long root
//! `γ_i = 2(α_i + ... + α_{n-1}) + α_n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Largest rank per family whose full root set fits a [`RootSet`].
fn max_rank(family: Family) -> usize {
    match family {
        Family::A => 10,
        Family::B | Family::C | Family::D => 8,
    }
}

/// A validated (family, rank) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemId {
    family: Family,
    rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            let reason = match family {
                Family::A => "rank must be positive",
                Family::B | Family::C => "rank must be at least 2",
                Family::D => "rank must be at least 3",
            };
            return Err(Error::InvalidRank {
                family,
                rank,
                reason,
            });
        }
        if rank > max_rank(family) {
            return Err(Error::RankCap {
                what: "root system construction",
                rank,
                max: max_rank(family),
            });
        }
        Ok(RootSystemId { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of `ε`-coordinates (`n + 1` in type A, `n` otherwise).
    pub fn eps_len(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Expected number of positive roots.
    pub fn positive_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root, as its coefficient vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    /// The simple root `α_i` (1-based) in rank `n`.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i - 1] = 1;
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.coeffs.iter().all(|&c| c <= 0) && self.coeffs.iter().any(|&c| c < 0)
    }

    /// Sum of coefficients; the number of simple summands for a positive root.
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    /// 1-based index of the first nonzero coefficient.
    pub fn row(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0).map(|p| p + 1)
    }

    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self ≥ other` in the coefficientwise order.
    pub fn dominates(&self, other: &Root) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    /// `self > other`: dominates and differs.
    pub fn strictly_dominates(&self, other: &Root) -> bool {
        self != other && self.dominates(other)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Index of a root inside a [`RootSystem`]. Positive roots occupy
/// `0..P`, and the negative of root `k` is `k + P`.
pub type RootId = usize;

/// A set of roots of one system, as a bitmask over [`RootId`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RootSet(u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn from_bits(bits: u128) -> Self {
        RootSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(id: RootId) -> Self {
        RootSet(1u128 << id)
    }

    pub fn insert(&mut self, id: RootId) {
        self.0 |= 1u128 << id;
    }

    pub fn remove(&mut self, id: RootId) {
        self.0 &= !(1u128 << id);
    }

    pub fn contains(self, id: RootId) -> bool {
        self.0 >> id & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> RootSetIter {
        RootSetIter(self.0)
    }
}

impl BitOr for RootSet {
    type Output = RootSet;
    fn bitor(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 | rhs.0)
    }
}

impl BitAnd for RootSet {
    type Output = RootSet;
    fn bitand(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 & rhs.0)
    }
}

impl Sub for RootSet {
    type Output = RootSet;
    fn sub(self, rhs: RootSet) -> RootSet {
        RootSet(self.0 & !rhs.0)
    }
}

impl Not for RootSet {
    type Output = RootSet;
    fn not(self) -> RootSet {
        RootSet(!self.0)
    }
}

impl FromIterator<RootId> for RootSet {
    fn from_iter<T: IntoIterator<Item = RootId>>(iter: T) -> Self {
        let mut s = RootSet::EMPTY;
        for id in iter {
            s.insert(id);
        }
        s
    }
}

pub struct RootSetIter(u128);

impl Iterator for RootSetIter {
    type Item = RootId;

    fn next(&mut self) -> Option<RootId> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz)
    }
}

/// `ε`-coordinates of the simple root `α_i` (1-based).
fn simple_eps(id: RootSystemId, i: usize) -> Vec<i32> {
    let n = id.rank();
    let mut v = vec![0; id.eps_len()];
    match id.family() {
        Family::A => {
            v[i - 1] = 1;
            v[i] = -1;
        }
        _ if i < n => {
            v[i - 1] = 1;
            v[i] = -1;
        }
        Family::B => v[n - 1] = 1,
        Family::C => v[n - 1] = 2,
        Family::D => {
            v[n - 2] = 1;
            v[n - 1] = 1;
        }
    }
    v
}

fn range_sum(rank: usize, from: usize, to: usize, coeffs: &mut [i32]) {
    debug_assert!(to <= rank);
    for j in from..=to {
        coeffs[j - 1] += 1;
    }
}

/// Table-driven generation of the positive roots (unsorted).
fn generate_positive(id: RootSystemId) -> Vec<Root> {
    let n = id.rank();
    let mut out = Vec::new();
    // Σ_{j=i}^k α_j, all types; α_{n-1}+α_n is not a root in D.
    for i in 1..=n {
        for k in i..=n {
            if id.family() == Family::D && i == n - 1 && k == n {
                continue;
            }
            let mut c = vec![0; n];
            range_sum(n, i, k, &mut c);
            out.push(Root::new(c));
        }
    }
    match id.family() {
        Family::A => {}
        Family::B => {
            for i in 1..=n {
                for k in (i + 1)..=n {
                    let mut c = vec![0; n];
                    range_sum(n, i, n, &mut c);
                    range_sum(n, k, n, &mut c);
                    out.push(Root::new(c));
                }
            }
        }
        Family::C => {
            for i in 1..=n {
                for k in i..n {
                    let mut c = vec![0; n];
                    range_sum(n, i, n, &mut c);
                    range_sum(n, k, n - 1, &mut c);
                    out.push(Root::new(c));
                }
            }
        }
        Family::D => {
            for i in 1..=n.saturating_sub(2) {
                let mut c = vec![0; n];
                range_sum(n, i, n - 2, &mut c);
                c[n - 1] += 1;
                out.push(Root::new(c));
            }
            for i in 1..=n.saturating_sub(2) {
                for k in (i + 1)..=n.saturating_sub(2) {
                    let mut c = vec![0; n];
                    range_sum(n, i, n, &mut c);
                    range_sum(n, k, n - 2, &mut c);
                    out.push(Root::new(c));
                }
            }
        }
    }
    out
}

/// Canonical order on positive roots: by row, then height, then (for the
/// type-D height ties) the root without `α_n` first.
fn canonical_key(r: &Root) -> (usize, i32, i32, Vec<i32>) {
    let n = r.rank();
    (
        r.row().unwrap_or(0),
        r.height(),
        r.coeffs()[n - 1],
        r.coeffs().to_vec(),
    )
}

/// The positive roots of `id`, in canonical order (row, height, tie-break).
pub fn positive_roots(id: RootSystemId) -> Vec<Root> {
    let mut roots = generate_positive(id);
    roots.sort_by_key(canonical_key);
    roots.dedup();
    roots
}

/// A classical root system with lookup tables.
#[derive(Debug, Clone)]
pub struct RootSystem {
    id: RootSystemId,
    roots: Vec<Root>,
    eps: Vec<Vec<i32>>,
    by_coeffs: HashMap<Vec<i32>, RootId>,
    by_eps: HashMap<Vec<i32>, RootId>,
    rows: Vec<usize>,
}

impl RootSystem {
    pub fn new(id: RootSystemId) -> Self {
        let positive = positive_roots(id);
        debug_assert_eq!(positive.len(), id.positive_count());
        let p = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(Root::neg));

        let simples: Vec<Vec<i32>> = (1..=id.rank()).map(|i| simple_eps(id, i)).collect();
        let eps: Vec<Vec<i32>> = roots
            .iter()
            .map(|r| {
                let mut v = vec![0; id.eps_len()];
                for (c, s) in r.coeffs().iter().zip(&simples) {
                    for (vi, si) in v.iter_mut().zip(s) {
                        *vi += c * si;
                    }
                }
                v
            })
            .collect();

        let by_coeffs = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coeffs().to_vec(), k))
            .collect();
        let by_eps = eps
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        let rows = (0..2 * p)
            .map(|k| if k < p { roots[k].row().unwrap() } else { 0 })
            .collect();

        RootSystem {
            id,
            roots,
            eps,
            by_coeffs,
            by_eps,
            rows,
        }
    }

    pub fn from_parts(family: Family, rank: usize) -> Result<Self> {
        Ok(RootSystem::new(RootSystemId::new(family, rank)?))
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn family(&self) -> Family {
        self.id.family()
    }

    pub fn rank(&self) -> usize {
        self.id.rank()
    }

    /// Number of positive roots `P`.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn eps(&self, id: RootId) -> &[i32] {
        &self.eps[id]
    }

    pub fn positive(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let p = self.num_positive();
        if id < p {
            id + p
        } else {
            id - p
        }
    }

    pub fn height(&self, id: RootId) -> i32 {
        self.roots[id].height()
    }

    /// Row (1-based) of a positive root.
    pub fn row(&self, id: RootId) -> usize {
        self.rows[id]
    }

    pub fn lookup(&self, coeffs: &[i32]) -> Option<RootId> {
        self.by_coeffs.get(coeffs).copied()
    }

    pub fn lookup_eps(&self, eps: &[i32]) -> Option<RootId> {
        self.by_eps.get(eps).copied()
    }

    pub fn id_of(&self, root: &Root) -> Result<RootId> {
        self.lookup(root.coeffs()).ok_or_else(|| Error::NotARoot {
            system: self.id.to_string(),
            coeffs: root.coeffs().to_vec(),
        })
    }

    /// `α_i` as an id (1-based).
    pub fn simple(&self, i: usize) -> RootId {
        self.lookup(Root::simple(self.rank(), i).coeffs())
            .expect("simple root present")
    }

    /// Sum of two roots, if it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s: Vec<i32> = self.roots[a]
            .coeffs()
            .iter()
            .zip(self.roots[b].coeffs())
            .map(|(x, y)| x + y)
            .collect();
        self.lookup(&s)
    }

    /// Difference of two roots, if it is a root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        let s: Vec<i32> = self.roots[a]
            .coeffs()
            .iter()
            .zip(self.roots[b].coeffs())
            .map(|(x, y)| x - y)
            .collect();
        self.lookup(&s)
    }

    pub fn positive_set(&self) -> RootSet {
        (0..self.num_positive()).collect()
    }

    pub fn negative_set(&self) -> RootSet {
        (self.num_positive()..self.num_roots()).collect()
    }

    pub fn all_set(&self) -> RootSet {
        (0..self.num_roots()).collect()
    }

    pub fn simple_set(&self) -> RootSet {
        (1..=self.rank()).map(|i| self.simple(i)).collect()
    }

    /// Positive roots of row `i`, in canonical order.
    pub fn row_ids(&self, i: usize) -> Vec<RootId> {
        (0..self.num_positive())
            .filter(|&k| self.rows[k] == i)
            .collect()
    }

    pub fn row_set(&self, i: usize) -> RootSet {
        self.row_ids(i).into_iter().collect()
    }

    /// Negation of every member of a set.
    pub fn negate_set(&self, s: RootSet) -> RootSet {
        s.iter().map(|k| self.negate(k)).collect()
    }

    /// Roots of a set, as coefficient vectors.
    pub fn roots_of(&self, s: RootSet) -> Vec<Root> {
        s.iter().map(|k| self.roots[k].clone()).collect()
    }

    /// Type-C long root `γ_i = 2(α_i + ... + α_{n-1}) + α_n` for `i < n`.
    pub fn long_root(&self, i: usize) -> Option<RootId> {
        if self.family() != Family::C || i == 0 || i >= self.rank() {
            return None;
        }
        let n = self.rank();
        let mut c = vec![0; n];
        for j in i..n {
            c[j - 1] = 2;
        }
        c[n - 1] = 1;
        self.lookup(&c)
    }

    /// Positive roots contained in the rational span of the given simple
    /// roots (1-based indices).
    pub fn span_of_simples(&self, simples: &[usize]) -> RootSet {
        let mut allowed = vec![false; self.rank()];
        for &i in simples {
            allowed[i - 1] = true;
        }
        (0..self.num_positive())
            .filter(|&k| {
                self.roots[k]
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || allowed[j])
            })
            .collect()
    }

    /// Extremal roots of a positive root: `{β ∈ Φ⁺ : α − β ∈ Φ⁺}`.
    pub fn extremal_ids(&self, alpha: RootId) -> Vec<RootId> {
        (0..self.num_positive())
            .filter(|&b| matches!(self.sub(alpha, b), Some(d) if self.is_positive(d)))
            .collect()
    }
}

/// Extremal roots `{β ∈ Φ⁺ : α − β ∈ Φ⁺}` of a positive root.
pub fn extremal_roots(sys: &RootSystem, alpha: &Root) -> Result<Vec<Root>> {
    let id = sys.id_of(alpha)?;
    if !sys.is_positive(id) {
        return Err(Error::NotPositive(alpha.coeffs().to_vec()));
    }
    Ok(sys
        .extremal_ids(id)
        .into_iter()
        .map(|k| sys.root(k).clone())
        .collect())
}

/// Simple members of [`extremal_roots`].
pub fn extremal_simples(sys: &RootSystem, alpha: &Root) -> Result<Vec<Root>> {
    Ok(extremal_roots(sys, alpha)?
        .into_iter()
        .filter(|r| r.height() == 1)
        .collect())
}

/// Whether row `i` is an abelian or a Heisenberg subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    Abelian,
    Heisenberg,
}

/// Row structure read off the root data: Heisenberg iff two roots of the row
/// sum to a root.
pub fn row_structure_kind(sys: &RootSystem, i: usize) -> Result<RowKind> {
    if i == 0 || i > sys.rank() {
        return Err(Error::RowOutOfRange {
            row: i,
            rank: sys.rank(),
        });
    }
    let row = sys.row_ids(i);
    let closed = row
        .iter()
        .any(|&a| row.iter().any(|&b| sys.add(a, b).is_some()));
    Ok(if closed {
        RowKind::Heisenberg
    } else {
        RowKind::Abelian
    })
}

/// Rows of the positive roots, their height grading, and the type-C long
/// roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowPartition {
    pub rows: Vec<Vec<Root>>,
    /// `heights[i][k - 1]` is `Φ^{i+1}_k`.
    pub heights: Vec<Vec<Vec<Root>>>,
    pub long_roots: Vec<Option<Root>>,
}

impl RowPartition {
    /// Rebuilds the height grading from `rows`. Used after editing rows.
    pub fn regrade(&mut self) {
        self.heights = self.rows.iter().map(|r| grade_by_height(r)).collect();
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn grade_by_height(row: &[Root]) -> Vec<Vec<Root>> {
    let max = row.iter().map(Root::height).max().unwrap_or(0).max(0) as usize;
    let mut out = vec![Vec::new(); max];
    for r in row {
        let h = r.height();
        if h >= 1 {
            out[h as usize - 1].push(r.clone());
        }
    }
    out
}

/// Row decomposition of `Φ⁺`.
pub fn row_partition(sys: &RootSystem) -> RowPartition {
    let n = sys.rank();
    let rows: Vec<Vec<Root>> = (1..=n)
        .map(|i| {
            sys.row_ids(i)
                .into_iter()
                .map(|k| sys.root(k).clone())
                .collect()
        })
        .collect();
    let heights = rows.iter().map(|r| grade_by_height(r)).collect();
    let long_roots = (1..=n)
        .map(|i| sys.long_root(i).map(|k| sys.root(k).clone()))
        .collect();
    RowPartition {
        rows,
        heights,
        long_roots,
    }
}

/// Checks the three verticality conditions on a row partition:
///
/// 1. every root of `Φ^i_k` strictly dominates every root of `Φ^i_{k-1}`;
/// 2. each `|Φ^i_k|` is 1, except for at most one `k` where it is 2;
/// 3. for `2 ≤ i ≤ n-2`, `|Φ^i_k| = 2` forces `Φ^{i-1}_{k+1} = α_{i-1} + Φ^i_k`
///    with `|Φ^{i-1}_{k+1}| = 2`.
pub fn verticality_check(rows: &RowPartition) -> bool {
    let n = rows.rank();
    for (idx, graded) in rows.heights.iter().enumerate() {
        let i = idx + 1;
        // (1)
        for k in 1..graded.len() {
            for a in &graded[k] {
                for b in &graded[k - 1] {
                    if !a.strictly_dominates(b) {
                        return false;
                    }
                }
            }
        }
        // (2)
        if graded.iter().any(|part| part.is_empty() || part.len() > 2) {
            return false;
        }
        if graded.iter().filter(|part| part.len() == 2).count() > 1 {
            return false;
        }
        // (3)
        if i >= 2 && i + 2 <= n {
            for (k0, part) in graded.iter().enumerate() {
                if part.len() != 2 {
                    continue;
                }
                let above = match rows.heights[idx - 1].get(k0 + 1) {
                    Some(p) => p,
                    None => return false,
                };
                if above.len() != 2 {
                    return false;
                }
                let shift = Root::simple(n, i - 1);
                let mut shifted: Vec<Root> = part.iter().map(|r| r.add(&shift)).collect();
                let mut expected = above.clone();
                shifted.sort();
                expected.sort();
                if shifted != expected {
                    return false;
                }
            }
        }
    }
    true
}

/// `α ≥ β` decided by a chain of simple-root additions staying inside
/// `Φ⁺`. Used to cross-check the coefficientwise order.
pub fn dominates_by_chain(sys: &RootSystem, alpha: RootId, beta: RootId) -> bool {
    let p = sys.num_positive();
    let mut seen = vec![false; p];
    let mut stack = vec![beta];
    seen[beta] = true;
    while let Some(cur) = stack.pop() {
        if cur == alpha {
            return true;
        }
        for i in 1..=sys.rank() {
            if let Some(next) = sys.add(cur, sys.simple(i)) {
                if next < p && !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    false
}
