//! Hessenberg spaces as root sets `M_H ⊇ Φ⁺`, and Hessenberg functions
//! in type A.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSet, RootSystem, RootSystemId};
use crate::weyl::WeylElement;

/// Largest rank accepted by [`enumerate_spaces`].
pub const MAX_ENUMERATION_RANK: usize = 7;

/// A Hessenberg space of a fixed root system, stored as `M_H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HessenbergSpace {
    system: RootSystemId,
    roots: RootSet,
}

impl HessenbergSpace {
    /// Validates closure: `Φ⁺ ⊆ M` and `α ∈ M, γ ∈ Φ⁺, α+γ ∈ Φ ⇒ α+γ ∈ M`.
    pub fn new(sys: &RootSystem, roots: RootSet) -> Result<Self> {
        if !sys.positive_set().is_subset(roots) {
            return Err(Error::InvalidHessenbergSpace(
                "does not contain every positive root".into(),
            ));
        }
        if !roots.is_subset(sys.all_set()) {
            return Err(Error::InvalidHessenbergSpace("unknown root ids".into()));
        }
        for a in (roots & sys.negative_set()).iter() {
            for g in 0..sys.num_positive() {
                if let Some(s) = sys.add(a, g) {
                    if !roots.contains(s) {
                        return Err(Error::InvalidHessenbergSpace(format!(
                            "{} is in the space but {} + {} = {} is not",
                            sys.root(a),
                            sys.root(a),
                            sys.root(g),
                            sys.root(s)
                        )));
                    }
                }
            }
        }
        Ok(HessenbergSpace {
            system: sys.id(),
            roots,
        })
    }

    /// From a list of roots; positive roots are implied.
    pub fn from_roots(sys: &RootSystem, roots: &[Root]) -> Result<Self> {
        let mut set = sys.positive_set();
        for r in roots {
            if r.rank() != sys.rank() {
                return Err(Error::InvalidHessenbergSpace(format!(
                    "root {r} has the wrong length for {}",
                    sys.id()
                )));
            }
            set.insert(sys.id_of(r)?);
        }
        HessenbergSpace::new(sys, set)
    }

    /// `b`: `M_H = Φ⁺`.
    pub fn borel(sys: &RootSystem) -> Self {
        HessenbergSpace {
            system: sys.id(),
            roots: sys.positive_set(),
        }
    }

    /// `g`: `M_H = Φ`.
    pub fn full(sys: &RootSystem) -> Self {
        HessenbergSpace {
            system: sys.id(),
            roots: sys.all_set(),
        }
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn roots(&self) -> RootSet {
        self.roots
    }

    pub fn contains(&self, id: usize) -> bool {
        self.roots.contains(id)
    }

    /// Negative roots of `M_H`.
    pub fn negative_part(&self, sys: &RootSystem) -> RootSet {
        self.roots & sys.negative_set()
    }

    /// Positive roots `α` with `-α ∉ M_H`: the associated ad-nilpotent ideal.
    pub fn ad_nilpotent_ideal(&self, sys: &RootSystem) -> RootSet {
        sys.negate_set(sys.negative_set() - self.roots)
    }

    pub fn is_subspace_of(&self, other: &HessenbergSpace) -> bool {
        self.system == other.system && self.roots.is_subset(other.roots)
    }

    pub fn dimension_over_borel(&self, sys: &RootSystem) -> usize {
        self.negative_part(sys).len()
    }

    pub fn to_root_list(&self, sys: &RootSystem) -> Vec<Root> {
        sys.roots_of(self.roots)
    }
}

/// `Φ⁺ ∪ (−Δ)`.
pub fn peterson_space(sys: &RootSystem) -> HessenbergSpace {
    HessenbergSpace {
        system: sys.id(),
        roots: sys.positive_set() | sys.negate_set(sys.simple_set()),
    }
}

/// All Hessenberg spaces, ordered by the size of their negative part and
/// then lexicographically by root id.
pub fn enumerate_spaces(sys: &RootSystem) -> Result<Vec<HessenbergSpace>> {
    if sys.rank() > MAX_ENUMERATION_RANK {
        return Err(Error::RankCap {
            what: "Hessenberg space enumeration",
            rank: sys.rank(),
            max: MAX_ENUMERATION_RANK,
        });
    }
    // M_H = Φ⁺ ∪ −I with I a lower order ideal of the root poset. Positive
    // roots come in height order, so predecessors are decided first.
    let p = sys.num_positive();
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&k| (sys.height(k), k));
    let below: Vec<Vec<usize>> = (0..p)
        .map(|b| {
            (1..=sys.rank())
                .filter_map(|i| sys.sub(b, sys.simple(i)))
                .filter(|&d| sys.is_positive(d))
                .collect()
        })
        .collect();

    let mut ideals = Vec::new();
    let mut chosen = RootSet::EMPTY;
    ideal_search(&order, &below, 0, &mut chosen, &mut ideals);

    let pos = sys.positive_set();
    let mut spaces: Vec<HessenbergSpace> = ideals
        .into_iter()
        .map(|i| HessenbergSpace {
            system: sys.id(),
            roots: pos | sys.negate_set(i),
        })
        .collect();
    spaces.sort_by_key(|h| {
        let neg: Vec<usize> = h.negative_part(sys).iter().collect();
        (neg.len(), neg)
    });
    Ok(spaces)
}

fn ideal_search(
    order: &[usize],
    below: &[Vec<usize>],
    pos: usize,
    chosen: &mut RootSet,
    out: &mut Vec<RootSet>,
) {
    if pos == order.len() {
        out.push(*chosen);
        return;
    }
    let b = order[pos];
    ideal_search(order, below, pos + 1, chosen, out);
    if below[b].iter().all(|&d| chosen.contains(d)) {
        chosen.insert(b);
        ideal_search(order, below, pos + 1, chosen, out);
        chosen.remove(b);
    }
}

/// `C_{π·H} = {α ∈ Φ⁺ : π⁻¹α ∉ M_H}`.
pub fn complement_roots(
    sys: &RootSystem,
    h: &HessenbergSpace,
    pi: &WeylElement,
) -> Result<RootSet> {
    if h.system != sys.id() {
        return Err(Error::SystemMismatch(format!(
            "space of {} used with {}",
            h.system,
            sys.id()
        )));
    }
    let inv = pi.inverse();
    let mut out = RootSet::EMPTY;
    for k in 0..sys.num_positive() {
        if !h.roots.contains(inv.act(sys, k)?) {
            out.insert(k);
        }
    }
    Ok(out)
}

/// A type-A Hessenberg function `h : {1..m} → {1..m}`, stored 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct HessFunction(Vec<usize>);

impl HessFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let m = values.len();
        if m == 0 {
            return Err(Error::InvalidHessFunction("empty".into()));
        }
        let mut prev = 1;
        for (idx, &v) in values.iter().enumerate() {
            let i = idx + 1;
            if v < i.max(prev) || v > m {
                return Err(Error::InvalidHessFunction(format!(
                    "h({i}) = {v} violates max(i, h(i-1)) <= h(i) <= {m} in {values:?}"
                )));
            }
            prev = v;
        }
        Ok(HessFunction(values))
    }

    /// `h(i) = i`.
    pub fn borel(m: usize) -> Self {
        HessFunction((1..=m).collect())
    }

    /// `h(i) = m`.
    pub fn full(m: usize) -> Self {
        HessFunction(vec![m; m])
    }

    /// `h(i) = min(i + 1, m)`.
    pub fn peterson(m: usize) -> Self {
        HessFunction((1..=m).map(|i| (i + 1).min(m)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `h(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// All Hessenberg functions on `{1..m}`, in lexicographic order.
    pub fn all(m: usize) -> Vec<HessFunction> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        all_rec(m, &mut cur, &mut out);
        out
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &HessFunction) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

fn all_rec(m: usize, cur: &mut Vec<usize>, out: &mut Vec<HessFunction>) {
    let i = cur.len() + 1;
    if i > m {
        out.push(HessFunction(cur.clone()));
        return;
    }
    let lo = i.max(cur.last().copied().unwrap_or(1));
    for v in lo..=m {
        cur.push(v);
        all_rec(m, cur, out);
        cur.pop();
    }
}

impl TryFrom<Vec<usize>> for HessFunction {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        HessFunction::new(v)
    }
}

impl From<HessFunction> for Vec<usize> {
    fn from(h: HessFunction) -> Vec<usize> {
        h.0
    }
}

impl fmt::Display for HessFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for HessFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad Hessenberg function entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HessFunction::new(values)
    }
}

fn require_type_a(sys: &RootSystem, m: usize) -> Result<()> {
    if sys.family() != Family::A {
        return Err(Error::InvalidHessFunction(format!(
            "Hessenberg functions exist only in type A, not {}",
            sys.id()
        )));
    }
    if sys.rank() + 1 != m {
        return Err(Error::SizeMismatch(format!(
            "Hessenberg function on {m} points used with {}",
            sys.id()
        )));
    }
    Ok(())
}

/// `e_i − e_j` as a root id of a type-A system (1-based, `i ≠ j`).
pub fn type_a_root(sys: &RootSystem, i: usize, j: usize) -> usize {
    let mut v = vec![0; sys.rank() + 1];
    v[i - 1] = 1;
    v[j - 1] = -1;
    sys.lookup_eps(&v).expect("e_i - e_j is a root")
}

/// `E_{ij} ∈ H ⇔ i ≤ h(j)`.
pub fn from_h(sys: &RootSystem, h: &HessFunction) -> Result<HessenbergSpace> {
    let m = h.len();
    require_type_a(sys, m)?;
    let mut roots = sys.positive_set();
    for j in 1..=m {
        for i in (j + 1)..=h.at(j) {
            roots.insert(type_a_root(sys, i, j));
        }
    }
    Ok(HessenbergSpace {
        system: sys.id(),
        roots,
    })
}

pub fn to_h(sys: &RootSystem, space: &HessenbergSpace) -> Result<HessFunction> {
    let m = sys.rank() + 1;
    require_type_a(sys, m)?;
    HessenbergSpace::new(sys, space.roots)?;
    let values = (1..=m)
        .map(|j| {
            ((j + 1)..=m)
                .filter(|&i| space.roots.contains(type_a_root(sys, i, j)))
                .max()
                .unwrap_or(j)
        })
        .collect();
    HessFunction::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::from_parts(f, n).unwrap()
    }

    fn catalan(n: usize) -> usize {
        let mut c = 1usize;
        for k in 0..n {
            c = c * 2 * (2 * k + 1) / (k + 2);
        }
        c
    }

    // Brute force: every subset of Φ⁻, keep closed ones.
    fn brute_force_count(s: &RootSystem) -> usize {
        let p = s.num_positive();
        (0u64..1 << p)
            .filter(|mask| {
                let neg: RootSet = (0..p)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| k + p)
                    .collect();
                HessenbergSpace::new(s, s.positive_set() | neg).is_ok()
            })
            .count()
    }

    #[test]
    fn catalan_counts_in_type_a() {
        for n in 1..=5 {
            let s = sys(Family::A, n);
            assert_eq!(enumerate_spaces(&s).unwrap().len(), catalan(n + 1), "A{n}");
        }
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(6), 132);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (f, n) in [
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::C, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 3),
        ] {
            let s = sys(f, n);
            let spaces = enumerate_spaces(&s).unwrap();
            assert_eq!(spaces.len(), brute_force_count(&s), "{f}{n}");
            let mut dedup = spaces.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), spaces.len());
            for h in &spaces {
                assert!(HessenbergSpace::new(&s, h.roots()).is_ok());
            }
        }
        assert_eq!(enumerate_spaces(&sys(Family::B, 2)).unwrap().len(), 6);
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(
            enumerate_spaces(&sys(Family::A, 8)),
            Err(Error::RankCap { .. })
        ));
    }

    #[test]
    fn closure_violation_rejected() {
        let s = sys(Family::A, 2);
        // −(α1+α2) without −α1, −α2.
        let bad = s.positive_set() | RootSet::singleton(s.negate(s.lookup(&[1, 1]).unwrap()));
        assert!(HessenbergSpace::new(&s, bad).is_err());
        assert!(HessenbergSpace::new(&s, RootSet::EMPTY).is_err());
    }

    #[test]
    fn h_special_cases() {
        let s = sys(Family::A, 3);
        assert_eq!(
            from_h(&s, &HessFunction::borel(4)).unwrap(),
            HessenbergSpace::borel(&s)
        );
        assert_eq!(
            from_h(&s, &HessFunction::full(4)).unwrap(),
            HessenbergSpace::full(&s)
        );
        assert_eq!(
            from_h(&s, &HessFunction::peterson(4)).unwrap(),
            peterson_space(&s)
        );
    }

    #[test]
    fn hess_function_validation_and_parsing() {
        assert!(HessFunction::new(vec![2, 3, 3]).is_ok());
        assert!(HessFunction::new(vec![2, 1, 3]).is_err());
        assert!(HessFunction::new(vec![1, 1, 3]).is_err());
        assert!(HessFunction::new(vec![2, 4, 3]).is_err());
        assert_eq!(
            "2,3,3".parse::<HessFunction>().unwrap().values(),
            &[2, 3, 3]
        );
        assert!("2,x".parse::<HessFunction>().is_err());
        let json = serde_json::to_string(&HessFunction::peterson(3)).unwrap();
        assert_eq!(json, "[2,3,3]");
        assert!(serde_json::from_str::<HessFunction>("[3,1,3]").is_err());
    }

    #[test]
    fn h_bijection() {
        for n in 1..=5 {
            let s = sys(Family::A, n);
            let all = HessFunction::all(n + 1);
            assert_eq!(all.len(), catalan(n + 1));
            let mut spaces = Vec::new();
            for h in &all {
                let space = from_h(&s, h).unwrap();
                assert!(HessenbergSpace::new(&s, space.roots()).is_ok());
                assert_eq!(&to_h(&s, &space).unwrap(), h);
                spaces.push(space);
            }
            let mut enumerated = enumerate_spaces(&s).unwrap();
            enumerated.sort();
            spaces.sort();
            assert_eq!(spaces, enumerated);
        }
    }

    #[test]
    fn containment_matches_pointwise_order() {
        for n in 1..=4 {
            let s = sys(Family::A, n);
            let all = HessFunction::all(n + 1);
            for a in &all {
                for b in &all {
                    let (ha, hb) = (from_h(&s, a).unwrap(), from_h(&s, b).unwrap());
                    assert_eq!(ha.is_subspace_of(&hb), a.le(b));
                }
            }
        }
    }

    #[test]
    fn type_a_matrix_convention() {
        // E_{31} is below the diagonal: e_3 − e_1 = −(α1 + α2).
        let s = sys(Family::A, 2);
        assert_eq!(s.root(type_a_root(&s, 3, 1)), &Root::new(vec![-1, -1]));
        let h = from_h(&s, &HessFunction::new(vec![3, 3, 3]).unwrap()).unwrap();
        assert!(h.contains(type_a_root(&s, 3, 1)));
    }

    #[test]
    fn peterson_examples() {
        let a2 = sys(Family::A, 2);
        let p = peterson_space(&a2);
        let mut got = p.to_root_list(&a2);
        got.sort();
        let mut want: Vec<Root> = [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|c| Root::new(c.to_vec()))
            .collect();
        want.sort();
        assert_eq!(got, want);
        for (f, n) in [
            (Family::B, 2),
            (Family::C, 4),
            (Family::D, 5),
            (Family::A, 6),
        ] {
            let s = sys(f, n);
            let p = peterson_space(&s);
            assert!(HessenbergSpace::new(&s, p.roots()).is_ok());
            assert_eq!(p.dimension_over_borel(&s), n);
        }
    }

    #[test]
    fn complement_examples() {
        let a2 = sys(Family::A, 2);
        let w0 = weyl::WeylElement::longest(a2.id());
        let c = complement_roots(&a2, &peterson_space(&a2), &w0).unwrap();
        assert_eq!(a2.roots_of(c), vec![Root::new(vec![1, 1])]);
        let e = weyl::WeylElement::identity(a2.id());
        assert!(complement_roots(&a2, &HessenbergSpace::borel(&a2), &e)
            .unwrap()
            .is_empty());
        for w in weyl::enumerate(a2.id()).unwrap() {
            assert!(complement_roots(&a2, &HessenbergSpace::full(&a2), &w)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn ad_nilpotent_ideal_is_upper_closed() {
        let s = sys(Family::B, 3);
        for h in enumerate_spaces(&s).unwrap() {
            let ideal = h.ad_nilpotent_ideal(&s);
            for a in ideal.iter() {
                for g in 0..s.num_positive() {
                    if let Some(t) = s.add(a, g) {
                        assert!(ideal.contains(t));
                    }
                }
            }
        }
    }

    #[test]
    fn from_roots_requires_closure() {
        let b2 = sys(Family::B, 2);
        let ok = HessenbergSpace::from_roots(&b2, &[Root::new(vec![0, -1])]).unwrap();
        assert_eq!(ok.dimension_over_borel(&b2), 1);
        assert!(HessenbergSpace::from_roots(&b2, &[Root::new(vec![-1, -2])]).is_err());
        assert!(HessenbergSpace::from_roots(&b2, &[Root::new(vec![-2, -2])]).is_err());
    }
}
