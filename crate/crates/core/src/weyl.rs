//! Weyl groups of classical type as (signed) permutations.
//!
//! An element is stored by its window `[w_1, ..., w_m]` and acts on
//! `ε`-coordinates by `π(e_i) = sign(w_i) e_{|w_i|}`. Type `A_n` uses
//! plain permutations of `{1..n+1}`; types B and C use all signed
//! permutations of `{1..n}`; type D keeps those with an even number of
//! negative entries.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{Family, RootId, RootSet, RootSystem, RootSystemId};

/// Default upper bound on `|W|` for full enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    system: RootSystemId,
    window: Vec<i32>,
}

impl WeylElement {
    pub fn new(system: RootSystemId, window: Vec<i32>) -> Result<Self> {
        let m = system.eps_len();
        if window.len() != m {
            return Err(Error::InvalidWeylElement(format!(
                "window {window:?} has length {}, expected {m} for {system}",
                window.len()
            )));
        }
        let mut seen = vec![false; m + 1];
        for &w in &window {
            let a = w.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a] {
                return Err(Error::InvalidWeylElement(format!(
                    "{window:?} is not a signed permutation of 1..={m}"
                )));
            }
            seen[a] = true;
        }
        let negatives = window.iter().filter(|&&w| w < 0).count();
        match system.family() {
            Family::A if negatives > 0 => {
                return Err(Error::InvalidWeylElement(format!(
                    "{window:?}: type A elements are unsigned permutations"
                )))
            }
            Family::D if negatives % 2 == 1 => {
                return Err(Error::InvalidWeylElement(format!(
                    "{window:?}: type D elements need an even number of sign changes"
                )))
            }
            _ => {}
        }
        Ok(WeylElement { system, window })
    }

    pub fn identity(system: RootSystemId) -> Self {
        WeylElement {
            system,
            window: (1..=system.eps_len() as i32).collect(),
        }
    }

    /// Longest element `w_0`.
    pub fn longest(system: RootSystemId) -> Self {
        let m = system.eps_len() as i32;
        let window = match system.family() {
            Family::A => (1..=m).rev().collect(),
            Family::B | Family::C => (1..=m).map(|i| -i).collect(),
            Family::D if m % 2 == 0 => (1..=m).map(|i| -i).collect(),
            Family::D => (1..=m).map(|i| if i < m { -i } else { i }).collect(),
        };
        WeylElement { system, window }
    }

    /// Simple reflection `s_i` (1-based).
    pub fn simple_reflection(system: RootSystemId, i: usize) -> Result<Self> {
        let n = system.rank();
        if i == 0 || i > n {
            return Err(Error::RowOutOfRange { row: i, rank: n });
        }
        let mut w: Vec<i32> = (1..=system.eps_len() as i32).collect();
        match system.family() {
            Family::A => w.swap(i - 1, i),
            _ if i < n => w.swap(i - 1, i),
            Family::B | Family::C => w[n - 1] = -w[n - 1],
            Family::D => {
                w.swap(n - 2, n - 1);
                w[n - 2] = -w[n - 2];
                w[n - 1] = -w[n - 1];
            }
        }
        Ok(WeylElement { system, window: w })
    }

    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &w)| w == i as i32 + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.window.len()];
        for (i, &w) in self.window.iter().enumerate() {
            let a = w.unsigned_abs() as usize;
            inv[a - 1] = w.signum() * (i as i32 + 1);
        }
        WeylElement {
            system: self.system,
            window: inv,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Result<Self> {
        if self.system != other.system {
            return Err(Error::SystemMismatch(format!(
                "{} vs {}",
                self.system, other.system
            )));
        }
        let window = other
            .window
            .iter()
            .map(|&w| {
                let a = w.unsigned_abs() as usize;
                w.signum() * self.window[a - 1]
            })
            .collect();
        Ok(WeylElement {
            system: self.system,
            window,
        })
    }

    /// Action on an `ε`-coordinate vector.
    pub fn act_eps(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; v.len()];
        for (i, &w) in self.window.iter().enumerate() {
            out[w.unsigned_abs() as usize - 1] = w.signum() * v[i];
        }
        out
    }

    fn check_system(&self, sys: &RootSystem) -> Result<()> {
        if self.system != sys.id() {
            return Err(Error::SystemMismatch(format!(
                "element of {} applied in {}",
                self.system,
                sys.id()
            )));
        }
        Ok(())
    }

    /// `π(α)` for a root id.
    pub fn act(&self, sys: &RootSystem, alpha: RootId) -> Result<RootId> {
        self.check_system(sys)?;
        Ok(self.act_unchecked(sys, alpha))
    }

    fn act_unchecked(&self, sys: &RootSystem, alpha: RootId) -> RootId {
        sys.lookup_eps(&self.act_eps(sys.eps(alpha)))
            .expect("Weyl group permutes the roots")
    }

    /// The permutation of all root ids induced by `π`.
    pub fn root_permutation(&self, sys: &RootSystem) -> Result<Vec<RootId>> {
        self.check_system(sys)?;
        Ok((0..sys.num_roots())
            .map(|k| self.act_unchecked(sys, k))
            .collect())
    }

    /// `π(S)` for a root set.
    pub fn act_set(&self, sys: &RootSystem, s: RootSet) -> Result<RootSet> {
        self.check_system(sys)?;
        Ok(s.iter().map(|k| self.act_unchecked(sys, k)).collect())
    }

    /// `Φ_π = {α > 0 : π⁻¹α < 0}`.
    pub fn inversion_set(&self, sys: &RootSystem) -> Result<RootSet> {
        self.check_system(sys)?;
        let inv = self.inverse();
        Ok((0..sys.num_positive())
            .filter(|&k| !sys.is_positive(inv.act_unchecked(sys, k)))
            .collect())
    }

    /// `Φ_{π,i} = Φ_π ∩ Φ^i`, indexed by `i - 1`.
    pub fn inversion_rows(&self, sys: &RootSystem) -> Result<Vec<RootSet>> {
        let phi = self.inversion_set(sys)?;
        Ok((1..=sys.rank()).map(|i| phi & sys.row_set(i)).collect())
    }

    /// Coxeter length, read off the window. Positive roots are
    /// `e_a ± e_b` (`a < b`) and `e_a`, so `e_1` is the largest coordinate;
    /// `key` turns a window entry into a signed value in that order.
    pub fn length(&self) -> usize {
        let m = self.window.len() as i32;
        let key = |x: i32| x.signum() * (m + 1 - x.abs());
        let w: Vec<i32> = self.window.iter().map(|&x| key(x)).collect();
        let signed = self.system.family() != Family::A;
        let mut len = 0usize;
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                if w[i] < w[j] {
                    len += 1;
                }
                if signed && w[i] + w[j] < 0 {
                    len += 1;
                }
            }
        }
        match self.system.family() {
            Family::B | Family::C => len + w.iter().filter(|&&x| x < 0).count(),
            _ => len,
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Parses a window written as `2,-1,3`, `2 -1 3` or `[2 -1 3]`.
pub fn parse_window(s: &str) -> Result<Vec<i32>> {
    let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| i32::from_str(t).map_err(|_| Error::Parse(format!("bad window entry {t:?}"))))
        .collect()
}

/// `|W|` for a system.
pub fn group_order(id: RootSystemId) -> u128 {
    let m = id.eps_len() as u128;
    let fact: u128 = (1..=m).product();
    match id.family() {
        Family::A => fact,
        Family::B | Family::C => fact << m,
        Family::D => fact << (m - 1),
    }
}

/// All elements in lexicographic window order, refusing groups larger
/// than [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate(id: RootSystemId) -> Result<Vec<WeylElement>> {
    enumerate_with_cap(id, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_with_cap(id: RootSystemId, cap: u128) -> Result<Vec<WeylElement>> {
    let count = group_order(id);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let m = id.eps_len() as i32;
    let signed = id.family() != Family::A;
    let candidates: Vec<i32> = if signed {
        (-m..=-1).chain(1..=m).collect()
    } else {
        (1..=m).collect()
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut window = Vec::with_capacity(m as usize);
    let mut used = vec![false; m as usize + 1];
    fill(id, &candidates, &mut window, &mut used, 0, &mut out);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn fill(
    id: RootSystemId,
    candidates: &[i32],
    window: &mut Vec<i32>,
    used: &mut [bool],
    negatives: usize,
    out: &mut Vec<WeylElement>,
) {
    let m = id.eps_len();
    if window.len() == m {
        out.push(WeylElement {
            system: id,
            window: window.clone(),
        });
        return;
    }
    let last = window.len() + 1 == m;
    for &c in candidates {
        let a = c.unsigned_abs() as usize;
        if used[a] {
            continue;
        }
        let neg = negatives + usize::from(c < 0);
        if last && id.family() == Family::D && neg % 2 == 1 {
            continue;
        }
        used[a] = true;
        window.push(c);
        fill(id, candidates, window, used, neg, out);
        window.pop();
        used[a] = false;
    }
}

/// Length generating function `Σ_π q^{ℓ(π)}` as a coefficient vector.
pub fn length_generating_function(sys: &RootSystem) -> Result<Vec<u64>> {
    let mut coeffs = vec![0u64; sys.num_positive() + 1];
    for w in enumerate(sys.id())? {
        coeffs[w.inversion_set(sys)?.len()] += 1;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Root;
    use proptest::prelude::*;

    fn id(f: Family, n: usize) -> RootSystemId {
        RootSystemId::new(f, n).unwrap()
    }

    fn small_ids() -> Vec<RootSystemId> {
        let mut v = Vec::new();
        for n in 1..=4 {
            v.push(id(Family::A, n));
        }
        for n in 2..=4 {
            v.push(id(Family::B, n));
            v.push(id(Family::C, n));
        }
        for n in 3..=4 {
            v.push(id(Family::D, n));
        }
        v
    }

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate(id(Family::A, 2)).unwrap().len(), 6);
        assert_eq!(enumerate(id(Family::B, 2)).unwrap().len(), 8);
        assert_eq!(enumerate(id(Family::D, 3)).unwrap().len(), 24);
        assert_eq!(enumerate(id(Family::C, 3)).unwrap().len(), 48);
        assert_eq!(enumerate(id(Family::D, 4)).unwrap().len(), 192);
    }

    #[test]
    fn enumeration_is_lexicographic_and_unique() {
        for sid in small_ids() {
            let all = enumerate(sid).unwrap();
            for pair in all.windows(2) {
                assert!(pair[0].window() < pair[1].window(), "{sid}");
            }
            assert_eq!(
                all[0].window()[0],
                if sid.family() == Family::A {
                    1
                } else {
                    -(sid.eps_len() as i32)
                }
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_with_cap(id(Family::B, 4), 100).unwrap_err();
        assert_eq!(
            err,
            Error::EnumerationCap {
                count: 384,
                cap: 100
            }
        );
        assert!(enumerate(id(Family::A, 10)).is_err());
    }

    #[test]
    fn validation() {
        let a2 = id(Family::A, 2);
        assert!(WeylElement::new(a2, vec![1, 2]).is_err());
        assert!(WeylElement::new(a2, vec![1, 1, 3]).is_err());
        assert!(WeylElement::new(a2, vec![-1, 2, 3]).is_err());
        let d3 = id(Family::D, 3);
        assert!(WeylElement::new(d3, vec![-1, 2, 3]).is_err());
        assert!(WeylElement::new(d3, vec![-1, -2, 3]).is_ok());
    }

    #[test]
    fn a2_reflection_action() {
        let sys = RootSystem::new(id(Family::A, 2));
        let s1 = WeylElement::simple_reflection(sys.id(), 1).unwrap();
        let a1 = sys.simple(1);
        let a2 = sys.simple(2);
        assert_eq!(sys.root(s1.act(&sys, a1).unwrap()), &Root::new(vec![-1, 0]));
        assert_eq!(sys.root(s1.act(&sys, a2).unwrap()), &Root::new(vec![1, 1]));
        let e = WeylElement::identity(sys.id());
        for k in 0..sys.num_roots() {
            assert_eq!(e.act(&sys, k).unwrap(), k);
        }
    }

    // s_i(β) = β − 2(β,α_i)/(α_i,α_i) α_i, computed in ε-coordinates.
    #[test]
    fn simple_reflections_match_reflection_formula() {
        for sid in small_ids() {
            let sys = RootSystem::new(sid);
            for i in 1..=sid.rank() {
                let s = WeylElement::simple_reflection(sid, i).unwrap();
                let a = sys.eps(sys.simple(i)).to_vec();
                let aa: i32 = a.iter().map(|x| x * x).sum();
                for k in 0..sys.num_roots() {
                    let b = sys.eps(k);
                    let ba: i32 = b.iter().zip(&a).map(|(x, y)| x * y).sum();
                    let want: Vec<i32> =
                        b.iter().zip(&a).map(|(x, y)| x - 2 * ba * y / aa).collect();
                    assert_eq!(s.act_eps(b), want, "{sid} s_{i}");
                }
            }
        }
    }

    #[test]
    fn inversion_sets() {
        let sys = RootSystem::new(id(Family::A, 2));
        let e = WeylElement::identity(sys.id());
        assert!(e.inversion_set(&sys).unwrap().is_empty());
        let s1 = WeylElement::simple_reflection(sys.id(), 1).unwrap();
        assert_eq!(
            s1.inversion_set(&sys).unwrap(),
            RootSet::singleton(sys.simple(1))
        );
        let w0 = WeylElement::longest(sys.id());
        assert_eq!(w0.inversion_set(&sys).unwrap(), sys.positive_set());
        let rows = w0.inversion_rows(&sys).unwrap();
        assert_eq!(
            sys.roots_of(rows[0]),
            vec![Root::new(vec![1, 0]), Root::new(vec![1, 1])]
        );
        assert_eq!(sys.roots_of(rows[1]), vec![Root::new(vec![0, 1])]);

        let a3 = RootSystem::new(id(Family::A, 3));
        let s2 = WeylElement::simple_reflection(a3.id(), 2).unwrap();
        let rows = s2.inversion_rows(&a3).unwrap();
        assert!(rows[0].is_empty() && rows[2].is_empty());
        assert_eq!(a3.roots_of(rows[1]), vec![Root::simple(3, 2)]);
    }

    #[test]
    fn longest_element_inverts_everything() {
        for sid in small_ids() {
            let sys = RootSystem::new(sid);
            let w0 = WeylElement::longest(sid);
            assert!(WeylElement::new(sid, w0.window().to_vec()).is_ok());
            assert_eq!(
                w0.inversion_set(&sys).unwrap().len(),
                sys.num_positive(),
                "{sid}"
            );
        }
    }

    #[test]
    fn inversion_set_matches_definition_and_length() {
        for sid in small_ids() {
            let sys = RootSystem::new(sid);
            for w in enumerate(sid).unwrap() {
                let inv = w.inverse();
                let phi = w.inversion_set(&sys).unwrap();
                for k in 0..sys.num_positive() {
                    let image = inv.act(&sys, k).unwrap();
                    assert_eq!(phi.contains(k), sys.root(image).is_negative());
                }
                assert_eq!(phi.len(), w.length(), "{sid} {w}");
                let rows = w.inversion_rows(&sys).unwrap();
                let union = rows.iter().fold(RootSet::EMPTY, |acc, &r| {
                    assert!((acc & r).is_empty());
                    acc | r
                });
                assert_eq!(union, phi);
            }
        }
    }

    fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn q_int(k: usize) -> Vec<u64> {
        vec![1; k]
    }

    #[test]
    fn length_generating_functions_match_products() {
        for n in 1..=5 {
            let sys = RootSystem::new(id(Family::A, n));
            let want = (1..=n + 1).fold(vec![1], |acc, k| poly_mul(&acc, &q_int(k)));
            assert_eq!(length_generating_function(&sys).unwrap(), want, "A{n}");
        }
        for n in 2..=4 {
            let want = (1..=n).fold(vec![1], |acc, k| poly_mul(&acc, &q_int(2 * k)));
            for f in [Family::B, Family::C] {
                let sys = RootSystem::new(id(f, n));
                assert_eq!(length_generating_function(&sys).unwrap(), want);
            }
        }
        for n in 3..=5 {
            let want = (1..n).fold(q_int(n), |acc, k| poly_mul(&acc, &q_int(2 * k)));
            let sys = RootSystem::new(id(Family::D, n));
            assert_eq!(length_generating_function(&sys).unwrap(), want, "D{n}");
        }
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("2,-1,3").unwrap(), vec![2, -1, 3]);
        assert_eq!(parse_window("[2 -1 3]").unwrap(), vec![2, -1, 3]);
        assert!(parse_window("2,x").is_err());
    }

    #[test]
    fn mismatched_system_is_rejected() {
        let a2 = RootSystem::new(id(Family::A, 2));
        let w = WeylElement::identity(id(Family::A, 3));
        assert!(matches!(w.act(&a2, 0), Err(Error::SystemMismatch(_))));
    }

    fn arb_element() -> impl Strategy<Value = WeylElement> {
        let ids = small_ids();
        (0..ids.len()).prop_flat_map(move |k| {
            let sid = ids[k];
            let all = enumerate(sid).unwrap();
            (0..all.len()).prop_map(move |j| all[j].clone())
        })
    }

    proptest! {
        #[test]
        fn action_is_a_bijection_respecting_negation(w in arb_element()) {
            let sys = RootSystem::new(w.system());
            let perm = w.root_permutation(&sys).unwrap();
            let mut sorted = perm.clone();
            sorted.sort();
            prop_assert_eq!(sorted, (0..sys.num_roots()).collect::<Vec<_>>());
            for k in 0..sys.num_roots() {
                prop_assert_eq!(perm[sys.negate(k)], sys.negate(perm[k]));
            }
        }

        #[test]
        fn inverse_and_compose(w in arb_element()) {
            let e = WeylElement::identity(w.system());
            prop_assert_eq!(w.compose(&w.inverse()).unwrap(), e.clone());
            prop_assert_eq!(w.inverse().compose(&w).unwrap(), e);
            prop_assert_eq!(w.inverse().length(), w.length());
        }
    }
}
