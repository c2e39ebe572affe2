//! Operator data `M = S + N` and its canonical form.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootId, RootSet, RootSystem};
use crate::tableaux::{MultiDiagram, Partition};

/// One generalized eigenspace of a type-A operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenBlock {
    pub label: String,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "data")]
pub enum OperatorSpec {
    /// `Σ_{α∈Δ} E_α`, any classical type.
    RegularNilpotent,
    /// Type A nilpotent of Jordan type `μ`.
    Nilpotent(Partition),
    /// Type A operator with distinct eigenvalues, one Jordan type each.
    General(Vec<EigenBlock>),
    /// Semisimple `S` with `{α > 0 : α(S) = 0}` spanned by the listed
    /// sets of simple roots (1-based indices).
    Semisimple(Vec<Vec<usize>>),
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::RegularNilpotent => f.write_str("regular-nilpotent"),
            OperatorSpec::Nilpotent(mu) => write!(f, "nilpotent:{mu}"),
            OperatorSpec::General(blocks) => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| format!("{}={}", b.label, b.partition))
                    .collect();
                write!(f, "general:{}", parts.join(";"))
            }
            OperatorSpec::Semisimple(deltas) => {
                let parts: Vec<String> = deltas
                    .iter()
                    .map(|d| {
                        d.iter()
                            .map(|i| i.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                write!(f, "semisimple:{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "regular-nilpotent" {
            return Ok(OperatorSpec::RegularNilpotent);
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown operator {s:?}")))?;
        match kind {
            "nilpotent" => Ok(OperatorSpec::Nilpotent(rest.parse()?)),
            "general" => parse_general(rest),
            "semisimple" => parse_semisimple(rest),
            _ => Err(Error::Parse(format!("unknown operator kind {kind:?}"))),
        }
    }
}

/// `a=2,1;b=1`: label `=` partition, blocks separated by `;`.
pub fn parse_general(s: &str) -> Result<OperatorSpec> {
    let blocks = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (label, mu) = t.split_once('=').ok_or_else(|| {
                Error::Parse(format!("eigenvalue block {t:?} needs label=partition"))
            })?;
            Ok(EigenBlock {
                label: label.trim().to_string(),
                partition: mu.parse()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSpec::General(blocks))
}

/// `1,2;4`: sets of simple-root indices separated by `;`. Empty for
/// regular `S`.
pub fn parse_semisimple(s: &str) -> Result<OperatorSpec> {
    let deltas = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad simple-root index {x:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorSpec::Semisimple(deltas))
}

/// Canonical form of an operator relative to a root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Roots `β` with `N = Σ E_β`, in construction order.
    pub support: Vec<RootId>,
    /// Positive roots of the centralizer `l` of the semisimple part.
    pub levi: RootSet,
    /// Simple roots (1-based) spanning `levi`.
    pub levi_simples: Vec<usize>,
    /// Whether the semisimple part is nonzero.
    pub has_semisimple: bool,
    /// Contiguous index blocks `(start, len)` in type A (one per eigenvalue).
    pub blocks: Option<Vec<(usize, usize)>>,
}

impl CanonicalForm {
    pub fn support_set(&self) -> RootSet {
        self.support.iter().copied().collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        !self.has_semisimple
    }
}

fn require_type_a(sys: &RootSystem, n: usize) -> Result<()> {
    if sys.family() != Family::A {
        return Err(Error::InvalidOperator(format!(
            "Jordan data applies only in type A, not {}",
            sys.id()
        )));
    }
    if n != sys.rank() + 1 {
        return Err(Error::InvalidOperator(format!(
            "Jordan data of total size {n} does not match {} (needs {})",
            sys.id(),
            sys.rank() + 1
        )));
    }
    Ok(())
}

/// `β_i` for `μ'_1 ≤ i < |μ|`, with simple roots shifted by `offset`.
pub fn type_a_betas(mu: &Partition, offset: usize, rank: usize) -> Vec<Root> {
    let dual = mu.dual();
    let d = dual.parts();
    let total = mu.size();
    let mut partial = vec![0usize];
    for &p in d {
        partial.push(partial.last().unwrap() + p);
    }
    let mut out = Vec::new();
    for i in d[0]..total {
        let w = (1..=d.len())
            .find(|&w| partial[w - 1] <= i && i < partial[w])
            .expect("i below the total");
        let m = d[w - 1];
        let mut c = vec![0; rank];
        for j in 0..m {
            c[offset + i - j - 1] = 1;
        }
        out.push(Root::new(c));
    }
    out
}

fn dynkin_connected(sys: &RootSystem, set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut seen = vec![set[0]];
    let mut frontier = vec![set[0]];
    while let Some(i) = frontier.pop() {
        for &j in set {
            if !seen.contains(&j) && sys.add(sys.simple(i), sys.simple(j)).is_some() {
                seen.push(j);
                frontier.push(j);
            }
        }
    }
    seen.len() == set.len()
}

/// Validates `spec` against `sys` and builds its canonical form.
pub fn canonical_form(spec: &OperatorSpec, sys: &RootSystem) -> Result<CanonicalForm> {
    let n = sys.rank();
    match spec {
        OperatorSpec::RegularNilpotent => Ok(CanonicalForm {
            support: (1..=n).map(|i| sys.simple(i)).collect(),
            levi: sys.positive_set(),
            levi_simples: (1..=n).collect(),
            has_semisimple: false,
            blocks: None,
        }),
        OperatorSpec::Nilpotent(mu) => {
            require_type_a(sys, mu.size())?;
            let support = type_a_betas(mu, 0, n)
                .iter()
                .map(|r| sys.id_of(r))
                .collect::<Result<Vec<_>>>()?;
            Ok(CanonicalForm {
                support,
                levi: sys.positive_set(),
                levi_simples: (1..=n).collect(),
                has_semisimple: false,
                blocks: Some(vec![(1, n + 1)]),
            })
        }
        OperatorSpec::General(blocks) => {
            if blocks.is_empty() {
                return Err(Error::InvalidOperator("no eigenvalue blocks".into()));
            }
            let mut labels = HashSet::new();
            for b in blocks {
                if !labels.insert(b.label.as_str()) {
                    return Err(Error::InvalidOperator(format!(
                        "eigenvalue label {:?} repeated",
                        b.label
                    )));
                }
            }
            let total: usize = blocks.iter().map(|b| b.partition.size()).sum();
            require_type_a(sys, total)?;
            let shapes: Vec<Partition> = blocks.iter().map(|b| b.partition.clone()).collect();
            let md = MultiDiagram::new(&shapes)?;
            let layout = md.blocks();
            let mut support = Vec::new();
            let mut levi_simples = Vec::new();
            for ((start, len), d) in layout.iter().zip(md.diagrams()) {
                for r in type_a_betas(d.shape(), start - 1, n) {
                    support.push(sys.id_of(&r)?);
                }
                levi_simples.extend(*start..start + len - 1);
            }
            Ok(CanonicalForm {
                support,
                levi: sys.span_of_simples(&levi_simples),
                levi_simples,
                has_semisimple: blocks.len() > 1,
                blocks: Some(layout),
            })
        }
        OperatorSpec::Semisimple(deltas) => {
            let mut used = HashSet::new();
            for d in deltas {
                for &i in d {
                    if i == 0 || i > n {
                        return Err(Error::InvalidOperator(format!(
                            "simple root index {i} outside 1..={n}"
                        )));
                    }
                    if !used.insert(i) {
                        return Err(Error::InvalidOperator(format!(
                            "simple root {i} appears in two sets"
                        )));
                    }
                }
                if !dynkin_connected(sys, d) {
                    return Err(Error::InvalidOperator(format!(
                        "simple roots {d:?} are not connected in the Dynkin diagram"
                    )));
                }
            }
            let mut levi_simples: Vec<usize> = used.into_iter().collect();
            levi_simples.sort_unstable();
            Ok(CanonicalForm {
                support: Vec::new(),
                levi: sys.span_of_simples(&levi_simples),
                levi_simples,
                has_semisimple: true,
                blocks: None,
            })
        }
    }
}

/// No two roots of the set are comparable.
pub fn is_non_overlapping(sys: &RootSystem, roots: &[RootId]) -> bool {
    roots.iter().all(|&a| {
        roots
            .iter()
            .all(|&b| a == b || !sys.root(a).strictly_dominates(sys.root(b)))
    })
}
