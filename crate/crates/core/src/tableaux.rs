//! Young-diagram model of type-A cells.
//!
//! A nilpotent of Jordan type `μ` is drawn with one column per Jordan block,
//! columns left-aligned by decreasing height and bottom-aligned. Boxes are
//! numbered from the bottom row, right to left, then row by row upwards
//! (each row again starting from its rightmost box). The cell of `π` is
//! described by the filling that puts `π⁻¹(i)` into box `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hessenberg::HessFunction;
use crate::weyl::WeylElement;

/// A partition with positive, weakly decreasing parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive block sizes into a partition.
    pub fn from_blocks(mut blocks: Vec<usize>) -> Result<Self> {
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(blocks)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// Transposed partition `μ'`.
    pub fn dual(&self) -> Partition {
        let max = self.0[0];
        Partition(
            (1..=max)
                .map(|r| self.0.iter().filter(|&&p| p >= r).count())
                .collect(),
        )
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions_rec(n, n, &mut cur, &mut out);
        out
    }
}

fn partitions_rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        partitions_rec(rest - p, p, cur, out);
        cur.pop();
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// An indexed Young diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    shape: Partition,
    /// `columns[c][r]` is the index of the box in column `c`, row `r`
    /// (row 0 at the bottom).
    columns: Vec<Vec<usize>>,
    /// `above[i - 1]` is the box directly above box `i`.
    above: Vec<Option<usize>>,
}

/// Index the boxes of the diagram with column heights `μ`.
pub fn index_boxes(mu: &Partition) -> Diagram {
    let parts = mu.parts();
    let mut columns: Vec<Vec<usize>> = parts.iter().map(|&p| vec![0; p]).collect();
    let mut next = 1;
    for r in 0..parts[0] {
        for c in (0..parts.len()).rev() {
            if parts[c] > r {
                columns[c][r] = next;
                next += 1;
            }
        }
    }
    let mut above = vec![None; mu.size()];
    for col in &columns {
        for pair in col.windows(2) {
            above[pair[0] - 1] = Some(pair[1]);
        }
    }
    Diagram {
        shape: mu.clone(),
        columns,
        above,
    }
}

impl Diagram {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.above.len()
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn above(&self, i: usize) -> Option<usize> {
        self.above[i - 1]
    }

    /// `(j, k)` with box `k` directly above box `j`.
    pub fn vertical_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .above
            .iter()
            .enumerate()
            .filter_map(|(j, k)| k.map(|k| (j + 1, k)))
            .collect();
        pairs.sort_by_key(|&(j, k)| (std::cmp::Reverse(self.column_of(j)), j, k));
        pairs
    }

    fn column_of(&self, i: usize) -> usize {
        self.columns
            .iter()
            .position(|c| c.contains(&i))
            .expect("box exists")
    }

    /// ASCII rendering, top row first; `label` maps a box index to text.
    pub fn render_with(&self, label: impl Fn(usize) -> String) -> String {
        let width = (1..=self.size()).map(|i| label(i).len()).max().unwrap_or(1);
        let mut lines = Vec::new();
        for r in (0..self.shape.parts()[0]).rev() {
            let cells: Vec<String> = self
                .columns
                .iter()
                .filter(|c| c.len() > r)
                .map(|c| format!("{:>width$}", label(c[r])))
                .collect();
            lines.push(cells.join(" "));
        }
        lines.join("\n")
    }
}

/// Box values of the cell of `π`: box `i` holds `π⁻¹(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Filling(Vec<usize>);

impl Filling {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidWeylElement(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Filling(values))
    }

    pub fn from_permutation(pi: &WeylElement) -> Self {
        Filling(pi.inverse().window().iter().map(|&v| v as usize).collect())
    }

    /// Value in box `i` (1-based).
    pub fn value(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_sizes(n_boxes: usize, f: &Filling, h: &HessFunction) -> Result<()> {
    if f.len() != n_boxes || h.len() != n_boxes {
        return Err(Error::SizeMismatch(format!(
            "{n_boxes} boxes, filling of size {}, Hessenberg function of size {}",
            f.len(),
            h.len()
        )));
    }
    Ok(())
}

/// Nonempty iff `value(j) ≤ h(value(k))` whenever box `k` sits on box `j`.
pub fn is_nonempty(d: &Diagram, f: &Filling, h: &HessFunction) -> Result<bool> {
    check_sizes(d.size(), f, h)?;
    Ok(vertical_ok(d, 0, f, h))
}

fn vertical_ok(d: &Diagram, offset: usize, f: &Filling, h: &HessFunction) -> bool {
    (1..=d.size()).all(|j| match d.above(j) {
        Some(k) => f.value(j + offset) <= h.at(f.value(k + offset)),
        None => true,
    })
}

// Pairs i < j inside one diagram: value(i) > value(j), and if some box k
// sits on j also value(i) ≤ h(value(k)).
fn within_count(d: &Diagram, offset: usize, f: &Filling, h: &HessFunction) -> usize {
    let mut count = 0;
    for j in 1..=d.size() {
        let vj = f.value(j + offset);
        let bound = d.above(j).map(|k| h.at(f.value(k + offset)));
        for i in 1..j {
            let vi = f.value(i + offset);
            if vi > vj && bound.is_none_or(|b| vi <= b) {
                count += 1;
            }
        }
    }
    count
}

/// Cell dimension from the configuration count.
pub fn dimension(d: &Diagram, f: &Filling, h: &HessFunction) -> Result<usize> {
    if !is_nonempty(d, f, h)? {
        return Err(Error::EmptyCell);
    }
    Ok(within_count(d, 0, f, h))
}

/// One diagram per generalized eigenspace, largest first, occupying the
/// lowest indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiDiagram {
    diagrams: Vec<Diagram>,
    offsets: Vec<usize>,
    /// Position of each diagram in the caller's input list.
    input_order: Vec<usize>,
}

impl MultiDiagram {
    /// Diagrams are sorted by box count, descending; equal sizes keep
    /// their input order.
    pub fn new(shapes: &[Partition]) -> Result<Self> {
        if shapes.is_empty() {
            return Err(Error::InvalidPartition("no eigenvalue blocks".into()));
        }
        let mut order: Vec<usize> = (0..shapes.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(shapes[k].size()));
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut diagrams = Vec::with_capacity(shapes.len());
        let mut offset = 0;
        for &k in &order {
            offsets.push(offset);
            offset += shapes[k].size();
            diagrams.push(index_boxes(&shapes[k]));
        }
        Ok(MultiDiagram {
            diagrams,
            offsets,
            input_order: order,
        })
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    /// Global index of box 1 of diagram `k`, minus one.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn input_order(&self) -> &[usize] {
        &self.input_order
    }

    pub fn size(&self) -> usize {
        self.diagrams.iter().map(Diagram::size).sum()
    }

    /// Diagram holding global box `i`.
    pub fn diagram_of(&self, i: usize) -> usize {
        self.offsets
            .iter()
            .rposition(|&o| o < i)
            .expect("box exists")
    }

    /// Contiguous `(start, len)` index blocks, in global order.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.offsets
            .iter()
            .zip(&self.diagrams)
            .map(|(&o, d)| (o + 1, d.size()))
            .collect()
    }

    /// Side-by-side rendering; diagram 0 (lowest indices) on the right.
    pub fn render_with(&self, label: impl Fn(usize) -> String) -> String {
        let rendered: Vec<Vec<String>> = self
            .diagrams
            .iter()
            .zip(&self.offsets)
            .rev()
            .map(|(d, &o)| {
                d.render_with(|i| label(i + o))
                    .lines()
                    .map(String::from)
                    .collect()
            })
            .collect();
        let height = rendered.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = rendered
            .iter()
            .map(|r| r.iter().map(|l| l.chars().count()).max().unwrap_or(0))
            .collect();
        let mut lines = Vec::new();
        for row in 0..height {
            let parts: Vec<String> = rendered
                .iter()
                .zip(&widths)
                .map(|(r, &w)| {
                    let pad = height - r.len();
                    let text = if row >= pad {
                        r[row - pad].as_str()
                    } else {
                        ""
                    };
                    format!("{text:<w$}")
                })
                .collect();
            lines.push(parts.join(" | ").trim_end().to_string());
        }
        lines.join("\n")
    }
}

pub fn multidiagram_nonempty(md: &MultiDiagram, f: &Filling, h: &HessFunction) -> Result<bool> {
    check_sizes(md.size(), f, h)?;
    Ok(md
        .diagrams
        .iter()
        .zip(&md.offsets)
        .all(|(d, &o)| vertical_ok(d, o, f, h)))
}

/// Within-diagram counts plus cross-diagram pairs `i < j` (global index)
/// with `value(j) < value(i) ≤ h(value(j))`.
pub fn multidiagram_dimension(md: &MultiDiagram, f: &Filling, h: &HessFunction) -> Result<usize> {
    if !multidiagram_nonempty(md, f, h)? {
        return Err(Error::EmptyCell);
    }
    let mut dim: usize = md
        .diagrams
        .iter()
        .zip(&md.offsets)
        .map(|(d, &o)| within_count(d, o, f, h))
        .sum();
    let n = md.size();
    let owner: Vec<usize> = (1..=n).map(|i| md.diagram_of(i)).collect();
    for j in 1..=n {
        let vj = f.value(j);
        for i in 1..j {
            let vi = f.value(i);
            if owner[i - 1] != owner[j - 1] && vj < vi && vi <= h.at(vj) {
                dim += 1;
            }
        }
    }
    Ok(dim)
}

/// Cells of the Peterson variety in `GL_n`: compositions of `n` with
/// dimension `n − (number of parts)`.
pub fn peterson_cells(n: usize) -> Vec<(Vec<usize>, usize)> {
    if n == 0 {
        return Vec::new();
    }
    // Compositions of n ↔ subsets of the n−1 gaps.
    (0u64..1 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for gap in 0..n - 1 {
                if mask >> gap & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            let dim = n - parts.len();
            (parts, dim)
        })
        .collect()
}

/// JSON-friendly view of a filled diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilledBox {
    pub index: usize,
    pub diagram: usize,
    pub column: usize,
    pub row: usize,
    pub value: usize,
}

pub fn filled_boxes(md: &MultiDiagram, f: &Filling) -> Vec<FilledBox> {
    let mut out = Vec::new();
    for (k, (d, &o)) in md.diagrams.iter().zip(&md.offsets).enumerate() {
        for (c, col) in d.columns.iter().enumerate() {
            for (r, &i) in col.iter().enumerate() {
                out.push(FilledBox {
                    index: i + o,
                    diagram: k,
                    column: c,
                    row: r,
                    value: f.value(i + o),
                });
            }
        }
    }
    out.sort_by_key(|b| b.index);
    out
}
