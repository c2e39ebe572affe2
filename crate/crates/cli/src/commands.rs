use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use hesspave_core::hessenberg::{enumerate_spaces, to_h};
use hesspave_core::oracle::realization::MatrixRealization;
use hesspave_core::oracle::symbolic::{generic_conjugate, variable_name};
use hesspave_core::paving::TableauModel;
use hesspave_core::rootsys::{row_partition, row_structure_kind, verticality_check, RowKind};
use hesspave_core::tableaux::index_boxes;
use hesspave_core::verify::{verify_cells, CellCheck, VerifyConfig, VerifyReport};
use hesspave_core::weyl::parse_window;
use hesspave_core::{
    CellReport, Family, Filling, HessFunction, HessenbergSpace, OperatorSpec, OracleOutcome,
    Partition, Paver, PavingReport, Root, RootSystem, SolverConfig, WeylElement,
};

use crate::args::Format;
use crate::error::CliError;

/// What a command prints, and whether it counts as a failed verification.
pub struct Output {
    pub body: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failure: None,
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn join_roots(roots: &[Root]) -> String {
    roots
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dim_text(d: Option<usize>) -> String {
    d.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn describe_space(sys: &RootSystem, space: &HessenbergSpace) -> String {
    match to_h(sys, space) {
        Ok(h) => format!("h = {h}"),
        Err(_) => format!(
            "M_H = Phi+ + {{{}}}",
            join_roots(&sys.roots_of(space.negative_part(sys)))
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: Root,
    pub height: i32,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowEntry {
    pub row: usize,
    pub kind: String,
    /// Roots of the row grouped by height, lowest first.
    pub heights: Vec<Vec<Root>>,
    pub long_root: Option<Root>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsOutput {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub positive_roots: Vec<RootEntry>,
    pub rows: Vec<RowEntry>,
    pub vertical: bool,
}

pub fn roots(sys: &RootSystem, format: Format) -> Result<Output, CliError> {
    let partition = row_partition(sys);
    let positive_roots = sys
        .positive()
        .iter()
        .enumerate()
        .map(|(id, r)| RootEntry {
            root: r.clone(),
            height: sys.height(id),
            row: sys.row(id),
        })
        .collect();
    let rows = (1..=sys.rank())
        .map(|i| -> Result<RowEntry, CliError> {
            let kind = match row_structure_kind(sys, i)? {
                RowKind::Abelian => "abelian",
                RowKind::Heisenberg => "heisenberg",
            };
            Ok(RowEntry {
                row: i,
                kind: kind.to_string(),
                heights: partition.heights[i - 1].clone(),
                long_root: partition.long_roots[i - 1].clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = RootsOutput {
        family: sys.family(),
        rank: sys.rank(),
        positive_roots,
        rows,
        vertical: verticality_check(&partition),
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["root", "height", "row", "long"],
            out.positive_roots
                .iter()
                .map(|e| {
                    let long = out.rows[e.row - 1].long_root.as_ref() == Some(&e.root);
                    vec![
                        e.root.to_string(),
                        e.height.to_string(),
                        e.row.to_string(),
                        long.to_string(),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{}: {} positive roots in {} rows, vertical: {}",
                sys.id(),
                out.positive_roots.len(),
                out.rows.len(),
                yes_no(out.vertical)
            );
            for row in &out.rows {
                let long = row
                    .long_root
                    .as_ref()
                    .map(|r| format!(", long root {r}"))
                    .unwrap_or_default();
                let _ = writeln!(s, "row {} ({}{long})", row.row, row.kind);
                for (k, roots) in row.heights.iter().enumerate() {
                    let _ = writeln!(s, "  height {}: {}", k + 1, join_roots(roots));
                }
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HessFunction>,
    /// Negative roots of `M_H`.
    pub negative: Vec<Root>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpacesOutput {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub count: usize,
    pub spaces: Vec<SpaceEntry>,
}

pub fn spaces(sys: &RootSystem, format: Format) -> Result<Output, CliError> {
    let spaces = enumerate_spaces(sys)?
        .iter()
        .map(|space| SpaceEntry {
            h: to_h(sys, space).ok(),
            negative: sys.roots_of(space.negative_part(sys)),
        })
        .collect::<Vec<_>>();
    let out = SpacesOutput {
        family: sys.family(),
        rank: sys.rank(),
        count: spaces.len(),
        spaces,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["index", "h", "negative"],
            out.spaces
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let negative: Vec<String> = e.negative.iter().map(|r| r.to_string()).collect();
                    vec![
                        i.to_string(),
                        e.h.as_ref().map(|h| h.to_string()).unwrap_or_default(),
                        negative.join(" "),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}: {} Hessenberg spaces", sys.id(), out.count);
            for (i, e) in out.spaces.iter().enumerate() {
                let label =
                    e.h.as_ref()
                        .map(|h| format!("h = {h}  "))
                        .unwrap_or_default();
                let _ = writeln!(s, "{i:>4}  {label}{{{}}}", join_roots(&e.negative));
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn cell_rows(cells: &[CellReport]) -> Vec<Vec<String>> {
    cells
        .iter()
        .map(|c| {
            vec![
                WeylWindow(&c.pi).to_string(),
                c.length.to_string(),
                c.nonempty.to_string(),
                c.dim.map(|d| d.to_string()).unwrap_or_default(),
            ]
        })
        .collect()
}

struct WeylWindow<'a>(&'a [i32]);

impl std::fmt::Display for WeylWindow<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn pave(
    sys: &RootSystem,
    spec: &OperatorSpec,
    space: &HessenbergSpace,
    format: Format,
) -> Result<Output, CliError> {
    let paver = Paver::new(sys, spec)?;
    let report = paver.report(space)?;
    let body = match format {
        Format::Json => json(&report)?,
        Format::Csv => csv_table(
            &["window", "length", "nonempty", "dim"],
            cell_rows(&report.cells),
        )?,
        Format::Text => render_report(sys, space, &report),
    };
    Ok(Output::ok(body))
}

fn render_report(sys: &RootSystem, space: &HessenbergSpace, report: &PavingReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} {}, {} ({})",
        sys.id(),
        report.operator,
        describe_space(sys, space),
        report.formula
    );
    let width = report
        .cells
        .iter()
        .map(|c| WeylWindow(&c.pi).to_string().len())
        .max()
        .unwrap_or(6)
        .max(6);
    let _ = writeln!(s, "{:<width$}  length  nonempty  dim", "window");
    for c in &report.cells {
        let _ = writeln!(
            s,
            "{:<width$}  {:<6}  {:<8}  {}",
            WeylWindow(&c.pi).to_string(),
            c.length,
            yes_no(c.nonempty),
            dim_text(c.dim)
        );
    }
    let _ = writeln!(
        s,
        "cells: {}",
        report.cells.iter().filter(|c| c.nonempty).count()
    );
    let _ = writeln!(s, "Poincare polynomial: {}", report.poincare);
    let betti: Vec<String> = report
        .poincare
        .betti()
        .iter()
        .map(|b| b.to_string())
        .collect();
    let _ = writeln!(s, "Betti numbers: {}", betti.join(" "));
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceVerification {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<HessFunction>,
    #[serde(rename = "M_H", default, skip_serializing_if = "Option::is_none")]
    pub m_h: Option<Vec<Root>>,
    #[serde(flatten)]
    pub report: VerifyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub operator: String,
    pub seed: u64,
    pub trials: usize,
    pub spaces: Vec<SpaceVerification>,
    pub passed: bool,
}

pub struct VerifyOptions {
    pub solver: SolverConfig,
    pub no_oracle: bool,
    /// Test fixture: add one to the formula dimension of this cell.
    pub corrupt: Option<Vec<i32>>,
}

pub fn verify(
    sys: &RootSystem,
    spec: &OperatorSpec,
    spaces: &[HessenbergSpace],
    options: &VerifyOptions,
    format: Format,
) -> Result<Output, CliError> {
    let paver = Paver::new(sys, spec)?;
    let config = VerifyConfig {
        solver: options.solver,
        tableau: true,
        oracle: !options.no_oracle,
    };
    if let Some(w) = &options.corrupt {
        WeylElement::new(sys.id(), w.clone())?;
    }
    let mut results = Vec::with_capacity(spaces.len());
    for space in spaces {
        let mut cells = paver.pave(space)?;
        if let Some(w) = &options.corrupt {
            for c in cells.iter_mut().filter(|c| &c.pi == w) {
                c.dim = Some(c.dim.map_or(0, |d| d + 1));
                c.nonempty = true;
            }
        }
        let report = verify_cells(&paver, space, &cells, config)?;
        let (h, m_h) = match to_h(sys, space) {
            Ok(h) => (Some(h), None),
            Err(_) => (None, Some(space.to_root_list(sys))),
        };
        results.push((space, SpaceVerification { h, m_h, report }));
    }
    let passed = results.iter().all(|(_, r)| r.report.passed());
    let failure = results.iter().find_map(|(space, r)| {
        r.report.first_mismatch().map(|c| {
            format!(
                "verification failed for {}: first disagreement at pi = {} ({})",
                describe_space(sys, space),
                WeylWindow(&c.pi),
                describe_check(c)
            )
        })
    });

    let body = match format {
        Format::Json => json(&VerifyOutput {
            family: sys.family(),
            rank: sys.rank(),
            operator: spec.to_string(),
            seed: options.solver.seed,
            trials: options.solver.trials,
            spaces: results.into_iter().map(|(_, r)| r).collect(),
            passed,
        })?,
        Format::Csv => csv_table(
            &[
                "space",
                "cells",
                "tableau",
                "oracle",
                "mismatches",
                "first_mismatch",
            ],
            results
                .iter()
                .map(|(space, r)| {
                    vec![
                        describe_space(sys, space),
                        r.report.cells.to_string(),
                        r.report.tableau_checked.to_string(),
                        r.report.oracle_checked.to_string(),
                        r.report.mismatches.len().to_string(),
                        r.report
                            .first_mismatch()
                            .map(|c| WeylWindow(&c.pi).to_string())
                            .unwrap_or_default(),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let mut paths = vec!["formula"];
            if results
                .first()
                .is_some_and(|(_, r)| r.report.tableau_checked)
            {
                paths.push("tableau");
            }
            if config.oracle {
                paths.push("oracle");
            }
            let _ = writeln!(
                s,
                "{} {}: {} space(s), paths {}, {} trial(s), seed {}",
                sys.id(),
                spec,
                results.len(),
                paths.join("/"),
                options.solver.trials,
                options.solver.seed
            );
            for (space, r) in &results {
                let status = if r.report.passed() {
                    "ok".to_string()
                } else {
                    format!("{} mismatch(es)", r.report.mismatches.len())
                };
                let _ = writeln!(
                    s,
                    "{}: {} cells, {status}",
                    describe_space(sys, space),
                    r.report.cells
                );
                for c in &r.report.mismatches {
                    let _ = writeln!(s, "  pi = {}: {}", WeylWindow(&c.pi), describe_check(c));
                }
            }
            let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok(Output { body, failure })
}

fn describe_check(c: &CellCheck) -> String {
    let mut parts = vec![format!("formula {}", dim_text(c.formula))];
    if let Some(t) = c.tableau {
        parts.push(format!("tableau {}", dim_text(t)));
    }
    if let Some(o) = &c.oracle {
        let text = match o {
            OracleOutcome::Empty => "-".to_string(),
            OracleOutcome::Dim(d) => d.to_string(),
            OracleOutcome::Inconsistent(trials) => {
                let t: Vec<String> = trials.iter().map(|d| dim_text(*d)).collect();
                format!("inconsistent [{}]", t.join(" "))
            }
        };
        parts.push(format!("oracle {text}"));
    }
    parts.join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauCell {
    pub pi: Vec<i32>,
    pub dim: usize,
    /// `filling[i - 1]` is the value in box `i`.
    pub filling: Filling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauxOutput {
    pub rank: usize,
    pub operator: String,
    pub h: HessFunction,
    /// Column heights of each diagram, lowest box indices first.
    pub shapes: Vec<Partition>,
    pub cells: Vec<TableauCell>,
}

pub fn tableaux(
    sys: &RootSystem,
    spec: &OperatorSpec,
    space: &HessenbergSpace,
    window: Option<&str>,
    format: Format,
) -> Result<Output, CliError> {
    if sys.family() != Family::A {
        return Err(CliError::Config(format!(
            "tableaux exist only in type A, not {}",
            sys.id()
        )));
    }
    let model = TableauModel::for_spec(sys, spec)?.ok_or_else(|| {
        CliError::Config(format!(
            "no tableau model for {spec}: eigenspace sizes must be nonincreasing"
        ))
    })?;
    let h = to_h(sys, space)?;
    let elements = match window {
        Some(w) => vec![WeylElement::new(sys.id(), parse_window(w)?)?],
        None => hesspave_core::weyl::enumerate(sys.id())?,
    };
    let mut cells = Vec::new();
    for pi in &elements {
        if let Some(dim) = model.cell(pi, &h)? {
            cells.push(TableauCell {
                pi: pi.window().to_vec(),
                dim,
                filling: Filling::from_permutation(pi),
            });
        }
    }
    let shapes = match &model {
        TableauModel::Single(mu) => vec![mu.clone()],
        TableauModel::Multi(md) => md.diagrams().iter().map(|d| d.shape().clone()).collect(),
    };
    let out = TableauxOutput {
        rank: sys.rank(),
        operator: spec.to_string(),
        h,
        shapes,
        cells,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["window", "dim", "filling"],
            out.cells
                .iter()
                .map(|c| {
                    let f: Vec<String> = c.filling.values().iter().map(|v| v.to_string()).collect();
                    vec![
                        WeylWindow(&c.pi).to_string(),
                        c.dim.to_string(),
                        f.join(" "),
                    ]
                })
                .collect(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} {}, h = {}: {} nonempty cell(s)",
                sys.id(),
                out.operator,
                out.h,
                out.cells.len()
            );
            for c in &out.cells {
                let label = |i: usize| c.filling.value(i).to_string();
                let grid = match &model {
                    TableauModel::Single(mu) => index_boxes(mu).render_with(label),
                    TableauModel::Multi(md) => md.render_with(label),
                };
                let _ = writeln!(s, "\npi = {}, dim {}", WeylWindow(&c.pi), c.dim);
                let _ = writeln!(s, "{grid}");
            }
            s
        }
    };
    Ok(Output::ok(body))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub root: Root,
    pub polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOutput {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub operator: String,
    pub pi: Vec<i32>,
    pub variables: Vec<String>,
    pub orbit_roots: Vec<Root>,
    pub coefficients: Vec<Coefficient>,
}

pub fn orbit(
    sys: &RootSystem,
    spec: &OperatorSpec,
    window: &str,
    format: Format,
) -> Result<Output, CliError> {
    let paver = Paver::new(sys, spec)?;
    let canon = paver.canonical();
    let pi = WeylElement::new(sys.id(), parse_window(window)?)?;
    let allowed = if canon.has_semisimple {
        canon.levi
    } else {
        sys.positive_set()
    };
    let real = MatrixRealization::new(sys);
    let conj = generic_conjugate(sys, &real, &canon.support, &pi, allowed)?;
    let names = |v: u32| variable_name(sys, conj.variables()[v as usize]);
    let orbit = conj.support(sys, &real);
    let coefficients: Vec<Coefficient> = orbit
        .iter()
        .map(|a| Coefficient {
            root: sys.root(a).clone(),
            polynomial: conj.coefficient(&real, a).display_with(&names).to_string(),
        })
        .collect();
    let out = OrbitOutput {
        family: sys.family(),
        rank: sys.rank(),
        operator: spec.to_string(),
        pi: pi.window().to_vec(),
        variables: conj
            .variables()
            .iter()
            .map(|&a| variable_name(sys, a))
            .collect(),
        orbit_roots: sys.roots_of(orbit),
        coefficients,
    };
    let body = match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_table(
            &["root", "polynomial"],
            out.coefficients
                .iter()
                .map(|c| vec![c.root.to_string(), c.polynomial.clone()])
                .collect(),
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} {}, pi = {}", sys.id(), out.operator, pi);
            let _ = writeln!(s, "variables: {}", out.variables.join(" "));
            let _ = writeln!(s, "orbit roots: {}", join_roots(&out.orbit_roots));
            for c in &out.coefficients {
                let _ = writeln!(s, "  {}: {}", c.root, c.polynomial);
            }
            s
        }
    };
    Ok(Output::ok(body))
}
