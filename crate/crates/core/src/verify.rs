//! Cross-checks of the formula, tableau and solver paths.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hessenberg::{to_h, HessenbergSpace};
use crate::oracle::realization::MatrixRealization;
use crate::oracle::solver::{cell_dim_oracle_with, OracleOutcome, SolverConfig};
use crate::paving::{CellReport, Paver, TableauModel};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub solver: SolverConfig,
    pub tableau: bool,
    pub oracle: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            solver: SolverConfig::default(),
            tableau: true,
            oracle: true,
        }
    }
}

/// Results of every path for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCheck {
    pub pi: Vec<i32>,
    pub formula: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tableau: Option<Option<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOutcome>,
}

impl CellCheck {
    pub fn agrees(&self) -> bool {
        let tableau_ok = self.tableau.is_none_or(|t| t == self.formula);
        let oracle_ok = match &self.oracle {
            None => true,
            Some(OracleOutcome::Empty) => self.formula.is_none(),
            Some(OracleOutcome::Dim(d)) => self.formula == Some(*d),
            Some(OracleOutcome::Inconsistent(_)) => false,
        };
        tableau_ok && oracle_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cells: usize,
    pub tableau_checked: bool,
    pub oracle_checked: bool,
    pub mismatches: Vec<CellCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&CellCheck> {
        self.mismatches.first()
    }
}

/// Compares `cells` (normally the formula output) against the other
/// paths. Mismatches are listed in Weyl group order.
pub fn verify_cells(
    paver: &Paver,
    space: &HessenbergSpace,
    cells: &[CellReport],
    config: VerifyConfig,
) -> Result<VerifyReport> {
    let sys = paver.system();
    let model = if config.tableau {
        TableauModel::for_spec(sys, paver.spec())?
    } else {
        None
    };
    let h = match model {
        Some(_) => Some(to_h(sys, space)?),
        None => None,
    };
    let real = config.oracle.then(|| MatrixRealization::new(sys));
    if config.oracle {
        crate::oracle::check_rank(sys)?;
    }
    let checks: Vec<CellCheck> = cells
        .par_iter()
        .map(|c| -> Result<CellCheck> {
            let pi = WeylElement::new(sys.id(), c.pi.clone())?;
            let tableau = match (&model, &h) {
                (Some(m), Some(h)) => Some(m.cell(&pi, h)?),
                _ => None,
            };
            let oracle = match &real {
                Some(real) => Some(cell_dim_oracle_with(
                    sys,
                    real,
                    paver.canonical(),
                    space,
                    &pi,
                    config.solver,
                )?),
                None => None,
            };
            Ok(CellCheck {
                pi: c.pi.clone(),
                formula: c.dim,
                tableau,
                oracle,
            })
        })
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        cells: checks.len(),
        tableau_checked: model.is_some(),
        oracle_checked: config.oracle,
        mismatches: checks.into_iter().filter(|c| !c.agrees()).collect(),
    })
}

/// Paves `space` and verifies the result.
pub fn verify_space(
    paver: &Paver,
    space: &HessenbergSpace,
    config: VerifyConfig,
) -> Result<VerifyReport> {
    let cells = paver.pave(space)?;
    verify_cells(paver, space, &cells, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::{enumerate_spaces, peterson_space};
    use crate::paving::operator::OperatorSpec;
    use crate::rootsys::{Family, RootSystem};

    #[test]
    fn a2_all_spaces_pass() {
        let s = RootSystem::from_parts(Family::A, 2).unwrap();
        let paver = Paver::new(&s, &"nilpotent:2,1".parse().unwrap()).unwrap();
        for space in enumerate_spaces(&s).unwrap() {
            let r = verify_space(&paver, &space, VerifyConfig::default()).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
            assert!(r.tableau_checked && r.oracle_checked);
        }
    }

    #[test]
    fn corrupted_cell_is_reported() {
        let s = RootSystem::from_parts(Family::A, 2).unwrap();
        let paver = Paver::new(&s, &OperatorSpec::RegularNilpotent).unwrap();
        let space = peterson_space(&s);
        let mut cells = paver.pave(&space).unwrap();
        let k = cells.iter().position(|c| c.dim.is_some()).unwrap();
        *cells[k].dim.as_mut().unwrap() += 1;
        let r = verify_cells(&paver, &space, &cells, VerifyConfig::default()).unwrap();
        assert_eq!(r.first_mismatch().unwrap().pi, cells[k].pi);
        assert_eq!(r.mismatches.len(), 1);
    }
}
