//! Affine pavings of Hessenberg varieties in classical types.

pub mod error;
pub mod hessenberg;
pub mod oracle;
pub mod paving;
pub mod rootsys;
pub mod tableaux;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use hessenberg::{HessFunction, HessenbergSpace};
pub use oracle::solver::{cell_dim_oracle, OracleOutcome, SolverConfig};
pub use paving::operator::{CanonicalForm, OperatorSpec};
pub use paving::{CellReport, Formula, Paver, PavingReport, Poincare};
pub use rootsys::{Family, Root, RootSet, RootSystem, RootSystemId};
pub use tableaux::{Filling, MultiDiagram, Partition};
pub use weyl::WeylElement;
