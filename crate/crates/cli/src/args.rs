use clap::{Args, ValueEnum};

use hesspave_core::hessenberg::{enumerate_spaces, from_h, peterson_space};
use hesspave_core::paving::operator::{parse_general, parse_semisimple};
use hesspave_core::{Family, HessFunction, HessenbergSpace, OperatorSpec, Root, RootSystem};

use crate::error::CliError;

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Root system family: A, B, C or D.
    #[arg(long, short = 'f')]
    pub family: Family,

    /// Rank n. Type A rank n is A_n, the group GL_{n+1}: Jordan types and
    /// Hessenberg functions have n+1 entries in total.
    #[arg(long, short = 'r')]
    pub rank: usize,
}

impl SystemArgs {
    pub fn system(&self) -> Result<RootSystem, CliError> {
        Ok(RootSystem::from_parts(self.family, self.rank)?)
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct OperatorArgs {
    /// Type A nilpotent of Jordan type given as a partition of n+1, e.g. 2,1.
    #[arg(long, value_name = "PARTITION")]
    pub nilpotent: Option<String>,

    /// Type A operator with distinct eigenvalues, e.g. "a=2,1;b=1".
    #[arg(long, value_name = "BLOCKS")]
    pub general: Option<String>,

    /// Sum of the simple root vectors (any family).
    #[arg(long)]
    pub regular_nilpotent: bool,

    /// Semisimple operator whose centralizer is spanned by the listed sets
    /// of simple roots, e.g. "1,2;4". Use "regular" for a regular element.
    #[arg(long, value_name = "SETS")]
    pub semisimple: Option<String>,
}

impl OperatorArgs {
    pub fn spec(&self) -> Result<OperatorSpec, CliError> {
        let spec = if let Some(mu) = &self.nilpotent {
            OperatorSpec::Nilpotent(mu.parse()?)
        } else if let Some(blocks) = &self.general {
            parse_general(blocks)?
        } else if let Some(sets) = &self.semisimple {
            match sets.trim() {
                "regular" => OperatorSpec::Semisimple(Vec::new()),
                s => parse_semisimple(s)?,
            }
        } else {
            OperatorSpec::RegularNilpotent
        };
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct HessArgs {
    /// Hessenberg space: h=2,3,3 (type A), peterson, borel, full, or
    /// roots=<JSON list of coefficient vectors> (positive roots implied).
    #[arg(long, value_name = "SPACE")]
    pub hess: String,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct HessChoice {
    /// Hessenberg space, as for `pave`.
    #[arg(long, value_name = "SPACE")]
    pub hess: Option<String>,

    /// Every Hessenberg space of the root system.
    #[arg(long)]
    pub all_hess: bool,
}

impl HessChoice {
    pub fn spaces(&self, sys: &RootSystem) -> Result<Vec<HessenbergSpace>, CliError> {
        match &self.hess {
            Some(s) => Ok(vec![parse_space(sys, s)?]),
            None => Ok(enumerate_spaces(sys)?),
        }
    }
}

pub fn parse_space(sys: &RootSystem, s: &str) -> Result<HessenbergSpace, CliError> {
    let s = s.trim();
    match s {
        "peterson" => return Ok(peterson_space(sys)),
        "borel" => return Ok(HessenbergSpace::borel(sys)),
        "full" => return Ok(HessenbergSpace::full(sys)),
        _ => {}
    }
    if let Some(h) = s.strip_prefix("h=") {
        if sys.family() != Family::A {
            return Err(CliError::Config(format!(
                "Hessenberg functions exist only in type A; use roots=... for {}",
                sys.id()
            )));
        }
        let h: HessFunction = h.parse()?;
        return Ok(from_h(sys, &h)?);
    }
    if let Some(json) = s.strip_prefix("roots=") {
        let roots: Vec<Root> = serde_json::from_str(json)
            .map_err(|e| CliError::Config(format!("bad root list: {e}")))?;
        return Ok(HessenbergSpace::from_roots(sys, &roots)?);
    }
    Err(CliError::Config(format!(
        "unknown Hessenberg space {s:?}; expected h=..., peterson, borel, full or roots=[...]"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}
