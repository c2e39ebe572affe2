//! `hesspave`: affine pavings of Hessenberg varieties from the command line.

mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hesspave_core::SolverConfig;

use args::{parse_space, Format, HessArgs, HessChoice, OperatorArgs, SystemArgs};
use commands::{Output, VerifyOptions};
use error::CliError;

const RANK_NOTE: &str = "Rank convention: --family A --rank n means A_n, the group GL_{n+1}. \
A nilpotent Jordan type must be a partition of n+1 and a Hessenberg function has n+1 entries.";

#[derive(Debug, Parser)]
#[command(
    name = "hesspave",
    version,
    about = "Affine pavings of Hessenberg varieties in classical types"
)]
#[command(after_help = RANK_NOTE)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for per-cell work (default: all cores).
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots, their rows and heights, and the long root of each row.
    #[command(after_help = RANK_NOTE)]
    Roots {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Hessenberg spaces (ad-nilpotent ideals) of a root system.
    #[command(after_help = RANK_NOTE)]
    Spaces {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Cell dimensions and the Poincare polynomial of a Hessenberg variety.
    #[command(after_help = RANK_NOTE)]
    Pave {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        hess: HessArgs,
    },
    /// Compare the root formula with the tableau model and the solver.
    #[command(after_help = RANK_NOTE)]
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        hess: HessChoice,
        /// Seed for the randomized solver.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solver trials per cell.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Skip the solver; compare formula and tableau only.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long, hide = true, value_name = "WINDOW")]
        corrupt_formula: Option<String>,
    },
    /// Fillings of the nonempty cells (type A).
    #[command(after_help = RANK_NOTE)]
    Tableaux {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        hess: HessArgs,
        /// Only this element, e.g. "2,1,3".
        #[arg(long, value_name = "WINDOW")]
        window: Option<String>,
    },
    /// Exact coefficients of u^-1 M u for generic u in U_pi.
    #[command(after_help = RANK_NOTE)]
    Orbit {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        operator: OperatorArgs,
        /// Weyl group element as a signed permutation window, e.g. "2,-1,3".
        #[arg(long, value_name = "WINDOW", allow_hyphen_values = true)]
        window: String,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let format = cli.format;
    match cli.command {
        Command::Roots { system } => commands::roots(&system.system()?, format),
        Command::Spaces { system } => commands::spaces(&system.system()?, format),
        Command::Pave {
            system,
            operator,
            hess,
        } => {
            let sys = system.system()?;
            let space = parse_space(&sys, &hess.hess)?;
            commands::pave(&sys, &operator.spec()?, &space, format)
        }
        Command::Verify {
            system,
            operator,
            hess,
            seed,
            trials,
            no_oracle,
            corrupt_formula,
        } => {
            let sys = system.system()?;
            let spec = operator.spec()?;
            let spaces = hess.spaces(&sys)?;
            let corrupt = corrupt_formula
                .map(|w| hesspave_core::weyl::parse_window(&w))
                .transpose()?;
            let options = VerifyOptions {
                solver: SolverConfig { trials, seed },
                no_oracle,
                corrupt,
            };
            commands::verify(&sys, &spec, &spaces, &options, format)
        }
        Command::Tableaux {
            system,
            operator,
            hess,
            window,
        } => {
            let sys = system.system()?;
            let space = parse_space(&sys, &hess.hess)?;
            commands::tableaux(&sys, &operator.spec()?, &space, window.as_deref(), format)
        }
        Command::Orbit {
            system,
            operator,
            window,
        } => {
            let sys = system.system()?;
            commands::orbit(&sys, &operator.spec()?, &window, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.body.as_bytes());
            let _ = stdout.flush();
            match out.failure {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(error::EXIT_VERIFY)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
