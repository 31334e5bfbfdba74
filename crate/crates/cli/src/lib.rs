//! Command-line front end for `hecke-core`.
//!
//! Reads JSON group specs, runs classification, PBW certification, spherical
//! subalgebra probes, Poisson bracket comparisons and parameter scans, and
//! writes deterministic JSON (or CSV for scans) to stdout.

pub mod commands;
pub mod error;
pub mod format;
pub mod literal;
pub mod spec;

use clap::{Args, Parser, Subcommand};

pub use commands::{Format, Loaded, Outcome};
pub use error::CliError;
pub use spec::{GroupSpec, ParamSpec};

#[derive(Parser, Debug)]
#[command(
    name = "hecke",
    version,
    about = "Graded Hecke algebras of finite matrix groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Group spec (JSON).
    #[arg(long, value_name = "FILE")]
    pub spec: String,
    /// Parameter point: a JSON file or inline JSON such as '{"t": ["1"], "c": {"1": "0"}}'.
    #[arg(long, value_name = "FILE|JSON")]
    pub params: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariant forms, admissible bireflection classes and the space of deformations.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Checks that every overlap resolves (the PBW property).
    PbwCheck {
        #[command(flatten)]
        common: Common,
        /// Check every element of the solved basis as well.
        #[arg(long)]
        all_basis: bool,
    },
    /// Commutator probe of the spherical subalgebra at one parameter point.
    CenterProbe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Poisson brackets of invariants against the Leibniz extension of the t-form.
    Poisson {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Probes every point of a parameter grid.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Comma-separated scalar literals used for every t and c slot, e.g. "0,1,z4".
        #[arg(long, value_name = "VALUES")]
        grid: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn load_params(common: &Common, loaded: &Loaded) -> Result<Option<ParamSpec>, CliError> {
    common
        .params
        .as_deref()
        .map(|p| spec::parse_params_arg(p, loaded.spec.conductor))
        .transpose()
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify { common } => {
            let l = Loaded::from_path(&common.spec)?;
            commands::classify(&l)
        }
        Command::PbwCheck { common, all_basis } => {
            let l = Loaded::from_path(&common.spec)?;
            let p = load_params(common, &l)?;
            commands::pbw_check(&l, p.as_ref(), *all_basis)
        }
        Command::CenterProbe { common, degree } => {
            let l = Loaded::from_path(&common.spec)?;
            let p = load_params(common, &l)?;
            commands::center_probe(&l, p.as_ref(), *degree)
        }
        Command::Poisson { common, degree } => {
            let l = Loaded::from_path(&common.spec)?;
            let p = load_params(common, &l)?;
            commands::poisson(&l, p.as_ref(), *degree)
        }
        Command::Scan {
            common,
            grid,
            degree,
            format,
        } => {
            let l = Loaded::from_path(&common.spec)?;
            let values =
                literal::parse_list(grid).map_err(|e| CliError::Input(format!("--grid: {e}")))?;
            commands::scan(&l, &values, *degree, *format)
        }
    }
}
