//! Command-line front end: family sweeps with CSV/JSON export, crossing
//! location, pairwise state discrimination, and single-state measurement.
//!
//! Exit codes: 0 on success, 2 for validation errors (bad parameters, bad
//! state files, guard violations), 3 for numerical failures (no sign change
//! on a crossing bracket, cross-check disagreement), 1 for I/O failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qpol::discrimination::DiscriminationError;
use qpol::entanglement::{wootters_concurrence, EntanglementError};
use qpol::polarization::degree_chernoff;
use qpol::states::StateSpec;
use qpol::sweep::{self, DiscriminationReport, Family, SweepError};
use qpol::{DensityOperator, FockBasis};

mod output;

#[derive(Parser)]
#[command(
    name = "qpol",
    version,
    about = "Quantum polarization and discrimination toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Werner state, a ∈ [0, 1]
    Werner,
    /// x-parametrized Bell-diagonal state, x ∈ [-1, 1]
    XFamily,
}

impl From<FamilyArg> for Family {
    fn from(value: FamilyArg) -> Family {
        match value {
            FamilyArg::Werner => Family::Werner,
            FamilyArg::XFamily => Family::XFamily,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a family, one record (param, C, P_C, s*, q*) per grid point
    Sweep {
        family: FamilyArg,
        /// Number of uniform grid points
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Recompute every degree through the general max-min path and fail
        /// loudly on disagreement with the closed form
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate a parameter where concurrence equals the degree of polarization
    Crossing {
        family: FamilyArg,
        /// Lower bracket edge
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        /// Upper bracket edge
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
    },
    /// Discriminate two states given as JSON state files
    Discriminate {
        /// First state file
        #[arg(long = "a")]
        a: PathBuf,
        /// Second state file
        #[arg(long = "b")]
        b: PathBuf,
        /// Report P_min for 1..=K copies
        #[arg(long, default_value_t = 3)]
        copies: u32,
        /// Fock-space truncation (grown automatically if a state needs more)
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Concurrence, degree of polarization, and purity of one state
    Measure {
        /// State file
        #[arg(long)]
        state: PathBuf,
        /// Fock-space truncation (grown automatically if the state needs more)
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::TooFewPoints(_) | SweepError::State(_) => {
                CliError::Validation(e.to_string())
            }
            SweepError::CrossCheckFailed { .. } | SweepError::NoCrossing(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

impl From<DiscriminationError> for CliError {
    fn from(e: DiscriminationError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sweep {
            family,
            points,
            cross_check,
            format,
            out,
        } => {
            let records = sweep::sweep(family.into(), points, cross_check)?;
            let body = match format {
                Format::Csv => output::records_to_csv(&records),
                Format::Json => output::records_to_json(&records),
            };
            match out {
                Some(path) => fs::write(&path, body)
                    .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            Ok(())
        }
        Command::Crossing { family, lo, hi } => {
            let family = family.into();
            let crossing = sweep::find_crossing(family, lo, hi)?;
            print!("{}", output::crossing_report(family, &crossing));
            Ok(())
        }
        Command::Discriminate {
            a,
            b,
            copies,
            n_max,
        } => {
            let spec_a = read_spec(&a)?;
            let spec_b = read_spec(&b)?;
            let n_max = n_max.max(spec_a.min_n_max()).max(spec_b.min_n_max());
            let basis = FockBasis::new(n_max);
            let rho = build(&spec_a, basis, &a)?;
            let zeta = build(&spec_b, basis, &b)?;
            let report: DiscriminationReport = sweep::discrimination_report(&rho, &zeta, copies)?;
            print!("{}", output::discrimination_text(&report));
            Ok(())
        }
        Command::Measure { state, n_max } => {
            let spec = read_spec(&state)?;
            let n_max = n_max.max(spec.min_n_max());
            let rho = build(&spec, FockBasis::new(n_max), &state)?;
            let concurrence = match wootters_concurrence(&rho) {
                Ok(c) => output::sig12(c),
                Err(
                    EntanglementError::SupportOutsideSectorThree { .. }
                    | EntanglementError::BasisTooSmall(_),
                ) => "n/a (support outside the three-photon sector)".to_string(),
            };
            let degree = degree_chernoff(&rho).degree;
            println!("concurrence: {concurrence}");
            println!("degree_pol: {}", output::sig12(degree));
            println!("purity: {}", output::sig12(rho.purity()));
            Ok(())
        }
    }
}

fn read_spec(path: &Path) -> Result<StateSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    StateSpec::from_json_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn build(spec: &StateSpec, basis: FockBasis, path: &Path) -> Result<DensityOperator, CliError> {
    spec.build(basis)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}
