//! `blipfield` runs the named scenarios and writes a table plus a JSON
//! sidecar.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical precondition
//! violation (edge leakage, aliasing risk), 1 anything else.

use std::path::PathBuf;
use std::process::ExitCode;

use blipfield::scenarios::{write_outputs, OutputFormat, Overrides, Scenario, ScenarioConfig, UnitSystem};
use blipfield::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "blipfield",
    version,
    about = "Local photon field scenarios on a periodic 1D lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Overlap of mirrored counter-propagating packets over time.
    Orthogonality(Common),
    /// rms width under the blip and standard evolution laws.
    DispersionCompare(Common),
    /// Real-space regularisation kernel and its tail slope.
    Kernel(Common),
    /// Boost norm drift and two-path field covariance.
    Boost(Common),
    /// Single-excitation spectra of the dynamical and energy Hamiltonians.
    Spectra(Common),
    /// Probability density per channel at each time sample.
    Propagate(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// JSON scenario configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    length: Option<f64>,
    #[arg(long, value_enum)]
    units: Option<Units>,
    #[arg(long, allow_hyphen_values = true)]
    t0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Output table path; the sidecar goes to `<out>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Units {
    Natural,
    Si,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
    Json,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            length: self.length,
            units: self.units.map(|u| match u {
                Units::Natural => UnitSystem::Natural,
                Units::Si => UnitSystem::Si,
            }),
            t0: self.t0,
            t1: self.t1,
            samples: self.samples,
            beta: self.beta,
            out: self.out.clone(),
            format: self.format.map(|f| match f {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            }),
        }
    }
}

fn run(scenario: Scenario, args: &Common) -> Result<(), Error> {
    let mut cfg = match &args.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::defaults(scenario),
    };
    cfg.apply(&args.overrides());
    let result = scenario.run(&cfg)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let (out, meta) = write_outputs(scenario, &cfg, &result)?;
    eprintln!("wrote {} and {}", out.display(), meta.display());
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    if err.is_numerical() {
        3
    } else if err.is_config() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match &cli.command {
        Command::Orthogonality(a) => (Scenario::Orthogonality, a),
        Command::DispersionCompare(a) => (Scenario::DispersionCompare, a),
        Command::Kernel(a) => (Scenario::Kernel, a),
        Command::Boost(a) => (Scenario::Boost, a),
        Command::Spectra(a) => (Scenario::Spectra, a),
        Command::Propagate(a) => (Scenario::Propagate, a),
    };
    match run(scenario, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
