//! `cmslab`: batch front end for the cms-core simulations and identity checks.
//!
//! Exit status: 0 when every check passed, 1 when the tool ran but a check failed (the report is
//! still written), 2 on bad input.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Output;
use config::{parse_rational, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] cms_core::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use cms_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::InvalidSpec(_) | E::InvalidState(_) | E::InvalidArgument(_) | E::InvalidPartition(_)) => 2,
            CliError::Core(E::Unsupported(_) | E::GuardExceeded(_) | E::DegreeGuard(_)) => 2,
            CliError::Core(_) | CliError::Write { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cmslab", version, about = "Calogero-Moser-Sutherland and Ruijsenaars-Schneider laboratory")]
struct Cli {
    /// JSON run configuration (`model`, optional `state`, optional `elliptic`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for random initial states and sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the flow and emit a CSV trajectory.
    Simulate {
        #[arg(long = "T", default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Use the RS Hamiltonian (needs `beta`).
        #[arg(long)]
        relativistic: bool,
    },
    /// Drift of the conserved quantities along an integrated trajectory.
    Audit {
        #[arg(long = "T", default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Projection-method positions against the integrated flow (kind I).
    Project {
        #[arg(long = "T", default_value_t = 5.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Asymptotic momenta (kinds I, II).
    Scatter,
    /// Poincare algebra, principal-minor identity and involutivity of the RS integrals.
    RsAudit,
    /// Action-angle map and self-duality residual (kind I).
    Duality,
    /// Exact Dunkl-operator identities.
    DunklCheck {
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Exact coupling, e.g. `1/3`.
        #[arg(long, default_value = "1/2", value_parser = parse_rational)]
        k: cms_core::polyring::Rat,
    },
    /// Jack polynomial in the monomial basis.
    Jack {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        lam: Vec<u32>,
        #[arg(long, value_parser = parse_rational)]
        k: cms_core::polyring::Rat,
        /// Also run the finite-difference eigenfunction check (a = 1) and emit JSON.
        #[arg(long)]
        check: bool,
    },
    /// Baker-Akhiezer function checks for integer coupling m.
    Ba {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// Commutator residual of two analytic difference operators.
    AdopCheck {
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        r: i32,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
        s: i32,
        /// Built-in test function: plane-wave, mixed or trig.
        #[arg(long, default_value = "mixed")]
        function: String,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// Special-function self-checks (Weierstrass p, lattice sums, two-body S-matrix).
    Special,
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("this command needs --config <file>".into()))?;
    RunConfig::load(path)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Simulate { t, tol, relativistic } => commands::simulate(&load(cli)?, seed, *t, *tol, *relativistic),
        Command::Audit { t, tol } => commands::audit(&load(cli)?, seed, *t, *tol),
        Command::Project { t, tol } => commands::project(&load(cli)?, seed, *t, *tol),
        Command::Scatter => commands::scatter(&load(cli)?, seed),
        Command::RsAudit => commands::rs_audit(&load(cli)?, seed),
        Command::Duality => commands::duality(&load(cli)?, seed),
        Command::DunklCheck { n, degree, k } => commands::dunkl_check(*n, *degree, k),
        Command::Jack { n, lam, k, check } => commands::jack(*n, lam, k, *check),
        Command::Ba { n, m } => commands::ba(*n, *m),
        Command::AdopCheck { r, s, function, points } => {
            commands::adop_check(&load(cli)?, seed, *r, *s, function, *points)
        }
        Command::Special => commands::special(seed),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| match out {
        Output::Text(t) => emit(&cli, &t).map(|_| true),
        Output::Json(report) => {
            let mut text = serde_json::to_string_pretty(&report.body).expect("reports serialize");
            text.push('\n');
            emit(&cli, &text).map(|_| report.passed)
        }
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("cmslab: a verification exceeded its tolerance");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("cmslab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
