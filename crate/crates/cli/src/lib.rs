//! Library side of the `bipot` command-line tool.
//!
//! [`run`] executes a parsed [`Cli`] and returns the process exit code:
//! 0 on success, 1 when a verification check or a computation fails and 2
//! for usage errors.

pub mod args;
pub mod commands;
pub mod grid;
pub mod output;
pub mod verify;

use std::io;

use bipot::{PotentialError, QuadratureError, SpectrumError, Tolerance};
use thiserror::Error;

pub use args::{Cli, Command, Format};

/// Environment variable with the default quadrature tolerance: either one
/// number used for both the absolute and the relative tolerance, or
/// `ABS,REL`.
pub const TOLERANCE_ENV: &str = "BIPOT_TOLERANCE";

pub const EXIT_SUCCESS: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Potential(#[from] PotentialError),
    #[error("{0}")]
    Spectrum(#[from] SpectrumError),
    #[error("every spectrum row failed")]
    AllRowsFailed,
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

fn parse_env_tolerance(raw: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("{TOLERANCE_ENV}={raw:?}: expected TOL or ABS,REL"));
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match nums.as_slice() {
        [t] => Ok((*t, *t)),
        [a, r] => Ok((*a, *r)),
        _ => Err(bad()),
    }
}

/// Quadrature tolerance from the defaults, then the environment, then flags.
pub fn resolve_tolerance(
    env: Option<&str>,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
) -> Result<Tolerance, CliError> {
    let (mut abs, mut rel) = (Tolerance::DEFAULT_ABSOLUTE, Tolerance::DEFAULT_RELATIVE);
    if let Some(raw) = env.filter(|s| !s.trim().is_empty()) {
        (abs, rel) = parse_env_tolerance(raw)?;
    }
    abs = abs_tol.unwrap_or(abs);
    rel = rel_tol.unwrap_or(rel);
    Tolerance::new(abs, rel, Tolerance::DEFAULT_MAX_SUBDIVISIONS)
        .map_err(|e: QuadratureError| CliError::Usage(e.to_string()))
}

/// Runs the command inside a worker pool of the requested size.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let env = std::env::var(TOLERANCE_ENV).ok();
    let tol = resolve_tolerance(env.as_deref(), cli.global.abs_tol, cli.global.rel_tol)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    match cli.global.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => pool = pool.num_threads(n),
        None => {}
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Fig1(a) => commands::fig1(a, tol).map(|_| EXIT_SUCCESS),
        Command::Fig2(a) => commands::fig2(a, tol).map(|_| EXIT_SUCCESS),
        Command::Verify(a) => verify::run(a, tol),
        Command::Spectrum(a) => commands::spectrum(a, tol),
    })
}
