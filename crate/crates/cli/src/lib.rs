//! Command-line front end: graph files in, canonical JSON or readable
//! polynomials out.

pub mod args;
pub mod commands;
pub mod error;
pub mod graph_file;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;
pub use graph_file::{GraphFile, ParseError};

/// Environment variable that fixes the worker-thread count.
pub const THREADS_VAR: &str = "ORDTUTTE_THREADS";

/// Size the global pool from [`THREADS_VAR`] if set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("{THREADS_VAR}={raw}: expected a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}
