//! Command-line front end for `fibsum-core`: argument parsing, the config
//! file, output formats and a thread-backed stripe runner.

pub mod app;
pub mod cli;
pub mod config;
pub mod output;
pub mod threads;

pub use app::{run, AppError, Outcome};
pub use cli::Cli;
pub use threads::Threads;
