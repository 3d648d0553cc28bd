//! `pqovs` command-line front end: argument parsing, state files and table
//! output on top of [`pqovs_core`].

pub mod config;
pub mod number;
pub mod run;
pub mod statefile;

pub use config::{parse_args, RunConfig};
pub use run::{run, run_with, CliError};
