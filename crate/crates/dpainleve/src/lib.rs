//! File formats and the `dp1` command line for `dpainleve-core`.
//!
//! Every artifact records the working precision. CSV files open with
//! `# key=value` lines; JSON documents follow the schemas in `schemas/`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod io;
pub mod run;

pub use cli::{Cli, PRECISION_ENV};
pub use error::{exit, CliError, Result};
pub use run::run;
