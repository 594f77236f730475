//! Library half of the `gauss-factor` binary, exposed so the integration
//! tests can drive commands and re-read the files they emit.

pub mod cli;
pub mod format;
pub mod runner;
