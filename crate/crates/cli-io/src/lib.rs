//! Command-line front end: subcommand dispatch, the bundled golden corpus,
//! and the corpus-run summary that exercises every acceptance property.

pub mod commands;
pub mod corpus;
pub mod random;
pub mod report;
pub mod run;

pub use report::{Report, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN};
