//! Command-line surface for the `extremal` toolkit: the hypergraph document
//! format, subcommands and the `verify-suite` runner.

pub mod commands;
pub mod document;
pub mod report;
pub mod suite;

pub use commands::{run_command, Outcome};
pub use document::{parse_hypergraph, HypergraphDocument, ParseError};
pub use report::{Check, Report};
