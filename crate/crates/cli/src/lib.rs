//! Command-line front end for `derivring-core`: the polynomial grammar,
//! variety files, the builtin catalog, JSON output and the property suites
//! run by `verify`.

pub mod catalog;
pub mod commands;
pub mod error;
pub mod json;
pub mod parse;
pub mod suites;
pub mod variety;

pub use catalog::{catalog, CatalogEntry, Expected};
pub use commands::{run, Cli, Command, Outcome};
pub use error::{CliError, CliResult};
pub use parse::{parse_polynomial, print_polynomial, ParseError};
pub use variety::VarietyFile;
