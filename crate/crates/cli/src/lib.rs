//! Command-line front end for `prokit`: a JSON document format for lossless
//! matrix functions and the `pro-kit` commands that load, convert, invert and
//! analyse them.
//!
//! Exit codes are stable across commands: 0 on success, 1 when the input is
//! well formed but the requested property or construction fails, 2 on I/O,
//! parse or usage errors.

pub mod commands;
pub mod document;

pub use commands::{run, Cli, CliError, Command};
pub use document::{DocumentEnvelope, DocumentError, Function, Kind, SCHEMA};
