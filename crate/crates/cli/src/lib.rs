//! Workspace documents, reports and the `nearspace` command line.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, run_command, Cli, Command, InputError, Outcome, DEFAULT_MAX_N};
pub use document::{parse_document, parse_workspace, DocError, Document, Workspace};
pub use report::{Format, Report};
