//! Problem-file front end: parsing, command dispatch and reports.

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;

pub use commands::{run_command, Command, RunOptions};
pub use error::{exit, CliError};
pub use instance::{parse_instance, render_instance, ProblemInstance};
pub use report::Report;
