//! Command-line front end: the JSON workspace format, reports, and the
//! `hlts` command surface.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run_args, Outcome};
pub use format::{parse_workspace, print_workspace, FormatError, Workspace};
pub use report::{Report, Status};
