pub mod commands;
pub mod gallery;
pub mod load;
pub mod report;
pub mod resolve;
pub mod schema;

pub use commands::{main_with_args, run, Cli, CliError};
pub use report::{Report, Verdict};
