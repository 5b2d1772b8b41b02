//! Front end for `mvss-core`: file-based subcommands, an in-process session
//! simulator, and a replay of the two-secret Liu example.

pub mod commands;
pub mod demo;
pub mod report;
pub mod session;

pub use commands::{run, Cli, Outcome};
pub use report::Report;
pub use session::{CheatMode, Scheme, SessionConfig};
