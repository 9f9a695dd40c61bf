//! Batch front end for the `ippkit` binary: graph loading, the four
//! subcommands and their JSON Lines / table reports.

pub mod commands;
pub mod input;
pub mod report;
pub mod verify;

pub use commands::{cmd_classify, cmd_exact, cmd_survey, RunOptions};
pub use report::{Record, RunReport, Status};
pub use verify::{cmd_verify, load_corpus, VerifyReport};
