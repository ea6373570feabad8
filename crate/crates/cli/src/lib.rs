//! Library half of the `ttg` command: model documents, the subcommands and
//! their renderings. The binary only parses arguments and picks an output.

pub mod dot;
pub mod model;
pub mod parse;
pub mod run;

pub use model::{Model, Subject};
pub use parse::{parse_model, to_text, ParseError};
pub use run::{run, Command, InputError, Options, Outcome};

/// Exit status for a run whose checks all passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status when a mathematical check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT_ERROR: i32 = 2;
