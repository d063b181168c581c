//! Command-line front end: argument parsing, command dispatch and staged output files.

pub mod args;
pub mod commands;
pub mod outputs;

use brillouin_core::Error;

pub use args::Cli;
pub use commands::run;

/// Process exit status for a failed command: 2 for configuration and usage problems, 1 for
/// solver failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Input(_) => 2,
        _ => 1,
    }
}
