//! Front end for `ay-core`: argument parsing, report rendering and the
//! acceptance harness behind `ay reproduce-all`.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod output;

use ay_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Exit status for a library error: bad input is a usage error, a blown
/// memory budget has its own status, everything else is an internal fault.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::OutOfDomain(_)
        | Error::InvalidSymbol(..)
        | Error::Inadmissible(_)
        | Error::NotPrime(_)
        | Error::ZeroModulus => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}
