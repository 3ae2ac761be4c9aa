//! Command-line front end for `eigdeg-core`: problem files, branch records
//! and the subcommands of the `eigdeg` binary.
//!
//! Exit codes: 0 success, 2 malformed input, 3 numerical failure (or a failed
//! verification), 4 violated mathematical precondition such as a start point
//! that is not an eigenpoint or a point degree asked at a non-isolated
//! eigenpoint.

pub mod commands;
pub mod error;
pub mod problem_file;
pub mod record;

pub use error::{exit, CliError};
pub use problem_file::{NSpec, ProblemFile, TermSpec};
pub use record::{BranchRecord, ClassRecord, Format};
