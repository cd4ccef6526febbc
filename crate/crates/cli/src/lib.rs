//! Report, verification and export front end for `polyperm-core`.

pub mod claims;
pub mod config;
pub mod export;
pub mod report;
pub mod verify;

pub use config::{CliError, Fault, Format, RunConfig};
pub use export::{run_export, Target};
pub use report::{run_report, Report};
pub use verify::{run_verify, VerifyOutcome, CHECK_NAMES};
