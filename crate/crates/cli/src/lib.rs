//! Scenario files, named verification suites and their reports.

mod report;
mod scenario;
mod suite;

use thiserror::Error;

use hol_core::ainfty::AinftyError;
use hol_core::forms::FormError;
use hol_core::locsys::LocsysError;

pub use report::{CheckKind, CheckReport, SuiteReport};
pub use scenario::{generate_scenario, worked_example, ConstantSide, Gauge, Profile, Scenario, ScenarioChain};
pub use suite::{run_suite, Mode, Options, SUITES};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("malformed scenario at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("invalid scenario at {location}: {message}")]
    Invalid { location: String, message: String },
    #[error("bad profile: {0}")]
    Profile(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Ainfty(#[from] AinftyError),
    #[error(transparent)]
    Locsys(#[from] LocsysError),
    #[error(transparent)]
    Form(#[from] FormError),
}
