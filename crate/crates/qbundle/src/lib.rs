//! Identity suites, reports and the text format on top of `qbundle-core`.

pub mod compute;
pub mod format;
pub mod report;
pub mod suites;

use qbundle_core::examples::{self, Example};
use qbundle_core::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown example `{0}` (try `qbundle list`)")]
    UnknownExample(String),
    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("missing argument: {0}")]
    MissingArgument(&'static str),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error("{0}")]
    Engine(qbundle_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<qbundle_core::Error> for CliError {
    fn from(e: qbundle_core::Error) -> Self {
        CliError::Engine(e)
    }
}

/// Registered examples: the public names plus the one-point base variant.
pub const EXAMPLES: [&str; 4] = ["trivial-u1", "trivial-u1-point", "hopf-fibration", "dunkl-rank1"];

pub fn parse_scalar(s: &str) -> Result<Scalar, CliError> {
    s.parse::<Scalar>().map_err(|e| CliError::Engine(e.into()))
}

pub fn example(name: &str, kappa: Option<&Scalar>) -> Result<Example, CliError> {
    if !EXAMPLES.contains(&name) {
        return Err(CliError::UnknownExample(name.into()));
    }
    Ok(examples::by_name(name, kappa.cloned())?)
}
