use thiserror::Error;

use crate::instance::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("no path from source to sink")]
    NoPath,

    #[error("no budget-feasible spanning tree exists")]
    Infeasible,

    #[error("instance exceeds oracle bounds: {0}")]
    TooLarge(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("bad generator parameters: {0}")]
    Generator(String),

    #[error("{0}")]
    Parse(#[from] crate::instance::io::ParseError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
