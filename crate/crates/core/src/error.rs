use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(String),

    #[error("invalid price function: {0}")]
    InvalidPriceFunction(String),

    #[error("protocol `{protocol}` does not support {n_agents} agent(s){hint}")]
    UnsupportedArity {
        protocol: String,
        n_agents: usize,
        hint: &'static str,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("observation has zero probability")]
    ImpossibleEvidence,

    #[error("{candidates} candidate profiles exceed the budget of {cap}")]
    Budget { candidates: u128, cap: u128 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
