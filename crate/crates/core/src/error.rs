use thiserror::Error;

use crate::transforms::Representation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("representation mismatch: expected {expected:?}, found {found:?}")]
    RepresentationMismatch {
        expected: Representation,
        found: Representation,
    },

    #[error("state kind mismatch: {0}")]
    KindMismatch(String),

    #[error("states live on different lattices")]
    LatticeMismatch,

    #[error("amplitude has {found} samples, lattice has {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid packet: {0}")]
    InvalidPacket(String),

    /// The packet is not negligible at the periodic domain edge.
    #[error("packet leaks to the domain edge (edge/peak = {ratio:e}, limit {limit:e})")]
    EdgeLeakage { ratio: f64, limit: f64 },

    #[error("site index {index} out of range for {n} sites")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("channel has zero norm")]
    ZeroNorm,

    #[error("excitation count must be non-negative, got {0}")]
    NegativeExcitation(i64),

    #[error("phase gauge is not antisymmetric: {0}")]
    InvalidGauge(String),

    #[error("velocity fraction |beta| = {0} must be strictly below 1")]
    InvalidVelocity(f64),

    /// Rescaled support gets too close to the edge of the wavenumber band or
    /// the spatial box.
    #[error("aliasing risk: {0}")]
    AliasingRisk(String),

    #[error("invalid time samples: {0}")]
    InvalidTimes(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for violations of numerical preconditions (edge leakage,
    /// aliasing) as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::EdgeLeakage { .. } | Error::AliasingRisk(_))
    }

    /// True for input that is malformed or outside an operation's domain.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::InvalidLattice(_)
                | Error::InvalidPacket(_)
                | Error::InvalidVelocity(_)
                | Error::InvalidTimes(_)
                | Error::InvalidGauge(_)
                | Error::NegativeExcitation(_)
        )
    }
}
