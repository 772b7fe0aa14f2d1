use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("site list is empty")]
    EmptySites,

    #[error("modulus must be nonnegative and finite, got {0}")]
    InvalidModulus(f64),

    #[error("phase must be finite, got {0}")]
    NonFinitePhase(f64),

    #[error("phase radius must be positive and finite, got {0}")]
    InvalidPhaseRadius(f64),

    #[error("minimum unit must be positive and finite, got {0}")]
    InvalidUnit(f64),

    #[error("non-finite amplitude component at site {0}")]
    NonFiniteAmplitude(usize),

    #[error("state count {0} does not fit an unsigned 64-bit integer")]
    CountOverflow(f64),

    #[error("lattice size on the {0} axis must be at least 1")]
    ZeroLatticeSize(&'static str),

    #[error("position {x} lies outside the lattice (n_x = {n_x})")]
    PositionOutOfRange { x: usize, n_x: usize },

    #[error("theta index {theta} lies outside the lattice (n_theta = {n_theta})")]
    ThetaOutOfRange { theta: usize, n_theta: usize },

    #[error("mixed time indices in the {0} state set")]
    MixedTimeIndices(&'static str),

    #[error("{total} events exceed the materialization cap of {cap}; use event counts instead")]
    EventCapExceeded { total: u128, cap: u64 },

    #[error("count lists have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("all counts are zero; the event probability is undefined")]
    AllZeroCounts,

    #[error("wave function has zero modulus everywhere")]
    AllZeroWaveFunction,

    #[error("degenerate discretization: every state count rounds to zero at this unit")]
    DegenerateDiscretization,

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("event weights exceed 128-bit cumulative range")]
    WeightOverflow,

    #[error("report and reference cover different positions")]
    SupportMismatch,

    #[error("unit list is empty")]
    EmptyUnitList,

    #[error("unit values must be strictly decreasing")]
    UnitsNotDecreasing,

    #[error("malformed decimal string {0:?}")]
    MalformedDecimal(String),

    #[error("malformed wave document: {0}")]
    MalformedDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
