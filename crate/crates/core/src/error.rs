use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("distance {0} m is below the 1 m validity floor of the path-loss model")]
    DistanceTooSmall(f64),

    #[error("topology invalid: {0}")]
    InvalidTopology(String),

    #[error("index out of range: {what} = {index} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("fraction {what} = {value} outside {lo}..{hi}")]
    FractionOutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("group size {group_size} does not divide the PRB count {n_prbs}")]
    BadGroupSize { group_size: usize, n_prbs: usize },

    #[error("calibration measurement graph is disconnected; coefficients are not identifiable")]
    DisconnectedMeasurements,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{total} info bits cannot be split into {streams} equal streams")]
    IndivisibleArrangement { total: usize, streams: usize },

    #[error("TTI window {start}..{end} is empty")]
    EmptyWindow { start: u64, end: u64 },

    #[error("plan shape infeasible: {0}")]
    InfeasiblePlan(String),

    #[error("UE {ue} is not scheduled on PRB {prb}")]
    NotScheduled { ue: usize, prb: usize },

    #[error("transmit signal must lie above the transmit LO ({signal} Hz <= {lo} Hz)")]
    InvalidFrequencyPlan { signal: f64, lo: f64 },

    #[error("MIMO channel matrix is singular; equalization impossible")]
    SingularChannel,

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
