use thiserror::Error;

use crate::kinematics::{Process, Regime};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state vector vanishes (norm below the relative floor)")]
    VanishingState,

    #[error("unsupported Hilbert-space dimension {0}: expected a power of two")]
    UnsupportedDimension(usize),

    #[error("stabilizer count for n = {0} qubits does not fit in 128 bits")]
    CountOverflow(u32),

    #[error("qubit count must be at least 1")]
    ZeroQubits,

    #[error("collinear momenta: scattering frame is degenerate")]
    DegenerateFrame,

    #[error("below threshold: sqrt(s) = {sqrt_s} < {threshold} (electron-mass units)")]
    BelowThreshold { sqrt_s: f64, threshold: f64 },

    #[error("regime {regime} is not available for process {process}")]
    InvalidRegime { process: Process, regime: Regime },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown {kind} '{value}'")]
    Parse { kind: &'static str, value: String },

    #[error("stabilizer id {0} is outside 1..=60")]
    UnknownStabilizer(usize),
}
