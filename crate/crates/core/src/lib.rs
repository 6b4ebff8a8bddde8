//! Non-stabilizerness ("magic") of final spin states in tree-level QED
//! two-to-two scattering.
//!
//! Spin states live in the four-dimensional basis
//! `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩` with particle 1 as the left tensor factor.
//! Magic is the second stabilizer Rényi entropy `M₂ = −log Ξ₂` in nats.

pub mod amplitude;
pub mod error;
pub mod figures;
pub mod kinematics;
pub mod limits;
pub mod linalg;
pub mod magic;
pub mod pauli;
pub mod relations;
pub mod scan;
pub mod spinor;
pub mod stabilizer;
pub mod tables;
pub mod verify;

pub use error::Error;
pub use kinematics::{KinematicPoint, Process, Regime};
pub use scan::{ScanConfig, Source};

/// Default mass ratio `m_e/m_μ` (rounded).
pub const LAMBDA_ROUNDED: f64 = 0.005;
/// Mass ratio `m_e/m_μ` to four significant figures.
pub const LAMBDA_PHYSICAL: f64 = 0.004836;
