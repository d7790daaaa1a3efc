//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures raised by dual arithmetic, line geometry and curve analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Division by a pure-dual number (a zero divisor of the dual ring).
    #[error("divisor has zero real part")]
    ZeroRealPart,

    /// A lifted function was evaluated outside its real domain.
    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },

    /// A dual vector with zero real part cannot be normalized.
    #[error("dual vector has zero real part")]
    ZeroRealVector,

    /// The dual angle between (anti)parallel lines has no extractable distance.
    #[error("lines are parallel; offset distance is undefined")]
    ParallelLines,

    #[error("direction is not a unit vector (norm {0})")]
    NotUnitDirection(f64),

    #[error("dual vector is not on the dual unit sphere")]
    NotDualUnit,

    /// The real indicatrix stalls, so arc length cannot serve as parameter.
    #[error("real indicatrix is singular at parameter {0}")]
    SingularIndicatrix(f64),

    #[error("parameter {s} lies outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },

    /// The edge-binormal construction degenerates where 1 - gamma vanishes.
    #[error("derived curve has vanishing speed (1 - gamma = {0:e})")]
    DegenerateSpeed(f64),

    /// A developability statement was applied to a non-developable base.
    #[error("base surface is not developable (distribution parameter {0:e})")]
    HypothesisNotMet(f64),

    #[error("grid has {found} points, at least {needed} are required")]
    GridTooSmall { found: usize, needed: usize },

    #[error("sequences differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("cannot parse dual number from {0:?}")]
    ParseDual(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
