//! Line geometry with dual numbers.
//!
//! Oriented lines are points of the dual unit sphere, so a ruled surface is a
//! curve `s ↦ ẽ(s)` of dual unit vectors. The crate computes the Darboux frame
//! and dual curvature of such curves, builds the four Smarandache curves
//! `(ẽ+t̃)/√2`, `(ẽ+g̃)/√2`, `(t̃+g̃)/√2`, `(ẽ+t̃+g̃)/√3`, and checks closed-form
//! statements about them against a finite-difference oracle.

// `!(x > y)` also rejects NaN, which the plain negation would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod dual;
pub mod error;
pub mod frame;
pub mod jet;
pub mod ledger;
pub mod linalg;
pub mod oracle;
pub mod smarandache;
pub mod spline;
pub mod stencil;
pub mod study;

pub use curve::{reparametrize_arclength, ArcLength, CurveSpec, DualCurve, Preset, SampledCurve, UnitSpeedCurve};
pub use dual::Dual;
pub use error::{Error, Result};
pub use frame::{curvature_data, darboux_frame, CurvatureData, DarbouxFrame};
pub use linalg::{dual_angle, DualAngle, DualMat3, DualVec3};
pub use smarandache::SmarandacheKind;
pub use study::{dual_to_line, line_to_dual, Line3, RuledPatch};
