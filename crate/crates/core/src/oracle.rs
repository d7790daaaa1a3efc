//! Independent numerical checks: stencil differentiation, frames recomputed
//! from scratch on derived curves, and residual bookkeeping.
//!
//! Nothing here consults a closed-form statement about derived curves; the
//! oracle only builds the derived curve pointwise and runs the generic frame
//! pipeline on it.

use std::fmt;

use crate::curve::{ArcLength, DualCurve};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::frame::{darboux_frame, DarbouxFrame, FIELD_STEP};
use crate::linalg::{DualMat3, DualVec3};
use crate::smarandache::{orientation, SmarandacheCurve, SmarandacheKind};
use crate::stencil::central_d1;

pub use crate::stencil::{stencil_d1, stencil_d2};

/// Default tolerance on real parts of oracle comparisons.
pub const TOL_RE: f64 = 1e-6;
/// Default tolerance on dual parts; looser because they pass through one
/// more differentiation.
pub const TOL_DU: f64 = 1e-5;
/// Tolerance for identities that involve no numerical differentiation.
pub const ALGEBRAIC_TOL: f64 = 1e-9;

/// Outcome of one claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Verified,
    Suspect,
    HypothesisNotMet,
    OutOfScope,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Suspect => "suspect",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::OutOfScope => "out-of-scope",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Largest (real, dual) discrepancy between two values of the same shape.
pub trait Measure {
    fn residual(&self, other: &Self) -> (f64, f64);
}

impl Measure for f64 {
    fn residual(&self, other: &f64) -> (f64, f64) {
        ((self - other).abs(), 0.0)
    }
}

impl Measure for Dual {
    fn residual(&self, other: &Dual) -> (f64, f64) {
        ((self.re - other.re).abs(), (self.du - other.du).abs())
    }
}

impl Measure for DualVec3 {
    fn residual(&self, other: &DualVec3) -> (f64, f64) {
        self.max_abs_diff(other)
    }
}

impl Measure for DualMat3 {
    fn residual(&self, other: &DualMat3) -> (f64, f64) {
        let mut out = (0.0f64, 0.0f64);
        for i in 0..3 {
            for j in 0..3 {
                let (re, du) = self.0[i][j].residual(&other.0[i][j]);
                out = (nan_max(out.0, re), nan_max(out.1, du));
            }
        }
        out
    }
}

impl<T: Measure, const N: usize> Measure for [T; N] {
    fn residual(&self, other: &[T; N]) -> (f64, f64) {
        self.iter().zip(other).fold((0.0, 0.0), |acc, (a, b)| {
            let (re, du) = a.residual(b);
            (nan_max(acc.0, re), nan_max(acc.1, du))
        })
    }
}

/// `max` that lets NaN win, so a broken sample cannot hide.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Aggregated residuals of one claim over a set of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub claim_id: String,
    pub samples: usize,
    pub max_re: f64,
    pub max_du: f64,
    pub verdict: Verdict,
}

impl ResidualReport {
    /// Report with verdict decided by `tol_re`/`tol_du` (inclusive).
    pub fn from_residuals(claim_id: &str, samples: usize, max_re: f64, max_du: f64, tol_re: f64, tol_du: f64) -> Self {
        let verdict = if max_re <= tol_re && max_du <= tol_du { Verdict::Verified } else { Verdict::Suspect };
        ResidualReport { claim_id: claim_id.to_string(), samples, max_re, max_du, verdict }
    }

    pub fn with_verdict(claim_id: &str, verdict: Verdict) -> Self {
        ResidualReport { claim_id: claim_id.to_string(), samples: 0, max_re: f64::NAN, max_du: f64::NAN, verdict }
    }
}

/// Compares closed-form values against oracle values sample by sample.
pub fn compare<T: Measure>(claim_id: &str, closed: &[T], oracle: &[T], tol_re: f64, tol_du: f64) -> Result<ResidualReport> {
    if closed.len() != oracle.len() {
        return Err(Error::LengthMismatch { left: closed.len(), right: oracle.len() });
    }
    let (re, du) = closed.iter().zip(oracle).fold((0.0, 0.0), |acc, (a, b)| {
        let (re, du) = a.residual(b);
        (nan_max(acc.0, re), nan_max(acc.1, du))
    });
    Ok(ResidualReport::from_residuals(claim_id, closed.len(), re, du, tol_re, tol_du))
}

/// Hides a curve's own derivative formulas so that only point evaluations
/// reach the frame pipeline.
pub struct PointwiseView<C>(pub C);

impl<C: DualCurve> DualCurve for PointwiseView<C> {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        self.0.eval(s)
    }

    fn domain(&self) -> (f64, f64) {
        self.0.domain()
    }
}

/// Frames of an arbitrary dual spherical curve, recomputed from point
/// evaluations: finite-difference jets, its own arc-length table over
/// `window`, then the generic frame construction.
pub struct FrameOracle<C> {
    curve: ArcLength<PointwiseView<C>>,
}

impl<C: DualCurve> FrameOracle<C> {
    pub fn new(curve: C, window: (f64, f64)) -> Result<Self> {
        Ok(FrameOracle { curve: ArcLength::new(PointwiseView(curve), window, window.0)? })
    }

    /// Arc length of the curve's own indicatrix at its parameter `u`.
    pub fn arclength(&self, u: f64) -> Result<f64> {
        self.curve.s_of_u(u)
    }

    /// Frame at the curve's parameter `u`; `s` of the result is the curve's
    /// own arc length.
    pub fn frame(&self, u: f64) -> Result<DarbouxFrame> {
        darboux_frame(&self.curve, self.arclength(u)?)
    }

    /// `d(ẽ, t̃, g̃)/ds̄` of the recomputed frame, in the curve's own dual arc length.
    pub fn frame_derivatives(&self, u: f64) -> Result<[DualVec3; 3]> {
        let s = self.arclength(u)?;
        let inv = darboux_frame(&self.curve, s)?.speed.recip()?;
        let d = central_d1(|x| Ok(Basis(darboux_frame(&self.curve, x)?.basis())), s, FIELD_STEP)?;
        Ok(d.0.map(|v| v.scale(inv)))
    }
}

#[derive(Clone, Copy)]
struct Basis([DualVec3; 3]);

impl std::ops::Add for Basis {
    type Output = Basis;
    fn add(self, o: Basis) -> Basis {
        Basis(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl std::ops::Mul<f64> for Basis {
    type Output = Basis;
    fn mul(self, k: f64) -> Basis {
        Basis(self.0.map(|v| v * k))
    }
}


/// Independent frames of one Smarandache curve of `base`, indexed by the
/// base arc length.
pub struct DerivedOracle<C> {
    kind: SmarandacheKind,
    inner: FrameOracle<SmarandacheCurve<C>>,
}

impl<C: DualCurve> DerivedOracle<C> {
    /// `window` is the base arc-length interval over which the derived
    /// curve's own arc length is tabulated.
    pub fn new(base: C, kind: SmarandacheKind, window: (f64, f64)) -> Result<Self> {
        Ok(DerivedOracle { kind, inner: FrameOracle::new(SmarandacheCurve::new(base, kind), window)? })
    }

    pub fn kind(&self) -> SmarandacheKind {
        self.kind
    }

    /// Frame of the derived curve at base arc length `s`, oriented along
    /// increasing derived arc length.
    pub fn frame(&self, s: f64) -> Result<DarbouxFrame> {
        self.inner.frame(s)
    }

    pub fn frame_derivatives(&self, s: f64) -> Result<[DualVec3; 3]> {
        self.inner.frame_derivatives(s)
    }

    /// The derived frame re-oriented to follow the base parameter, which is
    /// the orientation closed forms are written in; `gamma_bar` is the
    /// oracle value in that orientation.
    pub fn aligned_frame(&self, s: f64, base_gamma: Dual) -> Result<DarbouxFrame> {
        let mut f = self.frame(s)?;
        if orientation(self.kind, base_gamma) < 0.0 {
            f.t = -f.t;
            f.g = -f.g;
            f.gamma_bar = -f.gamma_bar;
        }
        Ok(f)
    }

    /// Frame derivatives matching [`Self::aligned_frame`], taken with respect
    /// to the derived dual arc length in that orientation.
    pub fn aligned_frame_derivatives(&self, s: f64, base_gamma: Dual) -> Result<[DualVec3; 3]> {
        let [de, dt, dg] = self.frame_derivatives(s)?;
        if orientation(self.kind, base_gamma) < 0.0 {
            Ok([-de, dt, dg])
        } else {
            Ok([de, dt, dg])
        }
    }

    /// Darboux vector `γ̄ᵢẽᵢ + g̃ᵢ` of the aligned frame.
    pub fn darboux_vector(&self, s: f64, base_gamma: Dual) -> Result<DualVec3> {
        let f = self.aligned_frame(s, base_gamma)?;
        Ok(f.e.scale(f.gamma_bar) + f.g)
    }
}

/// Frames of `curve` recomputed pointwise at each of its parameters `params`.
pub fn recompute_frame<C: DualCurve>(curve: C, window: (f64, f64), params: &[f64]) -> Result<Vec<DarbouxFrame>> {
    let oracle = FrameOracle::new(curve, window)?;
    params.iter().map(|&u| oracle.frame(u)).collect()
}

/// Dual curvature of the `kind` curve of `base` at base arc length `s`,
/// from a frame recomputed on the derived curve alone.
pub fn oracle_curvature<C: DualCurve>(kind: SmarandacheKind, base: C, s: f64) -> Result<Dual> {
    const HALF_WIDTH: f64 = 0.25;
    let base_gamma = darboux_frame(&base, s)?.gamma_bar;
    let oracle = DerivedOracle::new(base, kind, (s - HALF_WIDTH, s + HALF_WIDTH))?;
    Ok(oracle.aligned_frame(s, base_gamma)?.gamma_bar)
}
