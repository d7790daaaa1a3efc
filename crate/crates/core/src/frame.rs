//! Darboux frame `(ẽ, t̃, g̃)`, dual geodesic curvature `γ̄` and the derived
//! curvature data of a curve on the dual unit sphere.
//!
//! Frames are computed in the curve's own parameter and normalized by the
//! dual speed, so arc-length parametrized curves give the usual formulas
//! `t̃ = ẽ′/(1+εΔ)`, `g̃ = ẽ×t̃`, `γ̄ = −⟨dg̃/ds̄, t̃⟩`.

use crate::curve::{CurveJet, DualCurve, MIN_SPEED};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::linalg::DualVec3;
use crate::stencil::central_d1;

/// Step for differentiating frame-level fields such as `γ̄(s)`.
pub const FIELD_STEP: f64 = 1.0 / 256.0;

/// The dual Darboux frame at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxFrame {
    pub s: f64,
    pub e: DualVec3,
    pub t: DualVec3,
    pub g: DualVec3,
    /// Dual geodesic curvature `γ̄ = γ + ε(δ − γΔ)`.
    pub gamma_bar: Dual,
    /// Distribution parameter `Δ`; zero exactly for developable surfaces.
    pub dist_param: f64,
    /// `ds̄/ds = 1 + εΔ`.
    pub speed: Dual,
}

impl DarbouxFrame {
    /// Builds the frame from position and first two derivatives in any
    /// regular parameter.
    pub fn from_jet(s: f64, jet: &CurveJet) -> Result<DarbouxFrame> {
        let e = jet.value;
        let sigma = jet.d1.norm().map_err(|_| Error::SingularIndicatrix(s))?;
        if sigma.re < MIN_SPEED {
            return Err(Error::SingularIndicatrix(s));
        }
        let inv = sigma.recip()?;
        let t = jet.d1.scale(inv);
        let g = e.cross(&t);
        let sigma_p = jet.d1.dot(&jet.d2) * inv;
        let dt = (jet.d2 - t.scale(sigma_p)).scale(inv);
        let dg = jet.d1.cross(&t) + e.cross(&dt);
        let gamma_bar = -(dg.dot(&t) * inv);
        let dist_param = sigma.du / sigma.re;
        Ok(DarbouxFrame {
            s,
            e,
            t,
            g,
            gamma_bar,
            dist_param,
            speed: Dual::new(1.0, dist_param),
        })
    }

    pub fn basis(&self) -> [DualVec3; 3] {
        [self.e, self.t, self.g]
    }

    pub fn is_developable(&self, tol: f64) -> bool {
        self.dist_param.abs() <= tol
    }
}

/// Frame of `curve` at `s`.
pub fn darboux_frame<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<DarbouxFrame> {
    DarbouxFrame::from_jet(s, &curve.jet(s, 2)?)
}

/// `Δ`, the dual part of `‖ẽ′‖` relative to its real part.
pub fn distribution_parameter<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<f64> {
    let sigma = curve.jet(s, 1)?.d1.norm().map_err(|_| Error::SingularIndicatrix(s))?;
    if sigma.re < MIN_SPEED {
        return Err(Error::SingularIndicatrix(s));
    }
    Ok(sigma.du / sigma.re)
}

/// Dual arc length `s + ε∫₀ˢ Δ`, integrated by composite Simpson.
pub fn dual_arclength<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<Dual> {
    if s == 0.0 {
        return Ok(Dual::ZERO);
    }
    let pairs = ((s.abs() * 32.0).ceil() as usize).max(1);
    let n = 2 * pairs;
    let h = s / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * distribution_parameter(curve, h * i as f64)?;
    }
    Ok(Dual::new(s, sum * h / 3.0))
}

/// `dγ̄/ds̄ = (1+εΔ)⁻¹ dγ̄/ds`, differentiating the `γ̄` field by a stencil.
pub fn gamma_bar_derivative<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<Dual> {
    let speed = darboux_frame(curve, s)?.speed;
    let d = central_d1(|x| Ok(darboux_frame(curve, x)?.gamma_bar), s, FIELD_STEP)?;
    d.checked_div(speed)
}

/// Numerical `d/ds̄` of the frame fields `(ẽ, t̃, g̃)`.
pub fn frame_derivatives<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<[DualVec3; 3]> {
    let inv = darboux_frame(curve, s)?.speed.recip()?;
    let mut out = [DualVec3::zeros(); 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let d = central_d1(|x| Ok(darboux_frame(curve, x)?.basis()[k]), s, FIELD_STEP)?;
        *slot = d.scale(inv);
    }
    Ok(out)
}

/// Maximum (real, dual) residuals of the frame equations and of the
/// Darboux-vector rotation law at `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameResiduals {
    pub ode: (f64, f64),
    pub darboux: (f64, f64),
}

pub fn frame_residuals<C: DualCurve + ?Sized>(curve: &C, s: f64) -> Result<FrameResiduals> {
    let f = darboux_frame(curve, s)?;
    let [de, dt, dg] = frame_derivatives(curve, s)?;
    let gb = f.gamma_bar;
    let predicted = [f.t, f.g.scale(gb) - f.e, -f.t.scale(gb)];
    let d = curvature_data(&f).darboux;
    let rotated = [d.cross(&f.e), d.cross(&f.t), d.cross(&f.g)];
    let worst = |pred: &[DualVec3; 3]| {
        [de, dt, dg].iter().zip(pred).fold((0.0f64, 0.0f64), |acc, (a, b)| {
            let (re, du) = a.max_abs_diff(b);
            (acc.0.max(re), acc.1.max(du))
        })
    };
    Ok(FrameResiduals { ode: worst(&predicted), darboux: worst(&rotated) })
}

/// Curvature quantities derived from `γ̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    pub gamma_bar: Dual,
    /// Real geodesic curvature `γ`.
    pub gamma: f64,
    /// `δ = γ̄.du + γΔ`.
    pub delta: f64,
    pub dist_param: f64,
    /// `R̄ = (1+γ̄²)^(−1/2)`.
    pub radius: Dual,
    /// Spherical radius `ρ̄`, with `sin ρ̄ = R̄` and `cot ρ̄ = γ̄`.
    pub rho: Dual,
    /// Dual Darboux vector `d̃ = γ̄ẽ + g̃`.
    pub darboux: DualVec3,
    /// `d̃/‖d̃‖`.
    pub darboux_unit: DualVec3,
}

/// `R̄ = (1+γ̄²)^(−1/2)`.
pub fn radius_of_curvature(gamma_bar: Dual) -> Dual {
    (1.0 + gamma_bar.square()).lift(|x| x.powf(-0.5), |x| -0.5 * x.powf(-1.5))
}

/// `ρ̄ ∈ (0, π)` with `sin ρ̄ = R̄` and `cos ρ̄ = γ̄R̄`.
///
/// Taken as `arccos(γ̄R̄)`, which equals `arcsin(R̄)` for `γ ≥ 0` and keeps
/// `cot ρ̄ = γ̄` when `γ < 0`.
pub fn spherical_radius(gamma_bar: Dual) -> Dual {
    (gamma_bar * radius_of_curvature(gamma_bar)).lift(f64::acos, |x| -1.0 / (1.0 - x * x).sqrt())
}

pub fn curvature_data(frame: &DarbouxFrame) -> CurvatureData {
    let gb = frame.gamma_bar;
    let radius = radius_of_curvature(gb);
    let darboux = frame.e.scale(gb) + frame.g;
    CurvatureData {
        gamma_bar: gb,
        gamma: gb.re,
        delta: gb.du + gb.re * frame.dist_param,
        dist_param: frame.dist_param,
        radius,
        rho: spherical_radius(gb),
        darboux,
        darboux_unit: darboux.scale(radius),
    }
}
