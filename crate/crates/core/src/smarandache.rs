//! The four Smarandache curves of a dual spherical curve and closed-form
//! statements about their frames and curvatures.
//!
//! Every closed form comes in a [`Formula::Printed`] version, transcribed as
//! commonly stated, and a [`Formula::Rederived`] version worked out again
//! from the frame equations. They coincide except where the stated form
//! carries a transcription slip; the oracle decides which one holds.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;

use crate::curve::DualCurve;
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::frame::{darboux_frame, radius_of_curvature, spherical_radius, DarbouxFrame};
use crate::linalg::{dual_angle, DualAngle, DualMat3, DualVec3};
use crate::study::{dual_to_line, RuledPatch};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_6: f64 = 2.449_489_742_783_178;

/// `|1 − γ|` below which the edge-binormal curve is treated as singular.
pub const EG_POLE_TOL: f64 = 1e-9;
/// `|Δ|` below which a base surface counts as developable.
pub const DEVELOPABLE_TOL: f64 = 1e-9;

/// Which pair or triple of frame vectors is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SmarandacheKind {
    /// `(ẽ + t̃)/√2`
    ET,
    /// `(ẽ + g̃)/√2`
    EG,
    /// `(t̃ + g̃)/√2`
    TG,
    /// `(ẽ + t̃ + g̃)/√3`
    ETG,
}

impl SmarandacheKind {
    pub const ALL: [SmarandacheKind; 4] =
        [SmarandacheKind::ET, SmarandacheKind::EG, SmarandacheKind::TG, SmarandacheKind::ETG];

    /// Coefficients of `(ẽ, t̃, g̃)` in the combination.
    pub fn weights(self) -> [f64; 3] {
        let w = FRAC_1_SQRT_2;
        match self {
            SmarandacheKind::ET => [w, w, 0.0],
            SmarandacheKind::EG => [w, 0.0, w],
            SmarandacheKind::TG => [0.0, w, w],
            SmarandacheKind::ETG => [1.0 / SQRT_3; 3],
        }
    }

    /// Lower-case label used in file names and claim ids.
    pub fn label(self) -> &'static str {
        match self {
            SmarandacheKind::ET => "et",
            SmarandacheKind::EG => "eg",
            SmarandacheKind::TG => "tg",
            SmarandacheKind::ETG => "etg",
        }
    }
}

impl fmt::Display for SmarandacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label().to_uppercase())
    }
}

impl FromStr for SmarandacheKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SmarandacheKind::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidCurve(format!("unknown Smarandache kind {s:?}")))
    }
}

/// Published transcription or independent rederivation of a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Printed,
    Rederived,
}

/// The Smarandache combination of one frame.
pub fn construct(kind: SmarandacheKind, frame: &DarbouxFrame) -> DualVec3 {
    let [a, b, c] = kind.weights();
    frame.e * a + frame.t * b + frame.g * c
}

/// The Smarandache curve of `base` as a curve in its own right, sharing the
/// base parameter. Its derivatives come from finite differences.
pub struct SmarandacheCurve<C> {
    base: C,
    kind: SmarandacheKind,
}

impl<C: DualCurve> SmarandacheCurve<C> {
    pub fn new(base: C, kind: SmarandacheKind) -> Self {
        SmarandacheCurve { base, kind }
    }

    pub fn kind(&self) -> SmarandacheKind {
        self.kind
    }

    pub fn base(&self) -> &C {
        &self.base
    }
}

impl<C: DualCurve> DualCurve for SmarandacheCurve<C> {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        Ok(construct(self.kind, &darboux_frame(&self.base, s)?))
    }

    fn domain(&self) -> (f64, f64) {
        self.base.domain()
    }
}

/// True unless the edge-binormal curve sits on its pole `γ = 1`.
pub fn regularity(kind: SmarandacheKind, gamma_bar: Dual) -> bool {
    kind != SmarandacheKind::EG || (1.0 - gamma_bar.re).abs() > EG_POLE_TOL
}

fn require_regular(kind: SmarandacheKind, gamma_bar: Dual) -> Result<()> {
    if regularity(kind, gamma_bar) {
        Ok(())
    } else {
        Err(Error::DegenerateSpeed(1.0 - gamma_bar.re))
    }
}

/// Sign relating the stated edge-binormal frame to the one oriented along
/// increasing arc length: the two differ when `γ > 1`.
pub fn orientation(kind: SmarandacheKind, gamma_bar: Dual) -> f64 {
    if kind == SmarandacheKind::EG && gamma_bar.re > 1.0 {
        -1.0
    } else {
        1.0
    }
}

fn c(x: f64) -> Dual {
    Dual::real(x)
}

/// `ds̄ᵢ/ds̄`, signed so that the edge-binormal curve runs backwards past its pole.
pub fn derived_speed(kind: SmarandacheKind, gamma_bar: Dual) -> Result<Dual> {
    let g = gamma_bar;
    match kind {
        SmarandacheKind::ET => ((2.0 + g.square()) * 0.5).sqrt(),
        SmarandacheKind::EG => Ok((1.0 - g) * FRAC_1_SQRT_2),
        SmarandacheKind::TG => ((1.0 + g.square() * 2.0) * 0.5).sqrt(),
        SmarandacheKind::ETG => ((g.square() * 2.0 - g * 2.0 + 2.0) * (1.0 / 3.0)).sqrt(),
    }
}

/// Frame of the derived curve, rows `(ẽᵢ, t̃ᵢ, g̃ᵢ)` in the base frame.
pub fn transformed_frame(kind: SmarandacheKind, gamma_bar: Dual) -> Result<DualMat3> {
    require_regular(kind, gamma_bar)?;
    let g = gamma_bar;
    let z = Dual::ZERO;
    let rows = match kind {
        SmarandacheKind::ET => {
            let n2 = (2.0 + g.square()).sqrt()?.recip()?;
            let n3 = (4.0 + 2.0 * g.square()).sqrt()?.recip()?;
            let w = c(FRAC_1_SQRT_2);
            [[w, w, z], [-n2, n2, g * n2], [g * n3, -(g * n3), n3 * 2.0]]
        }
        SmarandacheKind::EG => {
            let w = c(FRAC_1_SQRT_2);
            [[w, z, w], [z, Dual::ONE, z], [-w, z, w]]
        }
        SmarandacheKind::TG => {
            let w = c(FRAC_1_SQRT_2);
            let n2 = (1.0 + 2.0 * g.square()).sqrt()?.recip()?;
            let n3 = (2.0 + 4.0 * g.square()).sqrt()?.recip()?;
            [[z, w, w], [-n2, -(g * n2), g * n2], [g * n3 * 2.0, -n3, n3]]
        }
        SmarandacheKind::ETG => {
            let w = c(1.0 / SQRT_3);
            let q = g.square() - g + 1.0;
            let n2 = (q * 2.0).sqrt()?.recip()?;
            let n3 = (q.sqrt()? * SQRT_6).recip()?;
            [
                [w, w, w],
                [-n2, (1.0 - g) * n2, g * n2],
                [(g * 2.0 - 1.0) * n3, -((g + 1.0) * n3), (2.0 - g) * n3],
            ]
        }
    };
    Ok(DualMat3::from_rows(rows))
}

/// Dual curvature `γ̄ᵢ` of the derived curve from `γ̄` and `γ̄′ = dγ̄/ds̄`.
pub fn closed_form_curvature(kind: SmarandacheKind, gamma_bar: Dual, gamma_prime: Dual) -> Result<Dual> {
    curvature_with(kind, gamma_bar, gamma_prime, Formula::Printed)
}

pub fn curvature_with(kind: SmarandacheKind, g: Dual, gp: Dual, formula: Formula) -> Result<Dual> {
    require_regular(kind, g)?;
    let g2 = g.square();
    match (kind, formula) {
        (SmarandacheKind::ET, _) => (g2 * g + gp * 2.0 + g * 2.0).checked_div((2.0 + g2).pow_three_halves()?),
        (SmarandacheKind::EG, _) => (1.0 + g).checked_div(1.0 - g),
        (SmarandacheKind::TG, Formula::Printed) => {
            let k = 4.0 * SQRT_2;
            (g * gp * k + g2 * k + 2.0 * SQRT_2).checked_div((2.0 + g2 * 4.0).pow_three_halves()?)
        }
        (SmarandacheKind::TG, Formula::Rederived) => {
            (1.0 + gp * 2.0 + g2 * 2.0).checked_div((1.0 + g2 * 2.0).pow_three_halves()?)
        }
        (SmarandacheKind::ETG, _) => {
            let q = g2 - g + 1.0;
            ((gp * 3.0 + g2 * g * 2.0 + 2.0) * FRAC_1_SQRT_2).checked_div(q.pow_three_halves()? * 2.0)
        }
    }
}

/// `R̄ᵢ = (1+γ̄ᵢ²)^(−1/2)` and `ρ̄ᵢ` from the closed-form `γ̄ᵢ`.
pub fn derived_radii(kind: SmarandacheKind, g: Dual, gp: Dual, formula: Formula) -> Result<(Dual, Dual)> {
    let gi = curvature_with(kind, g, gp, formula)?;
    Ok((radius_of_curvature(gi), spherical_radius(gi)))
}

/// Radius of dual curvature of the derived curve in its stated closed form.
pub fn printed_radius(kind: SmarandacheKind, g: Dual, gp: Dual) -> Result<Dual> {
    require_regular(kind, g)?;
    let g2 = g.square();
    match kind {
        SmarandacheKind::ET => {
            let radicand = g2 * g2 * g2 * 2.0 + g2 * g2 * 14.0 + g2 * 12.0
                + g2 * g * gp * 4.0
                + g * gp * 8.0
                + gp.square() * 4.0;
            (2.0 + g2).pow_three_halves()?.checked_div(radicand.sqrt()?)
        }
        SmarandacheKind::EG => (1.0 - g).checked_div((g2 * 2.0 + 2.0).sqrt()?),
        SmarandacheKind::TG => {
            let d = 2.0 + g2 * 4.0;
            let k = 4.0 * SQRT_2;
            let n = g * gp * k + g2 * k + 2.0 * SQRT_2;
            d.pow_three_halves()?.checked_div((d * d * d + n.square()).sqrt()?)
        }
        SmarandacheKind::ETG => {
            let q = g2 - g + 1.0;
            let n = g * 3.0 + g2 * g * 2.0 + 2.0;
            (q.pow_three_halves()? * (2.0 * SQRT_2)).checked_div((q * q * q * 8.0 + n.square()).sqrt()?)
        }
    }
}

/// Published spherical radius `arcsin(R̄ᵢ)`; for the edge-binormal curve only
/// the real part is stated in usable form, so the dual part is `None`.
pub fn printed_spherical_radius(kind: SmarandacheKind, g: Dual, gp: Dual) -> Result<(f64, Option<f64>)> {
    if kind == SmarandacheKind::EG {
        require_regular(kind, g)?;
        let gr = g.re;
        let x = (1.0 - gr) / (2.0 + 2.0 * gr * gr).sqrt();
        return Ok((x.asin(), None));
    }
    let rho = printed_radius(kind, g, gp)?.asin()?;
    Ok((rho.re, Some(rho.du)))
}

/// Darboux vector `d̃ᵢ` of the derived curve, in the base frame.
pub fn darboux_vector_closed(
    kind: SmarandacheKind,
    g: Dual,
    gp: Dual,
    frame: &DarbouxFrame,
    formula: Formula,
) -> Result<DualVec3> {
    require_regular(kind, g)?;
    let g2 = g.square();
    let [ce, ct, cg] = match (kind, formula) {
        (SmarandacheKind::ET, _) => {
            let k = ((2.0 + g2).pow_three_halves()? * SQRT_2).recip()?;
            [(g2 * g * 2.0 + gp * 2.0 + g * 4.0) * k, gp * 2.0 * k, (g2 * 2.0 + 4.0) * k]
        }
        (SmarandacheKind::EG, _) => {
            let k = (1.0 - g).recip()? * SQRT_2;
            [g * k, Dual::ZERO, k]
        }
        (SmarandacheKind::TG, Formula::Printed) => {
            let d = 2.0 + g2 * 4.0;
            let k = d.pow_three_halves()?.recip()?;
            [
                (g * 2.0).checked_div(d.sqrt()?)?,
                g * gp * 4.0 * k,
                (g * gp * 4.0 + g2 * 8.0 + 4.0) * k,
            ]
        }
        (SmarandacheKind::TG, Formula::Rederived) => {
            let d = 1.0 + g2 * 2.0;
            let k = (d.pow_three_halves()? * SQRT_2).recip()?;
            [g * d * 2.0 * k, gp * 2.0 * k, (gp * 2.0 + g2 * 4.0 + 2.0) * k]
        }
        (SmarandacheKind::ETG, f) => {
            let q = g2 - g + 1.0;
            let k = (q.pow_three_halves()? * (2.0 * SQRT_6)).recip()?;
            // the stated vector writes 3γ̄ where the rederivation gives 3γ̄′
            let lead = if f == Formula::Printed { g * 3.0 } else { gp * 3.0 };
            let cubic = g2 * g * 6.0 - g2 * 6.0 + g * 6.0;
            let quad = g2 * 6.0 - g * 6.0 + 6.0;
            [(lead + cubic) * k, lead * k, (lead + quad) * k]
        }
    };
    Ok(frame.e.scale(ce) + frame.t.scale(ct) + frame.g.scale(cg))
}

/// `γ̄ᵢẽᵢ + g̃ᵢ` assembled from [`transformed_frame`] and the closed-form curvature.
pub fn darboux_vector_assembled(
    kind: SmarandacheKind,
    g: Dual,
    gp: Dual,
    frame: &DarbouxFrame,
    formula: Formula,
) -> Result<DualVec3> {
    let gi = curvature_with(kind, g, gp, formula)?;
    let [ei, _, gvec] = transformed_frame(kind, g)?.combine_rows(&frame.basis());
    Ok(ei.scale(gi) + gvec)
}

/// Published derivative formulae `d(ẽᵢ, t̃ᵢ, g̃ᵢ)/ds̄ᵢ = M (ẽ, t̃, g̃)`, as matrices `M`.
///
/// Transcribed only to be measured against the oracle.
pub fn printed_derivative_matrix(kind: SmarandacheKind, g: Dual, gp: Dual) -> Result<DualMat3> {
    require_regular(kind, g)?;
    let g2 = g.square();
    let z = Dual::ZERO;
    let rows = match kind {
        SmarandacheKind::ET => {
            let n = (2.0 + g2).sqrt()?.recip()?;
            let d = (2.0 + g2).square().recip()?;
            let s2 = SQRT_2;
            [
                [-n, n, g * n],
                [
                    (g * gp * s2 - g2 * s2 - 2.0 * s2) * d,
                    (-(g * gp * s2) - (1.0 + g2) * (2.0 + g2) * s2) * d,
                    ((gp + g) * (2.0 + g2) * s2 - g2 * gp * s2) * d,
                ],
                [
                    (g2 * g + gp * 2.0 + g * 2.0) * d,
                    -(g2 * g + gp * 2.0 + g * 2.0) * d,
                    (-(g2 * g2) - g2 * 2.0 - g * gp * 2.0) * d,
                ],
            ]
        }
        SmarandacheKind::EG => {
            let inv = (1.0 - g).recip()?;
            [
                [z, Dual::ONE, z],
                [c(-SQRT_2), z, g * inv * SQRT_2],
                [z, -((1.0 + g) * inv), z],
            ]
        }
        SmarandacheKind::TG => {
            let b = 1.0 + g2 * 2.0;
            let n = b.sqrt()?.recip()?;
            let d = b.square().recip()?;
            let s2 = SQRT_2;
            let four = 2.0 + g2 * 4.0;
            [
                [-n, -(g * n), g * n],
                [
                    (g * gp * 2.0 * s2 - g * b * s2) * d,
                    (g2 * gp * 2.0 * s2 - (g + g2 + 1.0) * b * s2) * d,
                    (-(g2 * gp * 2.0 * s2) + (g - g2) * b * s2) * d,
                ],
                [
                    (-(g2 * g * gp * 16.0) + (g * 4.0 + 2.0) * four) * d,
                    (g * gp * 8.0 + g * four * 2.0) * d,
                    (-(g * gp * 8.0) - g * four * 2.0) * d,
                ],
            ]
        }
        SmarandacheKind::ETG => {
            let p = g2 * 2.0 - g * 2.0 + 2.0;
            let q = g2 - g + 1.0;
            let n = p.sqrt()?.recip()?;
            let p2 = p.square();
            let d2 = (p2 * p).recip()?;
            let d3 = (q.square() * 4.0).recip()?;
            let s3 = SQRT_3;
            let w = g * gp * 2.0 - g;
            [
                [-n, (1.0 - g) * n, g * n],
                [
                    (g * (g * 2.0 - 1.0) * s3 + (g - 1.0) * p2 * s3) * d2,
                    (-((g + g2) * p2 * s3) - (g - 1.0) * w * s3) * d2,
                    ((g + g - g2) * p2 * s3 - g * (g2 * 2.0 - g) * s3) * d2,
                ],
                [
                    ((g * 4.0 + g * 2.0 + 2.0) * q - (g * 2.0 - 1.0) * w) * d3,
                    ((g * -2.0 + g2 * 2.0 - 2.0) * q + (g + 1.0) * w) * d3,
                    ((g * -2.0 - g2 * 2.0 - 2.0) * q + (g - 2.0) * w) * d3,
                ],
            ]
        }
    };
    Ok(DualMat3::from_rows(rows))
}

/// Derivative matrix implied by the frame equations of the derived curve:
/// rows `t̃ᵢ`, `γ̄ᵢg̃ᵢ − ẽᵢ`, `−γ̄ᵢt̃ᵢ` in the base frame.
pub fn implied_derivative_matrix(kind: SmarandacheKind, g: Dual, gp: Dual, formula: Formula) -> Result<DualMat3> {
    let a = transformed_frame(kind, g)?.0;
    let gi = curvature_with(kind, g, gp, formula)?;
    Ok(DualMat3::from_rows(std::array::from_fn(|row| {
        std::array::from_fn(|j| match row {
            0 => a[1][j],
            1 => gi * a[2][j] - a[0][j],
            _ => -(gi * a[1][j]),
        })
    })))
}

/// Real quantities of a developable base curve needed by the developability
/// conditions; primes are arc-length derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseDerivatives {
    pub gamma: f64,
    pub delta: f64,
    pub gamma_prime: f64,
    pub delta_prime: f64,
    pub dist_param: f64,
}

/// Readings of the developability statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionVariant {
    /// As stated.
    Printed,
    /// Published form with the powers of `2+γ²` replaced by `2+4γ²` (only
    /// differs for the tangent-binormal curve).
    DenominatorCorrected,
    /// Rederived from the dual part of the correct curvature formula.
    Rederived,
}

/// Residual `a·δᵢ − b` of the statement "the derived surface is developable
/// iff `a·δᵢ = b`", evaluated at the supplied `δᵢ`.
///
/// The statement is an identity exactly when the residual vanishes for the
/// part of `δᵢ` not carried by `Δᵢ`, i.e. at `δᵢ = γ̄ᵢ.du`.
pub fn developability_condition(
    kind: SmarandacheKind,
    variant: ConditionVariant,
    base: &BaseDerivatives,
    delta_i: f64,
) -> Result<f64> {
    if base.dist_param.abs() > DEVELOPABLE_TOL {
        return Err(Error::HypothesisNotMet(base.dist_param));
    }
    let BaseDerivatives { gamma: g, delta: d, gamma_prime: gp, delta_prime: dp, .. } = *base;
    let g2 = g * g;
    let (a, b) = match (kind, variant) {
        (SmarandacheKind::ET, _) => {
            let n = 2.0 + g2;
            let rhs = (3.0 * d * g2 + 2.0 * d + 2.0 * dp) / n.powf(1.5)
                - 3.0 * d * g * (g2 * g + 2.0 * gp + 2.0 * g) / n.powf(2.5);
            (1.0, rhs)
        }
        (SmarandacheKind::EG, ConditionVariant::Rederived) => ((1.0 - g) * (1.0 - g), 2.0 * d),
        (SmarandacheKind::EG, _) => (1.0 - g2, 2.0 * d),
        (SmarandacheKind::TG, ConditionVariant::Rederived) => {
            let n = 1.0 + 2.0 * g2;
            let rhs = (2.0 * dp + 4.0 * g * d) / n.powf(1.5)
                - 6.0 * g * d * (1.0 + 2.0 * gp + 2.0 * g2) / n.powf(2.5);
            (1.0, rhs)
        }
        (SmarandacheKind::TG, v) => {
            let n = if v == ConditionVariant::Printed { 2.0 + g2 } else { 2.0 + 4.0 * g2 };
            let k = 4.0 * SQRT_2;
            let rhs = (k * d * gp + k * g * dp + 2.0 * k * d * g) / n.powf(1.5)
                + 12.0 * d * g * (k * g * gp + k * g2 + 2.0 * SQRT_2) / n.powf(2.5);
            (1.0, rhs)
        }
        (SmarandacheKind::ETG, _) => {
            let q = g2 - g + 1.0;
            let rhs = (6.0 * g2 * d + 3.0 * dp) / (2.0 * SQRT_2 * q.powf(1.5))
                - 3.0 * d * (2.0 * g - 1.0) * (3.0 * gp + 2.0 * g2 * g + 2.0) / (4.0 * SQRT_2 * q.powf(2.5));
            (1.0, rhs)
        }
    };
    Ok(a * delta_i - b)
}

/// Dual angle between the base ruling and the edge-binormal ruling at `s`.
pub fn bertrand_offset_params<C: DualCurve + ?Sized>(base: &C, s: f64) -> Result<DualAngle> {
    let frame = darboux_frame(base, s)?;
    require_regular(SmarandacheKind::EG, frame.gamma_bar)?;
    dual_angle(&frame.e, &construct(SmarandacheKind::EG, &frame))
}

/// Ruled surface of the derived curve, each ruling anchored where it meets
/// the base ruling (the frame lines are concurrent there).
pub fn sample_smarandache_surface<C: DualCurve + ?Sized>(
    base: &C,
    kind: SmarandacheKind,
    s_grid: Vec<f64>,
    u_grid: Vec<f64>,
) -> Result<RuledPatch> {
    RuledPatch::from_generator(s_grid, u_grid, |s| {
        let frame = darboux_frame(base, s)?;
        let derived = dual_to_line(&construct(kind, &frame))?;
        let ruling = dual_to_line(&frame.e)?;
        let anchor: Vector3<f64> = derived.closest_point_to(&ruling)?;
        Ok((anchor, derived.direction))
    })
}
