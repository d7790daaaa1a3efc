//! Curves on the dual unit sphere: the [`DualCurve`] trait, analytic presets,
//! sampled curves and arc-length reparametrization of the real indicatrix.

use std::fmt;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::jet::{jet_component, jet_cross, jet_dot, jet_scale, jet_sub, Jet, JetVec3};
use crate::linalg::DualVec3;
use crate::spline::CubicSpline;
use crate::stencil::{central_d1, central_d2_wide, central_d3, reach};

/// Finite-difference steps for first, second and third derivatives.
///
/// Powers of two keep `s + k·h` exact for moderate `s`, and each order gets
/// the step that balances its truncation error against rounding.
pub const DIFF_STEPS: [f64; 3] = [1.0 / 1024.0, 1.0 / 64.0, 1.0 / 32.0];

/// Real speeds below this mark a stalled indicatrix.
pub const MIN_SPEED: f64 = 1e-8;

/// Position and derivatives of a dual curve at one parameter value.
///
/// Only the first `order` derivatives are meaningful; the rest are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub order: usize,
    pub value: DualVec3,
    pub d1: DualVec3,
    pub d2: DualVec3,
    pub d3: DualVec3,
}

impl CurveJet {
    fn from_jets(e: &JetVec3, e_star: &JetVec3, order: usize) -> CurveJet {
        let at = |k: usize| {
            if k <= order {
                DualVec3::new(jet_component(e, k), jet_component(e_star, k))
            } else {
                DualVec3::zeros()
            }
        };
        CurveJet { order, value: at(0), d1: at(1), d2: at(2), d3: at(3) }
    }
}

/// A parametrized curve `s ↦ ẽ(s)` of dual unit vectors.
pub trait DualCurve: Send + Sync {
    fn eval(&self, s: f64) -> Result<DualVec3>;

    /// Closed parameter interval; bounds may be infinite.
    fn domain(&self) -> (f64, f64);

    /// Derivatives up to `order` (1..=3); finite differences unless overridden.
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        derivatives(self, s, order)
    }

    /// `Some(σ)` when the real indicatrix has constant speed σ.
    fn constant_speed(&self) -> Option<f64> {
        None
    }

    fn check_domain(&self, s: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if s >= lo && s <= hi {
            Ok(())
        } else {
            Err(Error::OutOfDomain { s, lo, hi })
        }
    }
}

impl<C: DualCurve + ?Sized> DualCurve for &C {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        (**self).eval(s)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        (**self).jet(s, order)
    }
    fn constant_speed(&self) -> Option<f64> {
        (**self).constant_speed()
    }
}

impl<C: DualCurve + ?Sized> DualCurve for Box<C> {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        (**self).eval(s)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        (**self).jet(s, order)
    }
    fn constant_speed(&self) -> Option<f64> {
        (**self).constant_speed()
    }
}

/// Central finite-difference derivatives of `curve` up to `order`, applied
/// componentwise to both parts.
pub fn derivatives<C: DualCurve + ?Sized>(curve: &C, s: f64, order: usize) -> Result<CurveJet> {
    let order = order.clamp(1, 3);
    let (lo, hi) = curve.domain();
    for k in 1..=order {
        let margin = reach(k) * DIFF_STEPS[k - 1];
        if s - margin < lo || s + margin > hi {
            return Err(Error::OutOfDomain { s, lo: lo + margin, hi: hi - margin });
        }
    }
    let f = |x: f64| curve.eval(x);
    let value = curve.eval(s)?;
    let d1 = central_d1(f, s, DIFF_STEPS[0])?;
    let d2 = if order >= 2 { central_d2_wide(f, s, DIFF_STEPS[1])? } else { DualVec3::zeros() };
    let d3 = if order >= 3 { central_d3(f, s, DIFF_STEPS[2])? } else { DualVec3::zeros() };
    Ok(CurveJet { order, value, d1, d2, d3 })
}

/// A curve given by a closure; derivatives by finite differences.
pub struct FnCurve<F> {
    f: F,
    domain: (f64, f64),
}

impl<F: Fn(f64) -> DualVec3 + Send + Sync> FnCurve<F> {
    pub fn new(f: F, domain: (f64, f64)) -> Self {
        FnCurve { f, domain }
    }
}

impl<F: Fn(f64) -> DualVec3 + Send + Sync> DualCurve for FnCurve<F> {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        self.check_domain(s)?;
        Ok((self.f)(s))
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Analytic test curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// Rulings `(cos s, sin s, 0)` through `(0, 0, s)`: the right helicoid.
    Helicoid,
    /// Rulings of a circular cone with apex at the origin; `s = radius·angle`
    /// when `radius² + height² = 1`.
    Cone { radius: f64, height: f64 },
    /// Rulings along a wobbling latitude `θ = polar + wobble·sin u`, attached
    /// to the helix `(offset cos u, offset sin u, pitch·u)`.
    LatitudeDrift { polar: f64, wobble: f64, pitch: f64, offset: f64 },
    /// Tangent lines of `(radius cos u, radius sin u, climb·u²/2)`: a
    /// developable surface with varying curvature.
    TangentDevelopable { radius: f64, climb: f64 },
}

impl Preset {
    pub const DEFAULT_CONE: Preset = Preset::Cone { radius: 0.8, height: 0.6 };
    pub const DEFAULT_LATITUDE_DRIFT: Preset =
        Preset::LatitudeDrift { polar: 1.1, wobble: 0.15, pitch: 0.5, offset: 0.3 };
    pub const DEFAULT_TANGENT_DEVELOPABLE: Preset =
        Preset::TangentDevelopable { radius: 1.0, climb: 0.3 };

    /// The presets exercised by the verification suite.
    pub fn standard_suite() -> [Preset; 4] {
        [
            Preset::Helicoid,
            Preset::DEFAULT_CONE,
            Preset::DEFAULT_LATITUDE_DRIFT,
            Preset::DEFAULT_TANGENT_DEVELOPABLE,
        ]
    }

    /// Parses `helicoid`, `cone(r, h)`, `latitude-drift(polar, wobble, pitch, offset)`
    /// or `tangent-developable(radius, climb)`; bare names take default parameters.
    pub fn parse(text: &str) -> Result<Preset> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(open) => {
                let close = text
                    .strip_suffix(')')
                    .ok_or_else(|| Error::InvalidCurve(format!("unbalanced parentheses in {text:?}")))?;
                let args = close[open + 1..]
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidCurve(format!("bad parameter {a:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<f64>>>()?;
                (text[..open].trim(), Some(args))
            }
            None => (text, None),
        };
        let want = |n: usize, defaults: Preset| -> Result<Option<Vec<f64>>> {
            match &args {
                None => Ok(None),
                Some(a) if a.len() == n => Ok(Some(a.clone())),
                Some(a) => Err(Error::InvalidCurve(format!(
                    "{name} takes {n} parameters, got {} (default {defaults})",
                    a.len()
                ))),
            }
        };
        let preset = match name {
            "helicoid" => {
                if args.is_some() {
                    return Err(Error::InvalidCurve("helicoid takes no parameters".into()));
                }
                Preset::Helicoid
            }
            "cone" => match want(2, Preset::DEFAULT_CONE)? {
                None => Preset::DEFAULT_CONE,
                Some(a) => Preset::Cone { radius: a[0], height: a[1] },
            },
            "latitude-drift" => match want(4, Preset::DEFAULT_LATITUDE_DRIFT)? {
                None => Preset::DEFAULT_LATITUDE_DRIFT,
                Some(a) => Preset::LatitudeDrift { polar: a[0], wobble: a[1], pitch: a[2], offset: a[3] },
            },
            "tangent-developable" => match want(2, Preset::DEFAULT_TANGENT_DEVELOPABLE)? {
                None => Preset::DEFAULT_TANGENT_DEVELOPABLE,
                Some(a) => Preset::TangentDevelopable { radius: a[0], climb: a[1] },
            },
            other => return Err(Error::InvalidCurve(format!("unknown preset {other:?}"))),
        };
        preset.validate()?;
        Ok(preset)
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Preset::Helicoid => true,
            Preset::Cone { radius, height } => radius > 0.0 && height.is_finite(),
            Preset::LatitudeDrift { polar, wobble, pitch, offset } => {
                [polar, wobble, pitch, offset].iter().all(|v| v.is_finite())
            }
            Preset::TangentDevelopable { radius, climb } => radius > 0.0 && climb.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCurve(format!("parameters out of range for {self}")))
        }
    }

    /// Default analysis window, in arc length of the real indicatrix.
    pub fn analysis_window(&self) -> (f64, f64) {
        match self {
            Preset::Helicoid => (0.5, std::f64::consts::TAU),
            Preset::Cone { .. } => (0.5, 4.0),
            Preset::LatitudeDrift { .. } => (0.5, 5.0),
            Preset::TangentDevelopable { .. } => (0.3, 2.4),
        }
    }

    /// Raw parameter interval tabulated when the speed is not constant.
    fn table_window(&self) -> (f64, f64) {
        match self {
            Preset::LatitudeDrift { .. } => (-1.0, std::f64::consts::TAU + 1.0),
            _ => (-1.0, 4.0),
        }
    }

    fn jets(&self, u: f64) -> (JetVec3, JetVec3) {
        let t = Jet::variable(u);
        let zero = Jet::constant(0.0);
        match *self {
            Preset::Helicoid => {
                let (c, s) = (t.cos(), t.sin());
                ([c, s, zero], [-(t * s), t * c, zero])
            }
            Preset::Cone { radius, height } => {
                let n = 1.0 / radius.hypot(height);
                let e = [t.cos() * (radius * n), t.sin() * (radius * n), Jet::constant(height * n)];
                (e, [zero; 3])
            }
            Preset::LatitudeDrift { polar, wobble, pitch, offset } => {
                let theta = t.sin() * wobble + polar;
                let (st, ct) = (theta.sin(), theta.cos());
                let e = [st * t.cos(), st * t.sin(), ct];
                let c = [t.cos() * offset, t.sin() * offset, t * pitch];
                let e_star = jet_cross(&c, &e);
                (e, e_star)
            }
            Preset::TangentDevelopable { radius, climb } => {
                let k = [t.cos() * radius, t.sin() * radius, t * t * (0.5 * climb)];
                let dk = [-(t.sin() * radius), t.cos() * radius, t * climb];
                let e = jet_scale(&dk, jet_dot(&dk, &dk).sqrt().recip());
                let e_star = jet_cross(&k, &e);
                (e, e_star)
            }
        }
    }

    fn raw_constant_speed(&self) -> Option<f64> {
        match *self {
            Preset::Helicoid => Some(1.0),
            Preset::Cone { radius, height } => Some(radius / radius.hypot(height)),
            _ => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Preset::Helicoid => write!(f, "helicoid"),
            Preset::Cone { radius, height } => write!(f, "cone({radius},{height})"),
            Preset::LatitudeDrift { polar, wobble, pitch, offset } => {
                write!(f, "latitude-drift({polar},{wobble},{pitch},{offset})")
            }
            Preset::TangentDevelopable { radius, climb } => {
                write!(f, "tangent-developable({radius},{climb})")
            }
        }
    }
}

/// Tolerance on the unit-sphere conditions of sampled input rows.
pub const SAMPLE_SPHERE_TOL: f64 = 1e-9;
/// Fewest rows accepted in a sampled curve.
pub const MIN_SAMPLES: usize = 64;

/// A dual spherical curve interpolated from uniformly spaced samples.
///
/// Each of the six coordinates is a cubic spline; the interpolant is pulled
/// back onto the dual unit sphere by dual normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    splines: [CubicSpline; 6],
    domain: (f64, f64),
}

impl SampledCurve {
    /// Builds from rows `(u, e, e*)`; `u` must be uniform and increasing.
    pub fn from_rows(rows: &[(f64, Vector3<f64>, Vector3<f64>)]) -> Result<Self> {
        if rows.len() < MIN_SAMPLES {
            return Err(Error::InvalidCurve(format!(
                "{} samples given, at least {MIN_SAMPLES} required",
                rows.len()
            )));
        }
        let u0 = rows[0].0;
        let h = (rows[rows.len() - 1].0 - u0) / (rows.len() - 1) as f64;
        if !(h > 0.0) {
            return Err(Error::InvalidCurve("parameter must increase".into()));
        }
        for (i, (u, e, es)) in rows.iter().enumerate() {
            if (u - (u0 + h * i as f64)).abs() > 1e-9 * h.max(1.0) * (i as f64 + 1.0) {
                return Err(Error::InvalidCurve(format!("row {i}: parameter spacing is not uniform")));
            }
            if (e.norm_squared() - 1.0).abs() > SAMPLE_SPHERE_TOL || e.dot(es).abs() > SAMPLE_SPHERE_TOL {
                return Err(Error::InvalidCurve(format!("row {i}: sample is off the dual unit sphere")));
            }
        }
        let column = |k: usize| -> Vec<f64> {
            rows.iter().map(|(_, e, es)| if k < 3 { e[k] } else { es[k - 3] }).collect()
        };
        let splines = [
            CubicSpline::new(u0, h, column(0))?,
            CubicSpline::new(u0, h, column(1))?,
            CubicSpline::new(u0, h, column(2))?,
            CubicSpline::new(u0, h, column(3))?,
            CubicSpline::new(u0, h, column(4))?,
            CubicSpline::new(u0, h, column(5))?,
        ];
        let domain = splines[0].domain();
        Ok(SampledCurve { splines, domain })
    }

    /// Parses a whitespace- or comma-separated table with header
    /// `u ex ey ez esx esy esz`; lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::InvalidCurve("empty sample file".into()))?
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if header != ["u", "ex", "ey", "ez", "esx", "esy", "esz"] {
            return Err(Error::InvalidCurve(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let vals = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|_| Error::InvalidCurve(format!("data row {n}: not a number")))?;
            if vals.len() != 7 {
                return Err(Error::InvalidCurve(format!("data row {n}: expected 7 columns")));
            }
            rows.push((
                vals[0],
                Vector3::new(vals[1], vals[2], vals[3]),
                Vector3::new(vals[4], vals[5], vals[6]),
            ));
        }
        SampledCurve::from_rows(&rows)
    }

    fn jets(&self, u: f64) -> (JetVec3, JetVec3) {
        let raw: [Jet; 6] = std::array::from_fn(|k| self.splines[k].jet(u));
        let e = [raw[0], raw[1], raw[2]];
        let es = [raw[3], raw[4], raw[5]];
        // ẽ/‖ẽ‖ = e/n + ε(e*/n − e⟨e,e*⟩/n³)
        let inv = jet_dot(&e, &e).sqrt().recip();
        let along = jet_dot(&e, &es) * inv * inv * inv;
        (jet_scale(&e, inv), jet_sub(&jet_scale(&es, inv), &jet_scale(&e, along)))
    }
}

/// A curve before arc-length reparametrization.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum CurveSpec {
    Preset(Preset),
    Sampled(SampledCurve),
}

impl CurveSpec {
    pub fn name(&self) -> String {
        match self {
            CurveSpec::Preset(p) => p.to_string(),
            CurveSpec::Sampled(_) => "sampled".to_string(),
        }
    }

    fn jets(&self, u: f64) -> (JetVec3, JetVec3) {
        match self {
            CurveSpec::Preset(p) => p.jets(u),
            CurveSpec::Sampled(c) => c.jets(u),
        }
    }
}

impl DualCurve for CurveSpec {
    fn eval(&self, u: f64) -> Result<DualVec3> {
        Ok(self.jet(u, 1)?.value)
    }

    fn domain(&self) -> (f64, f64) {
        match self {
            CurveSpec::Preset(_) => (f64::NEG_INFINITY, f64::INFINITY),
            CurveSpec::Sampled(c) => c.domain,
        }
    }

    fn jet(&self, u: f64, order: usize) -> Result<CurveJet> {
        self.check_domain(u)?;
        let (e, es) = self.jets(u);
        Ok(CurveJet::from_jets(&e, &es, order.clamp(1, 3)))
    }

    fn constant_speed(&self) -> Option<f64> {
        match self {
            CurveSpec::Preset(p) => p.raw_constant_speed(),
            CurveSpec::Sampled(_) => None,
        }
    }
}

/// Cell width of the arc-length table, in the raw parameter.
const TABLE_CELL: f64 = 1.0 / 64.0;

#[derive(Debug, Clone, PartialEq)]
enum ArcMap {
    Linear { anchor: f64, speed: f64 },
    Table { u: Vec<f64>, s: Vec<f64>, speed: Vec<f64> },
}

/// `inner` reparametrized by arc length of its real indicatrix, measured
/// from a chosen anchor parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLength<C> {
    inner: C,
    map: ArcMap,
}

/// A curve ready for frame analysis.
pub type UnitSpeedCurve = ArcLength<CurveSpec>;

/// Reparametrizes a preset or sampled curve by arc length.
///
/// Presets measure arc length from raw parameter 0, sampled curves from their
/// first sample.
pub fn reparametrize_arclength(raw: CurveSpec) -> Result<UnitSpeedCurve> {
    let (window, anchor) = match &raw {
        CurveSpec::Preset(p) => (p.table_window(), 0.0),
        CurveSpec::Sampled(c) => (c.domain, c.domain.0),
    };
    ArcLength::new(raw, window, anchor)
}

impl<C: DualCurve> ArcLength<C> {
    /// Tabulates arc length over `window` (raw parameter) with `s(anchor) = 0`.
    ///
    /// Curves reporting a constant speed skip the table and cover their whole
    /// domain.
    pub fn new(inner: C, window: (f64, f64), anchor: f64) -> Result<Self> {
        if let Some(speed) = inner.constant_speed() {
            if !(speed > MIN_SPEED) {
                return Err(Error::SingularIndicatrix(anchor));
            }
            return Ok(ArcLength { inner, map: ArcMap::Linear { anchor, speed } });
        }
        let (lo, hi) = window;
        if !(hi > lo) || anchor < lo || anchor > hi {
            return Err(Error::InvalidCurve(format!(
                "arc-length window [{lo}, {hi}] must be nonempty and contain {anchor}"
            )));
        }
        let cells = ((hi - lo) / TABLE_CELL).ceil().max(1.0) as usize;
        let u: Vec<f64> = crate::study::linspace(lo, hi, cells + 1);
        let speed = u.iter().map(|&x| real_speed(&inner, x)).collect::<Result<Vec<f64>>>()?;
        let mut s = vec![0.0; cells + 1];
        for k in 0..cells {
            s[k + 1] = s[k] + cell_integral(&inner, u[k], speed[k], u[k + 1])?;
        }
        let mut curve = ArcLength { inner, map: ArcMap::Table { u, s, speed } };
        let shift = curve.s_of_u(anchor)?;
        if let ArcMap::Table { s, .. } = &mut curve.map {
            s.iter_mut().for_each(|v| *v -= shift);
        }
        Ok(curve)
    }

    pub fn inner(&self) -> &C {
        &self.inner
    }

    /// Arc length at raw parameter `u`.
    pub fn s_of_u(&self, u: f64) -> Result<f64> {
        match &self.map {
            ArcMap::Linear { anchor, speed } => Ok((u - anchor) * speed),
            ArcMap::Table { u: nodes, s, speed } => {
                let (lo, hi) = (nodes[0], nodes[nodes.len() - 1]);
                if !(u >= lo && u <= hi) {
                    return Err(Error::OutOfDomain { s: u, lo, hi });
                }
                let k = (nodes.partition_point(|&x| x <= u).max(1) - 1).min(nodes.len() - 2);
                Ok(s[k] + cell_integral(&self.inner, nodes[k], speed[k], u)?)
            }
        }
    }

    /// Raw parameter at arc length `s`, by Newton iteration inside a table cell.
    pub fn u_of_s(&self, s_target: f64) -> Result<f64> {
        match &self.map {
            ArcMap::Linear { anchor, speed } => Ok(anchor + s_target / speed),
            ArcMap::Table { u, s, speed } => {
                let (lo, hi) = (s[0], s[s.len() - 1]);
                if !(s_target >= lo && s_target <= hi) {
                    return Err(Error::OutOfDomain { s: s_target, lo, hi });
                }
                let k = (s.partition_point(|&x| x <= s_target).max(1) - 1).min(s.len() - 2);
                let (u0, u1) = (u[k], u[k + 1]);
                let mut x = u0 + (s_target - s[k]) / (s[k + 1] - s[k]) * (u1 - u0);
                for _ in 0..30 {
                    let residual = s[k] + cell_integral(&self.inner, u0, speed[k], x)? - s_target;
                    let step = residual / real_speed(&self.inner, x)?;
                    x = (x - step).clamp(u0, u1);
                    if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                        break;
                    }
                }
                Ok(x)
            }
        }
    }
}

fn real_speed<C: DualCurve + ?Sized>(curve: &C, u: f64) -> Result<f64> {
    let speed = curve.jet(u, 1)?.d1.re.norm();
    if speed < MIN_SPEED {
        return Err(Error::SingularIndicatrix(u));
    }
    Ok(speed)
}

/// Simpson's rule with two subintervals on `[a, b]`, given the speed at `a`.
fn cell_integral<C: DualCurve + ?Sized>(curve: &C, a: f64, speed_a: f64, b: f64) -> Result<f64> {
    if b == a {
        return Ok(0.0);
    }
    let mid = real_speed(curve, 0.5 * (a + b))?;
    let end = real_speed(curve, b)?;
    Ok((b - a) / 6.0 * (speed_a + 4.0 * mid + end))
}

impl<C: DualCurve> DualCurve for ArcLength<C> {
    fn eval(&self, s: f64) -> Result<DualVec3> {
        self.inner.eval(self.u_of_s(s)?)
    }

    fn domain(&self) -> (f64, f64) {
        match &self.map {
            ArcMap::Linear { anchor, speed } => {
                let (lo, hi) = self.inner.domain();
                ((lo - anchor) * speed, (hi - anchor) * speed)
            }
            ArcMap::Table { s, .. } => (s[0], s[s.len() - 1]),
        }
    }

    /// Chain rule through `u(s)`, with `du/ds = 1/σ(u)` taken from the inner
    /// derivatives rather than from the quadrature table.
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let order = order.clamp(1, 3);
        self.check_domain(s)?;
        let u = self.u_of_s(s)?;
        let inner = self.inner.jet(u, order)?;
        let (u1, u2, u3) = match &self.map {
            ArcMap::Linear { speed, .. } => (1.0 / speed, 0.0, 0.0),
            ArcMap::Table { .. } => {
                let (e1, e2, e3) = (inner.d1.re, inner.d2.re, inner.d3.re);
                let sigma = e1.norm();
                if sigma < MIN_SPEED {
                    return Err(Error::SingularIndicatrix(u));
                }
                let sigma_u = e1.dot(&e2) / sigma;
                let sigma_uu = (e2.norm_squared() + e1.dot(&e3)) / sigma - sigma_u * sigma_u / sigma;
                let s2 = sigma * sigma;
                (
                    1.0 / sigma,
                    -sigma_u / (s2 * sigma),
                    -sigma_uu / (s2 * s2) + 3.0 * sigma_u * sigma_u / (s2 * s2 * sigma),
                )
            }
        };
        let mut out = CurveJet {
            order,
            value: inner.value,
            d1: inner.d1 * u1,
            d2: DualVec3::zeros(),
            d3: DualVec3::zeros(),
        };
        if order >= 2 {
            out.d2 = inner.d2 * (u1 * u1) + inner.d1 * u2;
        }
        if order >= 3 {
            out.d3 = inner.d3 * (u1 * u1 * u1) + inner.d2 * (3.0 * u1 * u2) + inner.d1 * u3;
        }
        Ok(out)
    }

    fn constant_speed(&self) -> Option<f64> {
        Some(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_parsing() {
        assert_eq!(Preset::parse("helicoid").unwrap(), Preset::Helicoid);
        assert_eq!(Preset::parse(" cone( 0.6 , 0.8 ) ").unwrap(), Preset::Cone { radius: 0.6, height: 0.8 });
        assert_eq!(Preset::parse("latitude-drift").unwrap(), Preset::DEFAULT_LATITUDE_DRIFT);
        assert!(Preset::parse("cone(1)").is_err());
        assert!(Preset::parse("cone(-1, 0)").is_err());
        assert!(Preset::parse("torus").is_err());
        assert!(Preset::parse("helicoid(2)").is_err());
        for p in Preset::standard_suite() {
            assert_eq!(Preset::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn presets_lie_on_dual_sphere() {
        for p in Preset::standard_suite() {
            let c = CurveSpec::Preset(p);
            for k in 0..20 {
                let v = c.eval(-0.5 + 0.37 * k as f64).unwrap();
                assert!(v.is_dual_unit(1e-14), "{p} at {k}");
            }
        }
    }

    #[test]
    fn analytic_jets_match_finite_differences() {
        for p in Preset::standard_suite() {
            let c = CurveSpec::Preset(p);
            let fd = FnCurve::new(|u| c.eval(u).unwrap(), (-10.0, 10.0));
            for u in [0.3, 1.7, 2.9] {
                let a = c.jet(u, 3).unwrap();
                let b = fd.jet(u, 3).unwrap();
                for (x, y, tol) in [(a.d1, b.d1, 1e-10), (a.d2, b.d2, 1e-8), (a.d3, b.d3, 1e-5)] {
                    let (re, du) = x.max_abs_diff(&y);
                    assert!(re < tol && du < tol, "{p} u={u}: {re} {du}");
                }
            }
        }
    }

    #[test]
    fn doubled_circle_has_half_speed_parameter() {
        let circle = FnCurve::new(
            |u: f64| DualVec3::real(Vector3::new((2.0 * u).cos(), (2.0 * u).sin(), 0.0)),
            (-1.0, 4.0),
        );
        let unit = ArcLength::new(circle, (-0.9, 3.9), 0.0).unwrap();
        for s in [0.0, 0.8, 3.3, 7.1] {
            let u = unit.u_of_s(s).unwrap();
            assert!((u - s / 2.0).abs() < 1e-10, "s={s}: u={u}");
            assert!((unit.s_of_u(u).unwrap() - s).abs() < 1e-13);
        }
    }

    #[test]
    fn cone_arclength_is_radius_times_angle() {
        let unit = reparametrize_arclength(CurveSpec::Preset(Preset::DEFAULT_CONE)).unwrap();
        assert_eq!(unit.s_of_u(2.5).unwrap(), 0.8 * 2.5);
        let helicoid = reparametrize_arclength(CurveSpec::Preset(Preset::Helicoid)).unwrap();
        assert_eq!(helicoid.u_of_s(1.234).unwrap(), 1.234);
    }

    #[test]
    fn reparametrized_curve_has_unit_speed() {
        for p in [Preset::DEFAULT_LATITUDE_DRIFT, Preset::DEFAULT_TANGENT_DEVELOPABLE] {
            let unit = reparametrize_arclength(CurveSpec::Preset(p)).unwrap();
            let (lo, hi) = p.analysis_window();
            for k in 0..=16 {
                let s = lo + (hi - lo) * k as f64 / 16.0;
                let analytic = unit.jet(s, 1).unwrap().d1.re.norm();
                let numeric = derivatives(&unit, s, 1).unwrap().d1.re.norm();
                assert!((analytic - 1.0).abs() < 1e-12, "{p} s={s}");
                assert!((numeric - 1.0).abs() < 1e-8, "{p} s={s}: {numeric}");
            }
        }
    }

    #[test]
    fn chain_rule_matches_finite_differences() {
        let unit = reparametrize_arclength(CurveSpec::Preset(Preset::DEFAULT_LATITUDE_DRIFT)).unwrap();
        let s = 2.2;
        let a = unit.jet(s, 3).unwrap();
        let b = derivatives(&unit, s, 3).unwrap();
        assert!(a.d2.max_abs_diff(&b.d2).0 < 1e-7);
        assert!(a.d2.max_abs_diff(&b.d2).1 < 1e-7);
        assert!(a.d3.max_abs_diff(&b.d3).0 < 1e-4);
    }

    #[test]
    fn stalled_indicatrix_is_rejected() {
        let still = FnCurve::new(|_| DualVec3::real(Vector3::new(0.0, 0.0, 1.0)), (-2.0, 2.0));
        assert!(matches!(ArcLength::new(still, (-1.0, 1.0), 0.0), Err(Error::SingularIndicatrix(_))));
    }

    #[test]
    fn out_of_domain_is_reported() {
        let unit = reparametrize_arclength(CurveSpec::Preset(Preset::DEFAULT_LATITUDE_DRIFT)).unwrap();
        assert!(matches!(unit.eval(100.0), Err(Error::OutOfDomain { .. })));
        let short = FnCurve::new(|_| DualVec3::real(Vector3::new(1.0, 0.0, 0.0)), (0.0, 1.0));
        assert!(matches!(derivatives(&short, 0.001, 1), Err(Error::OutOfDomain { .. })));
    }

    fn sampled_helicoid(n: usize, lo: f64, hi: f64) -> String {
        let mut text = String::from("u ex ey ez esx esy esz\n");
        for i in 0..n {
            let u = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let (s, c) = u.sin_cos();
            text.push_str(&format!("{u} {c} {s} 0 {} {} 0\n", -u * s, u * c));
        }
        text
    }

    #[test]
    fn sampled_curve_follows_source() {
        let curve = SampledCurve::parse(&sampled_helicoid(200, 0.0, 6.0)).unwrap();
        let spec = CurveSpec::Sampled(curve);
        let exact = CurveSpec::Preset(Preset::Helicoid);
        for u in [0.5, 2.71, 5.5] {
            let (re, du) = spec.eval(u).unwrap().max_abs_diff(&exact.eval(u).unwrap());
            assert!(re < 1e-7 && du < 1e-6, "{u}: {re} {du}");
            assert!(spec.eval(u).unwrap().is_dual_unit(1e-14));
        }
        let unit = reparametrize_arclength(spec).unwrap();
        assert!((unit.u_of_s(3.0).unwrap() - 3.0).abs() < 1e-7);
    }

    #[test]
    fn sampled_curve_rejections() {
        assert!(SampledCurve::parse(&sampled_helicoid(40, 0.0, 6.0)).is_err());
        let off_sphere = sampled_helicoid(80, 0.0, 6.0).replacen("\n0 1 0 0", "\n0 1.1 0 0", 1);
        assert!(matches!(SampledCurve::parse(&off_sphere), Err(Error::InvalidCurve(_))));
        assert!(SampledCurve::parse("u ex ey\n1 2 3").is_err());
    }
}
