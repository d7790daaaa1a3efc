//! Discrepancy ledger: every closed-form statement about the Smarandache
//! curves, measured against the oracle on a set of curves.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt::Write as _;

use crate::curve::{reparametrize_arclength, CurveSpec, DualCurve, Preset, UnitSpeedCurve};
use crate::dual::Dual;
use crate::error::Result;
use crate::frame::{darboux_frame, gamma_bar_derivative, radius_of_curvature, spherical_radius, DarbouxFrame};
use crate::linalg::{dual_angle, DualVec3};
use crate::oracle::{nan_max, DerivedOracle, Measure, ResidualReport, Verdict, ALGEBRAIC_TOL, TOL_DU, TOL_RE};
use crate::smarandache::{
    bertrand_offset_params, closed_form_curvature, construct, curvature_with, darboux_vector_closed, derived_radii,
    derived_speed, developability_condition, orientation, printed_derivative_matrix, printed_radius,
    printed_spherical_radius, transformed_frame, BaseDerivatives, ConditionVariant, Formula, SmarandacheKind,
    SmarandacheCurve, DEVELOPABLE_TOL,
};
use crate::study::linspace;

/// Samples closer than this to the edge-binormal pole are skipped.
pub const POLE_EXCLUSION: f64 = 1e-6;

/// How a claim's verdict affects the verification exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gate {
    /// Must be verified for verification to pass.
    MustVerify,
    /// Expected to fail; reported only.
    SuspectList,
    /// Reported only.
    Informational,
}

impl Gate {
    pub fn label(self) -> &'static str {
        match self {
            Gate::MustVerify => "must-verify",
            Gate::SuspectList => "suspect-list",
            Gate::Informational => "informational",
        }
    }
}

/// Static description of one claim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub gate: Gate,
}

macro_rules! claims {
    ($($id:literal, $gate:ident, $statement:literal;)*) => {
        /// Every claim in ledger order.
        pub const CLAIMS: &[Claim] = &[$(Claim { id: $id, statement: $statement, gate: Gate::$gate }),*];
    };
}

claims! {
    "curvature-zero", MustVerify, "at γ̄ = 0: γ̄₁ = 0, γ̄₂ = 1, γ̄₃ = 1, γ̄₄ = 1/√2";
    "et-on-sphere", Informational, "α̃₁ = (ẽ+t̃)/√2 is a dual unit vector";
    "et-speed", Informational, "ds̄₁/ds̄ = √((2+γ̄²)/2)";
    "et-frame-matrix", MustVerify, "(ẽ₁,t̃₁,g̃₁) = A₁(ẽ,t̃,g̃), A₁ rows (1,1,0)/√2, (−1,1,γ̄)/√(2+γ̄²), (γ̄,−γ̄,2)/√(4+2γ̄²)";
    "et-frame-orthogonal", MustVerify, "det A₁ = 1, A₁A₁ᵗ = I";
    "et-frame-derivatives", Informational, "d(ẽ₁,t̃₁,g̃₁)/ds̄₁ as stated";
    "et-curvature", MustVerify, "γ̄₁ = (γ̄³+2γ̄′+2γ̄)/(2+γ̄²)^(3/2)";
    "et-darboux-vector", Informational, "d̃₁ = [(2γ̄³+2γ̄′+4γ̄)ẽ + 2γ̄′t̃ + (2γ̄²+4)g̃]/(√2(2+γ̄²)^(3/2))";
    "et-developable", Informational, "δ₁ = (3δγ²+2δ+2δ′)/(2+γ²)^(3/2) − 3δγ(γ³+2γ′+2γ)/(2+γ²)^(5/2)";
    "et-radius", SuspectList, "R̄₁ = (2+γ̄²)^(3/2)/√(2γ̄⁶+14γ̄⁴+12γ̄²+4γ̄³γ̄′+8γ̄γ̄′+4γ̄′²)";
    "et-spherical-radius", Informational, "ρ̄₁ = arcsin R̄₁ with the stated R̄₁";
    "et-radius-identity", MustVerify, "R̄₁√(1+γ̄₁²) = 1, sin ρ̄₁ = R̄₁";
    "eg-on-sphere", Informational, "α̃₂ = (ẽ+g̃)/√2 is a dual unit vector";
    "eg-speed", Informational, "ds̄₂/ds̄ = (1−γ̄)/√2";
    "eg-frame-matrix", MustVerify, "A₂ rows (1,0,1)/√2, (0,1,0), (−1,0,1)/√2";
    "eg-frame-orthogonal", MustVerify, "det A₂ = 1, A₂A₂ᵗ = I";
    "eg-bertrand-offset", MustVerify, "angle(ẽ, ẽ₂) = π/4 + ε0";
    "eg-frame-derivatives", SuspectList, "d(ẽ₂,t̃₂,g̃₂)/ds̄₂ rows (0,1,0), (−√2,0,√2γ̄/(1−γ̄)), (0,−(1+γ̄)/(1−γ̄),0)";
    "eg-curvature", MustVerify, "γ̄₂ = (1+γ̄)/(1−γ̄)";
    "eg-darboux-vector", Informational, "d̃₂ = √2γ̄/(1−γ̄) ẽ + √2/(1−γ̄) g̃";
    "eg-developable", SuspectList, "(1−γ²)δ₂ − 2δ = 0";
    "eg-developable-rederived", Informational, "(1−γ)²δ₂ − 2δ = 0";
    "eg-radius", Informational, "R̄₂ = (1−γ̄)/√(2γ̄²+2)";
    "eg-spherical-radius", Informational, "Re ρ̄₂ = arcsin((1−γ)/√(2+2γ²))";
    "eg-spherical-radius-dual", Informational, "dual part of ρ̄₂ (uses an undefined symbol)";
    "eg-radius-identity", MustVerify, "R̄₂√(1+γ̄₂²) = 1, sin ρ̄₂ = R̄₂";
    "tg-on-sphere", Informational, "α̃₃ = (t̃+g̃)/√2 is a dual unit vector";
    "tg-speed", Informational, "ds̄₃/ds̄ = √((1+2γ̄²)/2)";
    "tg-frame-matrix", MustVerify, "A₃ rows (0,1,1)/√2, (−1,−γ̄,γ̄)/√(1+2γ̄²), (2γ̄,−1,1)/√(2+4γ̄²)";
    "tg-frame-orthogonal", MustVerify, "det A₃ = 1, A₃A₃ᵗ = I";
    "tg-frame-derivatives", Informational, "d(ẽ₃,t̃₃,g̃₃)/ds̄₃ as stated";
    "tg-curvature", MustVerify, "γ̄₃ = (4√2γ̄γ̄′+4√2γ̄²+2√2)/(2+4γ̄²)^(3/2)";
    "tg-curvature-rederived", Informational, "γ̄₃ = (1+2γ̄′+2γ̄²)/(1+2γ̄²)^(3/2)";
    "tg-darboux-vector", SuspectList, "d̃₃ = 2γ̄/√(2+4γ̄²) ẽ + 4γ̄γ̄′/(2+4γ̄²)^(3/2) t̃ + (4γ̄γ̄′+8γ̄²+4)/(2+4γ̄²)^(3/2) g̃";
    "tg-darboux-vector-rederived", Informational, "d̃₃ = [2γ̄(1+2γ̄²)ẽ + 2γ̄′t̃ + (2+2γ̄′+4γ̄²)g̃]/(√2(1+2γ̄²)^(3/2))";
    "tg-developable", SuspectList, "δ₁ = (4√2δγ′+4√2γδ′+8√2δγ)/(2+γ²)^(3/2) + 12δγ(4√2γγ′+4√2γ²+2√2)/(2+γ²)^(5/2)";
    "tg-developable-corrected", SuspectList, "as stated with (2+γ²) replaced by (2+4γ²)";
    "tg-developable-rederived", Informational, "δ₃ = (2δ′+4γδ)/(1+2γ²)^(3/2) − 6γδ(1+2γ′+2γ²)/(1+2γ²)^(5/2)";
    "tg-radius", Informational, "R̄₃ = (2+4γ̄²)^(3/2)/√((2+4γ̄²)³ + (4√2γ̄γ̄′+4√2γ̄²+2√2)²)";
    "tg-spherical-radius", Informational, "ρ̄₃ = arcsin R̄₃ with the stated R̄₃";
    "tg-radius-identity", MustVerify, "R̄₃√(1+γ̄₃²) = 1, sin ρ̄₃ = R̄₃";
    "etg-on-sphere", Informational, "α̃₄ = (ẽ+t̃+g̃)/√3 is a dual unit vector";
    "etg-speed", Informational, "ds̄₄/ds̄ = √((2γ̄²−2γ̄+2)/3)";
    "etg-frame-matrix", MustVerify, "A₄ rows (1,1,1)/√3, (−1,1−γ̄,γ̄)/√(2γ̄²−2γ̄+2), (2γ̄−1,−(γ̄+1),2−γ̄)/(√6√(γ̄²−γ̄+1))";
    "etg-frame-orthogonal", MustVerify, "det A₄ = 1, A₄A₄ᵗ = I";
    "etg-frame-derivatives", SuspectList, "d(ẽ₄,t̃₄,g̃₄)/ds̄₄ as stated";
    "etg-curvature", MustVerify, "γ̄₄ = (3γ̄′+2γ̄³+2)/(2√2(γ̄²−γ̄+1)^(3/2))";
    "etg-darboux-vector", SuspectList, "d̃₄ = [(3γ̄+6γ̄³−6γ̄²+6γ̄)ẽ + 3γ̄t̃ + (3γ̄+6γ̄²−6γ̄+6)g̃]/(2√6(γ̄²−γ̄+1)^(3/2))";
    "etg-darboux-vector-rederived", Informational, "d̃₄ = [(3γ̄′+6γ̄³−6γ̄²+6γ̄)ẽ + 3γ̄′t̃ + (3γ̄′+6γ̄²−6γ̄+6)g̃]/(2√6(γ̄²−γ̄+1)^(3/2))";
    "etg-developable", Informational, "δ₄ = (6γ²δ+3δ′)/(2√2Q^(3/2)) − 3δ(2γ−1)(3γ′+2γ³+2)/(4√2Q^(5/2)), Q = γ²−γ+1";
    "etg-radius", SuspectList, "R̄₄ = 2√2Q^(3/2)/√(8Q³ + (3γ̄+2γ̄³+2)²), Q = γ̄²−γ̄+1";
    "etg-spherical-radius", Informational, "ρ̄₄ = arcsin R̄₄ with the stated R̄₄";
    "etg-radius-identity", MustVerify, "R̄₄√(1+γ̄₄²) = 1, sin ρ̄₄ = R̄₄";
}

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

/// One ledger line: a claim measured on one curve.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerRow {
    pub claim: &'static Claim,
    pub curve: String,
    pub report: ResidualReport,
    pub note: String,
}

impl LedgerRow {
    /// True unless a must-verify claim failed.
    pub fn passes_gate(&self) -> bool {
        self.claim.gate != Gate::MustVerify || self.report.verdict == Verdict::Verified
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ledger {
    pub rows: Vec<LedgerRow>,
}

pub const LEDGER_HEADER: &str = "claim\tcurve\tsamples\tmax_re_residual\tmax_du_residual\tverdict\tgate\tstatement\tnote";

fn fmt_residual(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.3e}")
    }
}

impl Ledger {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(LEDGER_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.claim.id,
                r.curve,
                r.report.samples,
                fmt_residual(r.report.max_re),
                fmt_residual(r.report.max_du),
                r.report.verdict,
                r.claim.gate.label(),
                r.claim.statement,
                if r.note.is_empty() { "-" } else { &r.note },
            );
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(LedgerRow::passes_gate)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LedgerRow> {
        self.rows.iter().filter(|r| !r.passes_gate())
    }

    pub fn rows_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a LedgerRow> {
        self.rows.iter().filter(move |r| r.claim.id == id)
    }

    fn sort(&mut self, curve_order: &[String]) {
        let pos = |id: &str| CLAIMS.iter().position(|c| c.id == id).unwrap_or(usize::MAX);
        let cpos = |c: &str| curve_order.iter().position(|x| x == c).unwrap_or(usize::MAX);
        self.rows.sort_by_key(|r| (pos(r.claim.id), cpos(&r.curve)));
    }
}

/// A curve to verify on, with the arc-length window its samples come from.
pub struct Target {
    pub name: String,
    pub curve: UnitSpeedCurve,
    pub window: (f64, f64),
}

impl Target {
    pub fn preset(p: Preset) -> Result<Target> {
        Ok(Target { name: p.to_string(), curve: reparametrize_arclength(CurveSpec::Preset(p))?, window: p.analysis_window() })
    }

    /// Uses the whole curve minus a margin for the oracle's stencils.
    pub fn whole(name: &str, curve: UnitSpeedCurve) -> Result<Target> {
        const MARGIN: f64 = 0.1;
        let (lo, hi) = curve.domain();
        if !(hi - lo > 4.0 * MARGIN) {
            return Err(crate::error::Error::InvalidCurve(format!("curve {name} is too short to verify")));
        }
        Ok(Target { name: name.into(), curve, window: (lo + MARGIN, hi - MARGIN) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerConfig {
    pub samples: usize,
    pub tol_re: f64,
    pub tol_du: f64,
}

impl Default for LedgerConfig {
    fn default() -> Self {
        LedgerConfig { samples: 24, tol_re: TOL_RE, tol_du: TOL_DU }
    }
}

/// Distance of the sample grid from the window ends.
const SAMPLE_INSET: f64 = 0.05;

/// Sample positions used for a window.
pub fn sample_points(window: (f64, f64), count: usize) -> Vec<f64> {
    linspace(window.0 + SAMPLE_INSET, window.1 - SAMPLE_INSET, count.max(2))
}

struct BaseSample {
    s: f64,
    frame: DarbouxFrame,
    gamma_prime: Dual,
}

/// Running maxima for one claim on one curve.
struct Acc {
    re: f64,
    du: f64,
    samples: usize,
    errors: usize,
}

impl Acc {
    fn new() -> Acc {
        Acc { re: 0.0, du: 0.0, samples: 0, errors: 0 }
    }

    fn push(&mut self, r: Result<(f64, f64)>) {
        self.samples += 1;
        match r {
            Ok((re, du)) => {
                self.re = nan_max(self.re, re);
                self.du = nan_max(self.du, du);
            }
            Err(_) => {
                self.errors += 1;
                self.re = f64::NAN;
                self.du = f64::NAN;
            }
        }
    }
}

struct RowSink<'a> {
    curve: &'a str,
    rows: Vec<LedgerRow>,
}

impl RowSink<'_> {
    fn emit(&mut self, id: &str, acc: Acc, tol: (f64, f64), note: String) {
        let claim = claim(id).unwrap_or_else(|| panic!("claim {id} missing from the catalog"));
        let mut report = ResidualReport::from_residuals(id, acc.samples, acc.re, acc.du, tol.0, tol.1);
        let mut note = note;
        if acc.errors > 0 {
            report.verdict = Verdict::Suspect;
            push_note(&mut note, &format!("{} samples failed to evaluate", acc.errors));
        }
        self.rows.push(LedgerRow { claim, curve: self.curve.to_string(), report, note });
    }

    fn emit_verdict(&mut self, id: &str, verdict: Verdict, note: String) {
        let claim = claim(id).unwrap_or_else(|| panic!("claim {id} missing from the catalog"));
        self.rows.push(LedgerRow {
            claim,
            curve: self.curve.to_string(),
            report: ResidualReport::with_verdict(id, verdict),
            note,
        });
    }
}

fn push_note(note: &mut String, text: &str) {
    if !note.is_empty() {
        note.push_str("; ");
    }
    note.push_str(text);
}

fn id(kind: SmarandacheKind, suffix: &str) -> String {
    format!("{}-{suffix}", kind.label())
}

/// Claims that do not depend on a curve.
fn constant_rows() -> Vec<LedgerRow> {
    let want = [0.0, 1.0, 1.0, FRAC_1_SQRT_2];
    let mut acc = Acc::new();
    for (kind, w) in SmarandacheKind::ALL.into_iter().zip(want) {
        acc.push(closed_form_curvature(kind, Dual::ZERO, Dual::ZERO).map(|g| g.residual(&Dual::real(w))));
    }
    let mut sink = RowSink { curve: "-", rows: Vec::new() };
    sink.emit("curvature-zero", acc, (0.0, 0.0), "exact equality required".into());
    sink.rows
}

fn curve_rows(target: &Target, config: &LedgerConfig) -> Result<Vec<LedgerRow>> {
    let curve = &target.curve;
    let tol = (config.tol_re, config.tol_du);
    let alg = (ALGEBRAIC_TOL, ALGEBRAIC_TOL);
    let base: Vec<BaseSample> = sample_points(target.window, config.samples)
        .into_iter()
        .map(|s| Ok(BaseSample { s, frame: darboux_frame(curve, s)?, gamma_prime: gamma_bar_derivative(curve, s)? }))
        .collect::<Result<_>>()?;
    let max_dist = base.iter().fold(0.0f64, |m, b| m.max(b.frame.dist_param.abs()));
    let mut sink = RowSink { curve: &target.name, rows: Vec::new() };

    for kind in SmarandacheKind::ALL {
        let oracle = DerivedOracle::new(curve, kind, target.window)?;
        let derived = SmarandacheCurve::new(curve, kind);
        let mut on_sphere = Acc::new();
        let mut speed = Acc::new();
        let mut matrix = Acc::new();
        let mut orth = Acc::new();
        let mut derivs = Acc::new();
        let mut curv = Acc::new();
        let mut curv_re = Acc::new();
        let mut dvec = Acc::new();
        let mut dvec_re = Acc::new();
        let mut radius = Acc::new();
        let mut sph = Acc::new();
        let mut identity = Acc::new();
        let mut offset = Acc::new();
        let variants: &[(&str, ConditionVariant)] = match kind {
            SmarandacheKind::EG => &[("developable", ConditionVariant::Printed), ("developable-rederived", ConditionVariant::Rederived)],
            SmarandacheKind::TG => &[
                ("developable", ConditionVariant::Printed),
                ("developable-corrected", ConditionVariant::DenominatorCorrected),
                ("developable-rederived", ConditionVariant::Rederived),
            ],
            _ => &[("developable", ConditionVariant::Printed)],
        };
        let mut develop: Vec<Acc> = variants.iter().map(|_| Acc::new()).collect();
        let mut derived_dist = 0.0f64;
        let mut excluded = 0usize;
        let mut flipped = 0usize;

        for b in &base {
            let (g, gp, f) = (b.frame.gamma_bar, b.gamma_prime, &b.frame);
            if kind == SmarandacheKind::EG && (1.0 - g.re).abs() <= POLE_EXCLUSION {
                excluded += 1;
                continue;
            }
            if orientation(kind, g) < 0.0 {
                flipped += 1;
            }
            let basis = f.basis();
            let point = construct(kind, f);
            on_sphere.push(point.norm().map(|n| n.residual(&Dual::ONE)));
            speed.push((|| {
                let sigma = derived.jet(b.s, 1)?.d1.norm()?.checked_div(f.speed)?;
                let want = derived_speed(kind, g)? * orientation(kind, g);
                Ok(sigma.residual(&want))
            })());
            let aligned = oracle.aligned_frame(b.s, g);
            let gamma_oracle = aligned.as_ref().map(|a| a.gamma_bar).map_err(Clone::clone);
            matrix.push((|| {
                let a = aligned.clone()?;
                Ok(transformed_frame(kind, g)?.combine_rows(&basis).residual(&a.basis()))
            })());
            orth.push(transformed_frame(kind, g).map(|m| m.orthogonality_residual()));
            derivs.push((|| {
                let printed = printed_derivative_matrix(kind, g, gp)?.combine_rows(&basis);
                Ok(printed.residual(&oracle.aligned_frame_derivatives(b.s, g)?))
            })());
            curv.push((|| Ok(closed_form_curvature(kind, g, gp)?.residual(&gamma_oracle.clone()?)))());
            if kind == SmarandacheKind::TG {
                curv_re.push((|| Ok(curvature_with(kind, g, gp, Formula::Rederived)?.residual(&gamma_oracle.clone()?)))());
            }
            let d_oracle = oracle.darboux_vector(b.s, g);
            dvec.push((|| Ok(darboux_vector_closed(kind, g, gp, f, Formula::Printed)?.residual(&d_oracle.clone()?)))());
            if matches!(kind, SmarandacheKind::TG | SmarandacheKind::ETG) {
                dvec_re.push((|| Ok(darboux_vector_closed(kind, g, gp, f, Formula::Rederived)?.residual(&d_oracle.clone()?)))());
            }
            radius.push((|| Ok(printed_radius(kind, g, gp)?.residual(&radius_of_curvature(gamma_oracle.clone()?))))());
            sph.push((|| {
                let want = spherical_radius(gamma_oracle.clone()?);
                let (re, du) = printed_spherical_radius(kind, g, gp)?;
                Ok(((re - want.re).abs(), du.map_or(0.0, |d| (d - want.du).abs())))
            })());
            identity.push((|| {
                let (r, rho) = derived_radii(kind, g, gp, Formula::Printed)?;
                let gi = closed_form_curvature(kind, g, gp)?;
                let a = (r * (1.0 + gi.square()).sqrt()?).residual(&Dual::ONE);
                let b = rho.sin().residual(&r);
                Ok((a.0.max(b.0), a.1.max(b.1)))
            })());
            if kind == SmarandacheKind::EG {
                offset.push((|| {
                    let a = bertrand_offset_params(curve, b.s)?;
                    let direct = dual_angle(&f.e, &point)?;
                    let t_same = f.t.residual(&transformed_frame(kind, g)?.combine_rows(&basis)[1]);
                    Ok(((a.theta - FRAC_PI_4).abs().max((direct.theta - FRAC_PI_4).abs()).max(t_same.0), a.theta_star.abs().max(direct.theta_star.abs()).max(t_same.1)))
                })());
            }
            if max_dist <= DEVELOPABLE_TOL {
                let frame_i = oracle.frame(b.s);
                if let Ok(fi) = &frame_i {
                    derived_dist = derived_dist.max(fi.dist_param.abs());
                }
                let data = BaseDerivatives {
                    gamma: g.re,
                    delta: g.du,
                    gamma_prime: gp.re,
                    delta_prime: gp.du,
                    dist_param: f.dist_param,
                };
                for ((_, variant), acc) in variants.iter().zip(&mut develop) {
                    acc.push((|| {
                        let delta_i = gamma_oracle.clone()?.du;
                        Ok((0.0, developability_condition(kind, *variant, &data, delta_i)?.abs()))
                    })());
                }
            }
        }

        let mut common = String::new();
        if excluded > 0 {
            push_note(&mut common, &format!("{excluded} samples within {POLE_EXCLUSION:e} of the pole excluded"));
        }
        if flipped > 0 {
            push_note(&mut common, &format!("orientation reversed at {flipped} samples with γ > 1"));
        }
        let note = |extra: &str| {
            let mut n = common.clone();
            if !extra.is_empty() {
                push_note(&mut n, extra);
            }
            n
        };
        sink.emit(&id(kind, "on-sphere"), on_sphere, alg, note(""));
        sink.emit(&id(kind, "speed"), speed, tol, note(""));
        sink.emit(&id(kind, "frame-matrix"), matrix, tol, note(""));
        sink.emit(&id(kind, "frame-orthogonal"), orth, alg, note(""));
        if kind == SmarandacheKind::EG {
            sink.emit("eg-bertrand-offset", offset, alg, note("also checks t̃₂ = t̃"));
        }
        sink.emit(&id(kind, "frame-derivatives"), derivs, tol, note(""));
        sink.emit(&id(kind, "curvature"), curv, tol, note(""));
        if kind == SmarandacheKind::TG {
            sink.emit("tg-curvature-rederived", curv_re, tol, note(""));
        }
        sink.emit(&id(kind, "darboux-vector"), dvec, tol, note(""));
        if matches!(kind, SmarandacheKind::TG | SmarandacheKind::ETG) {
            sink.emit(&id(kind, "darboux-vector-rederived"), dvec_re, tol, note(""));
        }
        for ((suffix, _), acc) in variants.iter().zip(develop) {
            let cid = id(kind, suffix);
            if max_dist > DEVELOPABLE_TOL {
                sink.emit_verdict(&cid, Verdict::HypothesisNotMet, format!("base max |Δ| = {max_dist:.3e}"));
            } else {
                let extra = format!("residual at δᵢ = Im γ̄ᵢ (oracle); oracle max |Δᵢ| = {derived_dist:.3e}");
                sink.emit(&cid, acc, tol, note(&extra));
            }
        }
        sink.emit(&id(kind, "radius"), radius, tol, note(""));
        let sph_note = if kind == SmarandacheKind::EG { "real part only" } else { "" };
        sink.emit(&id(kind, "spherical-radius"), sph, tol, note(sph_note));
        if kind == SmarandacheKind::EG {
            sink.emit_verdict("eg-spherical-radius-dual", Verdict::OutOfScope, "not evaluable as stated".into());
        }
        sink.emit(&id(kind, "radius-identity"), identity, alg, note(""));
    }
    Ok(sink.rows)
}

/// Measures every claim on every target.
pub fn build_ledger(targets: &[Target], config: &LedgerConfig) -> Result<Ledger> {
    let mut ledger = Ledger { rows: constant_rows() };
    for t in targets {
        ledger.rows.extend(curve_rows(t, config)?);
    }
    let order: Vec<String> = std::iter::once("-".to_string()).chain(targets.iter().map(|t| t.name.clone())).collect();
    ledger.sort(&order);
    Ok(ledger)
}

/// The ledger over the standard preset suite.
pub fn preset_ledger(config: &LedgerConfig) -> Result<Ledger> {
    let targets = Preset::standard_suite().into_iter().map(Target::preset).collect::<Result<Vec<_>>>()?;
    build_ledger(&targets, config)
}

/// Closed-form and oracle values of one Smarandache curve at one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct KindSample {
    pub s: f64,
    pub regular: bool,
    pub point: DualVec3,
    pub gamma_closed: Option<Dual>,
    pub gamma_oracle: Option<Dual>,
    pub radius: Option<Dual>,
    pub rho: Option<Dual>,
}

/// Samples of one derived curve for reports.
pub fn kind_samples<C: DualCurve>(curve: &C, kind: SmarandacheKind, window: (f64, f64), s_values: &[f64]) -> Result<Vec<KindSample>> {
    let oracle = DerivedOracle::new(curve, kind, window)?;
    s_values
        .iter()
        .map(|&s| {
            let f = darboux_frame(curve, s)?;
            let g = f.gamma_bar;
            let regular = kind != SmarandacheKind::EG || (1.0 - g.re).abs() > POLE_EXCLUSION;
            let point = construct(kind, &f);
            if !regular {
                return Ok(KindSample { s, regular, point, gamma_closed: None, gamma_oracle: None, radius: None, rho: None });
            }
            let gp = gamma_bar_derivative(curve, s)?;
            let closed = closed_form_curvature(kind, g, gp)?;
            let (r, rho) = derived_radii(kind, g, gp, Formula::Printed)?;
            let gamma_oracle = oracle.aligned_frame(s, g).ok().map(|a| a.gamma_bar);
            Ok(KindSample { s, regular, point, gamma_closed: Some(closed), gamma_oracle, radius: Some(r), rho: Some(rho) })
        })
        .collect()
}
