//! Text output: `%g`-style numbers, OBJ meshes and the sampled-curve table.

use std::fmt::Write as _;

use dualsurf::{DualVec3, RuledPatch};

/// `x` with `digits` significant digits in the style of C's `%g`: fixed
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// removed. Negative zero prints as `0`.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Significant digits of OBJ vertex coordinates.
pub const OBJ_DIGITS: usize = 9;

/// Wavefront OBJ text of a patch: row-major vertices, two triangles per quad.
pub fn obj(patch: &RuledPatch, comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {comment}");
    for row in &patch.vertices {
        for v in row {
            let _ = writeln!(out, "v {} {} {}", fmt_g(v.x, OBJ_DIGITS), fmt_g(v.y, OBJ_DIGITS), fmt_g(v.z, OBJ_DIGITS));
        }
    }
    let (ns, nu) = (patch.rows(), patch.cols());
    let idx = |i: usize, j: usize| i * nu + j + 1;
    for i in 0..ns.saturating_sub(1) {
        for j in 0..nu.saturating_sub(1) {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            let _ = writeln!(out, "f {a} {b} {c}");
            let _ = writeln!(out, "f {a} {c} {d}");
        }
    }
    out
}

/// Rows `u ex ey ez esx esy esz` readable by `SampledCurve::parse`.
pub fn sampled_curve(comment: &str, rows: &[(f64, DualVec3)]) -> String {
    let mut out = format!("# {comment}\nu ex ey ez esx esy esz\n");
    for (u, v) in rows {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            num(*u),
            num(v.re.x),
            num(v.re.y),
            num(v.re.z),
            num(v.du.x),
            num(v.du.y),
            num(v.du.z)
        );
    }
    out
}

/// Shortest round-tripping decimal, with `-0` folded to `0`.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

/// Report cells: 12 significant digits.
pub fn cell(x: f64) -> String {
    fmt_g(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        assert_eq!(fmt_g(0.0, 9), "0");
        assert_eq!(fmt_g(-0.0, 9), "0");
        assert_eq!(fmt_g(1.0, 9), "1");
        assert_eq!(fmt_g(-2.5, 9), "-2.5");
        assert_eq!(fmt_g(std::f64::consts::PI, 9), "3.14159265");
        assert_eq!(fmt_g(std::f64::consts::TAU, 9), "6.28318531");
        assert_eq!(fmt_g(1e-5, 9), "1e-05");
        assert_eq!(fmt_g(1.234e-4, 9), "0.0001234");
        assert_eq!(fmt_g(123456789.0, 9), "123456789");
        assert_eq!(fmt_g(1234567891.0, 9), "1.23456789e+09");
        assert_eq!(fmt_g(9.999999999, 9), "10");
        assert_eq!(fmt_g(std::f64::consts::FRAC_1_SQRT_2, 9), "0.707106781");
    }
}
