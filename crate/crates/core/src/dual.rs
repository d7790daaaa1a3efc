//! Dual numbers `a + εa*` with `ε² = 0`.
//!
//! Arithmetic is closed-form, so ring operations on exactly representable
//! inputs are exact. Smooth real functions are lifted through
//! `f(x + εx*) = f(x) + εx* f'(x)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Divisors whose real part is at most this large are treated as pure dual.
pub const PURE_DUAL_THRESHOLD: f64 = 1e-300;

/// A dual number; `re` is the primal part and `du` the coefficient of `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

impl Dual {
    pub const ZERO: Dual = Dual { re: 0.0, du: 0.0 };
    pub const ONE: Dual = Dual { re: 1.0, du: 0.0 };
    /// The dual unit `ε`.
    pub const EPS: Dual = Dual { re: 0.0, du: 1.0 };

    pub const fn new(re: f64, du: f64) -> Self {
        Dual { re, du }
    }

    /// Embeds a real number with zero dual part.
    pub const fn real(re: f64) -> Self {
        Dual { re, du: 0.0 }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.du.is_finite()
    }

    /// Orders two dual numbers by their real parts only.
    ///
    /// The dual ring has no total order; this is the only comparison offered.
    pub fn cmp_real(self, other: Dual) -> Option<Ordering> {
        self.re.partial_cmp(&other.re)
    }

    /// Largest absolute deviation of either part from `other`.
    pub fn max_abs_diff(self, other: Dual) -> f64 {
        (self.re - other.re).abs().max((self.du - other.du).abs())
    }

    /// Division that reports pure-dual divisors instead of producing infinities.
    pub fn checked_div(self, rhs: Dual) -> Result<Dual> {
        if rhs.re.abs() <= PURE_DUAL_THRESHOLD {
            return Err(Error::ZeroRealPart);
        }
        Ok(self.div_unchecked(rhs))
    }

    pub fn recip(self) -> Result<Dual> {
        Dual::ONE.checked_div(self)
    }

    fn div_unchecked(self, rhs: Dual) -> Dual {
        Dual {
            re: self.re / rhs.re,
            du: (self.du * rhs.re - self.re * rhs.du) / (rhs.re * rhs.re),
        }
    }

    /// Lifts a real function given its derivative.
    ///
    /// A zero dual part stays exactly zero, even where `df` is infinite.
    pub fn lift(self, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Dual {
        let du = if self.du == 0.0 { 0.0 } else { self.du * df(self.re) };
        Dual { re: f(self.re), du }
    }

    pub fn sqrt(self) -> Result<Dual> {
        if self.re < 0.0 || (self.re == 0.0 && self.du != 0.0) {
            return Err(Error::Domain { function: "sqrt", value: self.re });
        }
        Ok(self.lift(f64::sqrt, |x| 0.5 / x.sqrt()))
    }

    pub fn sin(self) -> Dual {
        self.lift(f64::sin, f64::cos)
    }

    pub fn cos(self) -> Dual {
        self.lift(f64::cos, |x| -x.sin())
    }

    pub fn asin(self) -> Result<Dual> {
        check_unit_interval("asin", self)?;
        Ok(self.lift(f64::asin, |x| 1.0 / (1.0 - x * x).sqrt()))
    }

    pub fn acos(self) -> Result<Dual> {
        check_unit_interval("acos", self)?;
        Ok(self.lift(f64::acos, |x| -1.0 / (1.0 - x * x).sqrt()))
    }

    pub fn atan(self) -> Dual {
        self.lift(f64::atan, |x| 1.0 / (1.0 + x * x))
    }

    /// Real power `x^q`; requires a strictly positive real part.
    pub fn powf(self, q: f64) -> Result<Dual> {
        if !(self.re > 0.0) {
            return Err(Error::Domain { function: "powf", value: self.re });
        }
        Ok(self.lift(|x| x.powf(q), |x| q * x.powf(q - 1.0)))
    }

    /// `x^(3/2)`, written as `x·√x` so that perfect cases stay exact.
    pub fn pow_three_halves(self) -> Result<Dual> {
        if !(self.re > 0.0) {
            return Err(Error::Domain { function: "pow_three_halves", value: self.re });
        }
        Ok(self * self.sqrt()?)
    }

    pub fn square(self) -> Dual {
        self * self
    }

    pub fn scale(self, k: f64) -> Dual {
        Dual { re: self.re * k, du: self.du * k }
    }
}

fn check_unit_interval(function: &'static str, x: Dual) -> Result<()> {
    let inside = x.re.abs() < 1.0 || (x.re.abs() == 1.0 && x.du == 0.0);
    if inside {
        Ok(())
    } else {
        Err(Error::Domain { function, value: x.re })
    }
}

impl From<f64> for Dual {
    fn from(re: f64) -> Self {
        Dual::real(re)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { re: self.re + rhs.re, du: self.du + rhs.du }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { re: self.re - rhs.re, du: self.du - rhs.du }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual { re: self.re * rhs.re, du: self.re * rhs.du + self.du * rhs.re }
    }
}

/// Panics on a pure-dual divisor; use [`Dual::checked_div`] when that can occur.
impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        match self.checked_div(rhs) {
            Ok(q) => q,
            Err(e) => panic!("{e}: {self} / {rhs}"),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { re: -self.re, du: -self.du }
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, rhs: f64) -> Dual {
        Dual { re: self.re + rhs, du: self.du }
    }
}

impl Sub<f64> for Dual {
    type Output = Dual;
    fn sub(self, rhs: f64) -> Dual {
        Dual { re: self.re - rhs, du: self.du }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, rhs: f64) -> Dual {
        self.scale(rhs)
    }
}

impl Div<f64> for Dual {
    type Output = Dual;
    fn div(self, rhs: f64) -> Dual {
        Dual { re: self.re / rhs, du: self.du / rhs }
    }
}

impl Add<Dual> for f64 {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        rhs + self
    }
}

impl Sub<Dual> for f64 {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { re: self - rhs.re, du: -rhs.du }
    }
}

impl Mul<Dual> for f64 {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        rhs.scale(self)
    }
}

impl AddAssign for Dual {
    fn add_assign(&mut self, rhs: Dual) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dual {
    fn sub_assign(&mut self, rhs: Dual) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Dual {
    fn sum<I: Iterator<Item = Dual>>(iter: I) -> Dual {
        iter.fold(Dual::ZERO, |a, b| a + b)
    }
}

/// Renders as `a + εb`; the formatter precision applies to both parts.
impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.du.is_sign_negative() { '-' } else { '+' };
        let du = self.du.abs();
        match f.precision() {
            Some(p) => write!(f, "{:.p$} {sign} ε{:.p$}", self.re, du),
            None => write!(f, "{} {sign} ε{}", self.re, du),
        }
    }
}

/// Parses `a + εb`, `a - εb`, a bare real `a`, or a bare `εb`.
impl FromStr for Dual {
    type Err = Error;

    fn from_str(text: &str) -> Result<Dual> {
        let bad = || Error::ParseDual(text.to_string());
        let trimmed = text.trim();
        let Some(pos) = trimmed.find('ε') else {
            return trimmed.parse::<f64>().map(Dual::real).map_err(|_| bad());
        };
        let head = trimmed[..pos].trim_end();
        let tail = trimmed[pos + 'ε'.len_utf8()..].trim();
        let du: f64 = tail.parse().map_err(|_| bad())?;
        let (re_text, sign) = match head.chars().last() {
            None => ("", 1.0),
            Some('+') => (&head[..head.len() - 1], 1.0),
            Some('-') => (&head[..head.len() - 1], -1.0),
            Some(_) => return Err(bad()),
        };
        let re_text = re_text.trim();
        let re = if re_text.is_empty() {
            0.0
        } else {
            re_text.parse().map_err(|_| bad())?
        };
        Ok(Dual::new(re, sign * du))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn multiplication_rule() {
        assert_eq!(Dual::new(2.0, 3.0) * Dual::new(4.0, 5.0), Dual::new(8.0, 22.0));
        assert_eq!(Dual::EPS * Dual::EPS, Dual::ZERO);
        let a = Dual::new(1.25, -7.5);
        assert_eq!(a * Dual::ONE, a);
    }

    #[test]
    fn division_examples() {
        assert_eq!(Dual::real(1.0) / Dual::real(2.0), Dual::new(0.5, 0.0));
        let a = Dual::new(3.5, -2.25);
        assert_eq!(a / a, Dual::ONE);
        assert_eq!(Dual::ONE / Dual::new(1.0, 1.0), Dual::new(1.0, -1.0));
    }

    #[test]
    fn pure_dual_divisor_is_rejected() {
        assert_eq!(Dual::ONE.checked_div(Dual::EPS), Err(Error::ZeroRealPart));
        assert_eq!(Dual::new(0.0, 0.0).recip(), Err(Error::ZeroRealPart));
        assert!(Dual::ONE.checked_div(Dual::new(1e-299, 0.0)).is_ok());
    }

    #[test]
    fn lifted_kernels() {
        let s = Dual::new(FRAC_PI_2, 2.0).sin();
        assert_eq!(s.re, 1.0);
        assert!(s.du.abs() < 1e-15);
        assert_eq!(Dual::new(4.0, 4.0).sqrt().unwrap(), Dual::new(2.0, 1.0));
        let c = Dual::new(0.3, 0.7).cos();
        assert_eq!(c, Dual::new(0.3f64.cos(), -0.7 * 0.3f64.sin()));
        let t = Dual::new(1.0, 2.0).atan();
        assert_eq!(t, Dual::new(PI / 4.0, 1.0));
    }

    #[test]
    fn zero_dual_part_survives_singular_derivative() {
        assert_eq!(Dual::real(1.0).asin().unwrap(), Dual::new(FRAC_PI_2, 0.0));
        assert_eq!(Dual::real(0.0).sqrt().unwrap(), Dual::ZERO);
        assert_eq!(Dual::real(-1.0).acos().unwrap(), Dual::new(PI, 0.0));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(Dual::real(-1.0).sqrt(), Err(Error::Domain { function: "sqrt", .. })));
        assert!(matches!(Dual::new(0.0, 1.0).sqrt(), Err(Error::Domain { .. })));
        assert!(matches!(Dual::real(1.5).asin(), Err(Error::Domain { function: "asin", .. })));
        assert!(matches!(Dual::new(1.0, 0.1).acos(), Err(Error::Domain { .. })));
        assert!(matches!(Dual::real(0.0).powf(1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn rational_powers() {
        let x = Dual::new(2.0, 1.0);
        let p = x.powf(1.5).unwrap();
        assert!((p.re - 2f64.powf(1.5)).abs() < 1e-15);
        assert!((p.du - 1.5 * 2f64.sqrt()).abs() < 1e-15);
        let q = x.pow_three_halves().unwrap();
        assert!(q.max_abs_diff(p) < 1e-15);
        assert_eq!(Dual::real(2.0).pow_three_halves().unwrap().re, 2.0 * std::f64::consts::SQRT_2);
        let r = x.powf(-0.5).unwrap();
        assert!((r.re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn real_part_comparison_only() {
        let a = Dual::new(1.0, 100.0);
        let b = Dual::new(2.0, -100.0);
        assert_eq!(a.cmp_real(b), Some(Ordering::Less));
        assert_eq!(a.cmp_real(Dual::new(1.0, 0.0)), Some(Ordering::Equal));
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(format!("{:.3}", Dual::new(1.0, -0.5)), "1.000 - ε0.500");
        assert_eq!(format!("{}", Dual::new(2.5, 3.0)), "2.5 + ε3");
        for text in ["1.5 + ε-2", "1.5 - ε2", " 1.5-ε2 "] {
            assert_eq!(text.parse::<Dual>().unwrap(), Dual::new(1.5, -2.0), "{text}");
        }
        assert_eq!("ε3".parse::<Dual>().unwrap(), Dual::new(0.0, 3.0));
        assert_eq!("-ε3".parse::<Dual>().unwrap(), Dual::new(0.0, -3.0));
        assert_eq!("4".parse::<Dual>().unwrap(), Dual::real(4.0));
        assert_eq!("1e-3 + ε2e2".parse::<Dual>().unwrap(), Dual::new(1e-3, 200.0));
        assert!("1 * ε2".parse::<Dual>().is_err());
        assert!("abc".parse::<Dual>().is_err());
        let x = Dual::new(-0.123456789, 9.87654321);
        assert_eq!(format!("{x:.9}").parse::<Dual>().unwrap(), x);
    }
}
