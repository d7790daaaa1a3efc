//! Third-order derivative jets of real functions of one variable.
//!
//! Analytic curves are written once in terms of [`Jet`] and deliver their
//! first three derivatives without finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::Vector3;

/// Value and first three derivatives `[f, f', f'', f''']` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    pub const fn constant(c: f64) -> Jet {
        Jet([c, 0.0, 0.0, 0.0])
    }

    /// The independent variable itself, evaluated at `x`.
    pub const fn variable(x: f64) -> Jet {
        Jet([x, 1.0, 0.0, 0.0])
    }

    pub fn value(self) -> f64 {
        self.0[0]
    }

    /// Chain rule: `phi` holds `[φ, φ', φ'', φ''']` evaluated at `self.value()`.
    pub fn compose(self, phi: [f64; 4]) -> Jet {
        let [_, f1, f2, f3] = self.0;
        Jet([
            phi[0],
            phi[1] * f1,
            phi[2] * f1 * f1 + phi[1] * f2,
            phi[3] * f1 * f1 * f1 + 3.0 * phi[2] * f1 * f2 + phi[1] * f3,
        ])
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn sqrt(self) -> Jet {
        let x = self.value();
        let r = x.sqrt();
        self.compose([r, 0.5 / r, -0.25 / (x * r), 0.375 / (x * x * r)])
    }

    pub fn recip(self) -> Jet {
        let x = self.value();
        let r = 1.0 / x;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn scale(self, k: f64) -> Jet {
        Jet(self.0.map(|v| v * k))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Leibniz rule up to third order.
impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = rhs.0;
        Jet([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * (a2 * b1 + a1 * b2) + a0 * b3,
        ])
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut out = self;
        out.0[0] += rhs;
        out
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

/// A real 3-vector of jets.
pub type JetVec3 = [Jet; 3];

pub fn jet_dot(a: &JetVec3, b: &JetVec3) -> Jet {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn jet_cross(a: &JetVec3, b: &JetVec3) -> JetVec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn jet_scale(a: &JetVec3, k: Jet) -> JetVec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn jet_sub(a: &JetVec3, b: &JetVec3) -> JetVec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Derivative of order `k` (0..=3) of every component.
pub fn jet_component(a: &JetVec3, k: usize) -> Vector3<f64> {
    Vector3::new(a[0].0[k], a[1].0[k], a[2].0[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Jet, b: [f64; 4], tol: f64) {
        for (k, (got, want)) in a.0.iter().zip(b).enumerate() {
            assert!((got - want).abs() <= tol, "order {k}: {got} vs {want}");
        }
    }

    #[test]
    fn polynomial_rules() {
        let x = Jet::variable(2.0);
        close(x * x * x, [8.0, 12.0, 12.0, 6.0], 0.0);
        close((x + 1.0) * x, [6.0, 5.0, 2.0, 0.0], 0.0);
    }

    #[test]
    fn transcendental_rules() {
        let x = 0.7;
        let v = Jet::variable(x);
        close(v.sin(), [x.sin(), x.cos(), -x.sin(), -x.cos()], 1e-15);
        let sq = (v * v).sin();
        let (s, c) = (x * x).sin_cos();
        let expect = [
            s,
            2.0 * x * c,
            2.0 * c - 4.0 * x * x * s,
            -12.0 * x * s - 8.0 * x * x * x * c,
        ];
        close(sq, expect, 1e-14);
        close(v.sqrt(), [x.sqrt(), 0.5 * x.powf(-0.5), -0.25 * x.powf(-1.5), 0.375 * x.powf(-2.5)], 1e-14);
        close(v.recip() * v, [1.0, 0.0, 0.0, 0.0], 1e-14);
    }
}
