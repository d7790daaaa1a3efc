//! Clamped cubic splines on uniform grids.

use crate::jet::Jet;
use crate::stencil::stencil_d1;
use crate::error::Result;

/// Interpolating cubic spline through uniformly spaced samples.
///
/// End slopes come from one-sided fourth-order differences, so smooth data
/// is reproduced with fourth-order accuracy up to the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x0: f64,
    h: f64,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    /// Needs at least five samples.
    pub fn new(x0: f64, h: f64, y: Vec<f64>) -> Result<Self> {
        let slopes = stencil_d1(&y, h)?;
        let n = y.len();
        let (d0, dn) = (slopes[0], slopes[n - 1]);
        // tridiagonal system for the second derivatives m
        let mut diag = vec![4.0; n];
        let mut rhs = vec![0.0; n];
        diag[0] = 2.0;
        diag[n - 1] = 2.0;
        rhs[0] = 6.0 / h * ((y[1] - y[0]) / h - d0);
        rhs[n - 1] = 6.0 / h * (dn - (y[n - 1] - y[n - 2]) / h);
        for i in 1..n - 1 {
            rhs[i] = 6.0 / (h * h) * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
        }
        for i in 1..n {
            let w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - m[i + 1]) / diag[i];
        }
        Ok(CubicSpline { x0, h, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x0, self.x0 + self.h * (self.y.len() - 1) as f64)
    }

    /// Value and derivatives at `x`; points outside the grid use the end cell.
    pub fn jet(&self, x: f64) -> Jet {
        let n = self.y.len();
        let h = self.h;
        let cell = ((x - self.x0) / h).floor().clamp(0.0, (n - 2) as f64) as usize;
        let xi = self.x0 + h * cell as f64;
        let b = (x - xi) / h;
        let a = 1.0 - b;
        let (y0, y1) = (self.y[cell], self.y[cell + 1]);
        let (m0, m1) = (self.m[cell], self.m[cell + 1]);
        Jet([
            a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0,
            (y1 - y0) / h - (3.0 * a * a - 1.0) / 6.0 * h * m0 + (3.0 * b * b - 1.0) / 6.0 * h * m1,
            a * m0 + b * m1,
            (m1 - m0) / h,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_nodes_and_reproduces_cubics() {
        let h = 0.1;
        let f = |x: f64| x * x * x - 2.0 * x + 0.5;
        let y: Vec<f64> = (0..12).map(|i| f(i as f64 * h)).collect();
        let s = CubicSpline::new(0.0, h, y.clone()).unwrap();
        for (i, yi) in y.iter().enumerate() {
            assert!((s.jet(i as f64 * h).0[0] - yi).abs() < 1e-14);
        }
        let j = s.jet(0.537);
        assert!((j.0[0] - f(0.537)).abs() < 1e-12);
        assert!((j.0[1] - (3.0 * 0.537f64.powi(2) - 2.0)).abs() < 1e-11);
        assert!((j.0[2] - 6.0 * 0.537).abs() < 1e-9);
    }

    #[test]
    fn smooth_data_converges() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let y = (0..n).map(|i| (i as f64 * h * 3.0).sin()).collect();
            let s = CubicSpline::new(0.0, h, y).unwrap();
            (0..200)
                .map(|k| {
                    let x = k as f64 / 199.0;
                    (s.jet(x).0[0] - (3.0 * x).sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(64) < 1e-6);
        assert!(err(32) / err(64) > 10.0);
    }
}
