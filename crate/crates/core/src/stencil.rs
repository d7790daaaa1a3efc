//! Finite-difference stencils: pointwise central differences of smooth
//! functions and whole-array differences on uniform grids.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Values that can be combined linearly by a stencil.
pub trait Linear: Copy + Add<Output = Self> + Mul<f64, Output = Self> {}

impl<T: Copy + Add<Output = T> + Mul<f64, Output = T>> Linear for T {}

const D1: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const D2: [(f64, f64); 5] = [(-2.0, -1.0), (-1.0, 16.0), (0.0, -30.0), (1.0, 16.0), (2.0, -1.0)];
const D2_WIDE: [(f64, f64); 7] = [
    (-3.0, 2.0),
    (-2.0, -27.0),
    (-1.0, 270.0),
    (0.0, -490.0),
    (1.0, 270.0),
    (2.0, -27.0),
    (3.0, 2.0),
];
const D3: [(f64, f64); 6] = [
    (-3.0, 1.0),
    (-2.0, -8.0),
    (-1.0, 13.0),
    (1.0, -13.0),
    (2.0, 8.0),
    (3.0, -1.0),
];

fn combine<T: Linear>(
    f: &mut impl FnMut(f64) -> Result<T>,
    x: f64,
    h: f64,
    taps: &[(f64, f64)],
    scale: f64,
) -> Result<T> {
    let mut acc: Option<T> = None;
    for &(k, c) in taps {
        let term = f(x + k * h)? * c;
        acc = Some(match acc {
            Some(a) => a + term,
            None => term,
        });
    }
    Ok(acc.expect("stencil has taps") * scale)
}

/// Fourth-order central first derivative (5 points).
pub fn central_d1<T: Linear>(mut f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    combine(&mut f, x, h, &D1, 1.0 / (12.0 * h))
}

/// Fourth-order central second derivative (5 points).
pub fn central_d2<T: Linear>(mut f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    combine(&mut f, x, h, &D2, 1.0 / (12.0 * h * h))
}

/// Sixth-order central second derivative (7 points).
pub fn central_d2_wide<T: Linear>(mut f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    combine(&mut f, x, h, &D2_WIDE, 1.0 / (180.0 * h * h))
}

/// Fourth-order central third derivative (7 points).
pub fn central_d3<T: Linear>(mut f: impl FnMut(f64) -> Result<T>, x: f64, h: f64) -> Result<T> {
    combine(&mut f, x, h, &D3, 1.0 / (8.0 * h * h * h))
}

/// Half-width, in steps, of the curve stencil for derivatives of `order`
/// (`central_d1`, `central_d2_wide`, `central_d3`).
pub fn reach(order: usize) -> f64 {
    if order >= 2 {
        3.0
    } else {
        2.0
    }
}

const MIN_GRID: usize = 5;

fn check_grid(values: &[f64]) -> Result<()> {
    if values.len() < MIN_GRID {
        return Err(Error::GridTooSmall { found: values.len(), needed: MIN_GRID });
    }
    Ok(())
}

fn dot5(w: [f64; 5], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// First derivative of uniformly sampled values: central in the interior,
/// one-sided fourth-order near the ends.
pub fn stencil_d1(values: &[f64], h: f64) -> Result<Vec<f64>> {
    check_grid(values)?;
    let n = values.len();
    let k = 1.0 / (12.0 * h);
    let rev: Vec<f64> = values[n - 5..].iter().rev().copied().collect();
    Ok((0..n)
        .map(|i| match i {
            0 => dot5([-25.0, 48.0, -36.0, 16.0, -3.0], &values[..5]) * k,
            1 => dot5([-3.0, -10.0, 18.0, -6.0, 1.0], &values[..5]) * k,
            _ if i == n - 1 => -dot5([-25.0, 48.0, -36.0, 16.0, -3.0], &rev) * k,
            _ if i == n - 2 => -dot5([-3.0, -10.0, 18.0, -6.0, 1.0], &rev) * k,
            _ => dot5([1.0, -8.0, 0.0, 8.0, -1.0], &values[i - 2..i + 3]) * k,
        })
        .collect())
}

/// Second derivative of uniformly sampled values; exact on quartics.
pub fn stencil_d2(values: &[f64], h: f64) -> Result<Vec<f64>> {
    check_grid(values)?;
    let n = values.len();
    let k = 1.0 / (12.0 * h * h);
    let rev: Vec<f64> = values[n - 5..].iter().rev().copied().collect();
    Ok((0..n)
        .map(|i| match i {
            0 => dot5([35.0, -104.0, 114.0, -56.0, 11.0], &values[..5]) * k,
            1 => dot5([11.0, -20.0, 6.0, 4.0, -1.0], &values[..5]) * k,
            _ if i == n - 1 => dot5([35.0, -104.0, 114.0, -56.0, 11.0], &rev) * k,
            _ if i == n - 2 => dot5([11.0, -20.0, 6.0, 4.0, -1.0], &rev) * k,
            _ => dot5([-1.0, 16.0, -30.0, 16.0, -1.0], &values[i - 2..i + 3]) * k,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(f: impl Fn(f64) -> f64, n: usize, h: f64) -> Vec<f64> {
        (0..n).map(|i| f(0.3 + i as f64 * h)).collect()
    }

    #[test]
    fn grid_stencils_exact_on_quartics() {
        let h = 0.125;
        let p = |x: f64| 2.0 * x.powi(4) - x.powi(3) + 0.5 * x * x - 3.0 * x + 1.0;
        let dp = |x: f64| 8.0 * x.powi(3) - 3.0 * x * x + x - 3.0;
        let ddp = |x: f64| 24.0 * x * x - 6.0 * x + 1.0;
        for n in [5, 6, 9] {
            let v = grid(p, n, h);
            let d1 = stencil_d1(&v, h).unwrap();
            let d2 = stencil_d2(&v, h).unwrap();
            for i in 0..n {
                let x = 0.3 + i as f64 * h;
                assert!((d1[i] - dp(x)).abs() < 1e-12, "d1 n={n} i={i}");
                assert!((d2[i] - ddp(x)).abs() < 1e-10, "d2 n={n} i={i}");
            }
        }
    }

    #[test]
    fn sine_grid_matches_cosine() {
        let h = 1e-3;
        let v = grid(f64::sin, 200, h);
        let d = stencil_d1(&v, h).unwrap();
        for (i, di) in d.iter().enumerate() {
            assert!((di - (0.3 + i as f64 * h).cos()).abs() < 1e-10, "i={i}");
        }
    }

    #[test]
    fn constant_grid_has_zero_derivative() {
        let v = vec![4.25; 12];
        assert!(stencil_d1(&v, 0.1).unwrap().iter().all(|&d| d == 0.0));
        assert!(stencil_d2(&v, 0.1).unwrap().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn short_grid_is_rejected() {
        assert_eq!(
            stencil_d1(&[1.0, 2.0, 3.0, 4.0], 0.1),
            Err(Error::GridTooSmall { found: 4, needed: 5 })
        );
    }

    #[test]
    fn pointwise_stencils_exact_on_low_degree() {
        let f = |x: f64| Ok(x.powi(4) - 2.0 * x.powi(3) + x);
        let x = 0.7;
        let h = 0.0625;
        assert!((central_d1(f, x, h).unwrap() - (4.0 * x.powi(3) - 6.0 * x * x + 1.0)).abs() < 1e-12);
        assert!((central_d2(f, x, h).unwrap() - (12.0 * x * x - 12.0 * x)).abs() < 1e-11);
        assert!((central_d3(f, x, h).unwrap() - (24.0 * x - 12.0)).abs() < 1e-9);
    }

    #[test]
    fn halving_step_shrinks_error_sixteenfold() {
        let x = 0.4;
        let err = |h: f64| (central_d1(|t| Ok(t.exp()), x, h).unwrap() - x.exp()).abs();
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 8.0, "ratio {ratio}");
        let err2 = |h: f64| (central_d2(|t| Ok(t.sin()), x, h).unwrap() + x.sin()).abs();
        assert!(err2(0.1) / err2(0.05) > 8.0);
    }

    #[test]
    fn wide_second_difference_exact_on_sextics() {
        let h = 0.125;
        let p = |x: f64| x.powi(6) - 2.0 * x.powi(5) + x.powi(3) - 4.0 * x + 2.0;
        let ddp = |x: f64| 30.0 * x.powi(4) - 40.0 * x.powi(3) + 6.0 * x;
        for x in [-0.75, 0.0, 0.5, 1.25] {
            let got = central_d2_wide(|t| Ok(p(t)), x, h).unwrap();
            assert!((got - ddp(x)).abs() < 1e-10, "x={x}: {got} vs {}", ddp(x));
        }
    }
}
