//! Dual 3-vectors and dual 3×3 matrices.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Vector3;

use crate::dual::Dual;
use crate::error::{Error, Result};

/// Clamp applied to the cosine before `acos` in [`dual_angle`].
pub const COSINE_CLAMP: f64 = 1e-12;
/// Below this `|sin θ|` the offset distance of two lines is not extracted.
pub const PARALLEL_TOL: f64 = 1e-9;

/// A dual vector `a + εa*` stored as its real and dual 3-vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualVec3 {
    pub re: Vector3<f64>,
    pub du: Vector3<f64>,
}

impl DualVec3 {
    pub const fn new(re: Vector3<f64>, du: Vector3<f64>) -> Self {
        DualVec3 { re, du }
    }

    pub fn zeros() -> Self {
        DualVec3::new(Vector3::zeros(), Vector3::zeros())
    }

    pub fn real(re: Vector3<f64>) -> Self {
        DualVec3::new(re, Vector3::zeros())
    }

    pub fn from_components(c: [Dual; 3]) -> Self {
        DualVec3::new(
            Vector3::new(c[0].re, c[1].re, c[2].re),
            Vector3::new(c[0].du, c[1].du, c[2].du),
        )
    }

    pub fn component(&self, i: usize) -> Dual {
        Dual::new(self.re[i], self.du[i])
    }

    pub fn x(&self) -> Dual {
        self.component(0)
    }

    pub fn y(&self) -> Dual {
        self.component(1)
    }

    pub fn z(&self) -> Dual {
        self.component(2)
    }

    pub fn components(&self) -> [Dual; 3] {
        [self.x(), self.y(), self.z()]
    }

    pub fn dot(&self, other: &DualVec3) -> Dual {
        Dual::new(
            self.re.dot(&other.re),
            self.re.dot(&other.du) + self.du.dot(&other.re),
        )
    }

    pub fn cross(&self, other: &DualVec3) -> DualVec3 {
        DualVec3::new(
            self.re.cross(&other.re),
            self.re.cross(&other.du) + self.du.cross(&other.re),
        )
    }

    /// `‖a‖ + ε⟨a, a*⟩/‖a‖`.
    pub fn norm(&self) -> Result<Dual> {
        let n = self.re.norm();
        if n == 0.0 {
            return Err(Error::ZeroRealVector);
        }
        Ok(Dual::new(n, self.re.dot(&self.du) / n))
    }

    pub fn normalize(&self) -> Result<DualVec3> {
        let n = self.norm()?;
        Ok(self.scale(n.recip()?))
    }

    pub fn is_dual_unit(&self, tol: f64) -> bool {
        (self.re.norm() - 1.0).abs() <= tol && self.re.dot(&self.du).abs() <= tol
    }

    /// Multiplies every component by a dual scalar.
    pub fn scale(&self, k: Dual) -> DualVec3 {
        DualVec3::new(self.re * k.re, self.du * k.re + self.re * k.du)
    }

    pub fn scale_real(&self, k: f64) -> DualVec3 {
        DualVec3::new(self.re * k, self.du * k)
    }

    /// Largest componentwise deviation from `other`, as (real, dual).
    pub fn max_abs_diff(&self, other: &DualVec3) -> (f64, f64) {
        (
            (self.re - other.re).amax(),
            (self.du - other.du).amax(),
        )
    }
}

impl Add for DualVec3 {
    type Output = DualVec3;
    fn add(self, rhs: DualVec3) -> DualVec3 {
        DualVec3::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl Sub for DualVec3 {
    type Output = DualVec3;
    fn sub(self, rhs: DualVec3) -> DualVec3 {
        DualVec3::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl Neg for DualVec3 {
    type Output = DualVec3;
    fn neg(self) -> DualVec3 {
        DualVec3::new(-self.re, -self.du)
    }
}

impl Mul<f64> for DualVec3 {
    type Output = DualVec3;
    fn mul(self, rhs: f64) -> DualVec3 {
        self.scale_real(rhs)
    }
}

impl Mul<Dual> for DualVec3 {
    type Output = DualVec3;
    fn mul(self, rhs: Dual) -> DualVec3 {
        self.scale(rhs)
    }
}

/// Angle and shortest distance between two oriented lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualAngle {
    /// Angle between the directions, in `[0, π]`.
    pub theta: f64,
    /// Signed length of the common perpendicular.
    pub theta_star: f64,
}

/// Dual angle from `cos θ̄ = cos θ − εθ* sin θ`.
pub fn dual_angle(a: &DualVec3, b: &DualVec3) -> Result<DualAngle> {
    let c = a.dot(b);
    let cos = c.re.clamp(-1.0 - COSINE_CLAMP, 1.0 + COSINE_CLAMP).clamp(-1.0, 1.0);
    let theta = cos.acos();
    let sin = theta.sin();
    if sin.abs() < PARALLEL_TOL {
        return Err(Error::ParallelLines);
    }
    Ok(DualAngle { theta, theta_star: -c.du / sin })
}

/// A 3×3 matrix of dual numbers, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMat3(pub [[Dual; 3]; 3]);

impl DualMat3 {
    pub fn identity() -> Self {
        let mut m = [[Dual::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Dual::ONE;
        }
        DualMat3(m)
    }

    pub fn from_rows(rows: [[Dual; 3]; 3]) -> Self {
        DualMat3(rows)
    }

    pub fn entry(&self, i: usize, j: usize) -> Dual {
        self.0[i][j]
    }

    /// Matrix-vector product, treating `v` as a column of dual scalars.
    pub fn apply(&self, v: [Dual; 3]) -> [Dual; 3] {
        std::array::from_fn(|i| (0..3).map(|j| self.0[i][j] * v[j]).sum())
    }

    pub fn mul(&self, other: &DualMat3) -> DualMat3 {
        DualMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn transpose(&self) -> DualMat3 {
        DualMat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Dual {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest deviation, as (real, dual), of `AAᵗ`, `AᵗA` from `I` and of `det A` from 1.
    pub fn orthogonality_residual(&self) -> (f64, f64) {
        let id = DualMat3::identity();
        let mut re: f64 = 0.0;
        let mut du: f64 = 0.0;
        for prod in [self.mul(&self.transpose()), self.transpose().mul(self)] {
            for i in 0..3 {
                for j in 0..3 {
                    let d = prod.0[i][j] - id.0[i][j];
                    re = re.max(d.re.abs());
                    du = du.max(d.du.abs());
                }
            }
        }
        let d = self.det() - Dual::ONE;
        (re.max(d.re.abs()), du.max(d.du.abs()))
    }

    pub fn is_dual_orthogonal(&self, tol: f64) -> bool {
        let (re, du) = self.orthogonality_residual();
        re <= tol && du <= tol
    }

    /// Vectors `Σⱼ Aᵢⱼ basisⱼ`, i.e. the rows expressed through `basis`.
    pub fn combine_rows(&self, basis: &[DualVec3; 3]) -> [DualVec3; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(DualVec3::zeros(), |acc, j| acc + basis[j].scale(self.0[i][j]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn v(x: f64, y: f64, z: f64) -> Vector3<f64> {
        Vector3::new(x, y, z)
    }

    #[test]
    fn dot_cross_examples() {
        let a = DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0));
        let b = DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, 0.0, 1.0));
        assert_eq!(a.dot(&b), Dual::ONE);
        let x = DualVec3::real(v(1.0, 0.0, 0.0));
        let y = DualVec3::real(v(0.0, 1.0, 0.0));
        assert_eq!(x.cross(&y), DualVec3::real(v(0.0, 0.0, 1.0)));
        assert_eq!(a.cross(&a), DualVec3::zeros());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(DualVec3::real(v(3.0, 4.0, 0.0)).norm().unwrap(), Dual::real(5.0));
        let a = DualVec3::new(v(1.0, 0.0, 0.0), v(2.0, 0.0, 0.0));
        assert_eq!(a.norm().unwrap(), Dual::new(1.0, 2.0));
        assert_eq!(DualVec3::new(Vector3::zeros(), v(1.0, 0.0, 0.0)).norm(), Err(Error::ZeroRealVector));
    }

    #[test]
    fn normalize_lands_on_sphere() {
        let a = DualVec3::new(v(1.0, 2.0, -2.0), v(0.5, 3.0, 1.0));
        let n = a.normalize().unwrap();
        assert!(n.is_dual_unit(1e-15));
        assert!(n.norm().unwrap().max_abs_diff(Dual::ONE) < 1e-12);
        assert!((n.re - a.re / 3.0).amax() < 1e-15);
    }

    #[test]
    fn dual_angle_of_skew_axes() {
        let a = DualVec3::real(v(1.0, 0.0, 0.0));
        // the y axis shifted to pass through (0, 0, 1): moment p × a
        let b = DualVec3::new(v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0).cross(&v(0.0, 1.0, 0.0)));
        let ang = dual_angle(&a, &b).unwrap();
        assert!((ang.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((ang.theta_star - 1.0).abs() < 1e-15);
        assert_eq!(dual_angle(&a, &a), Err(Error::ParallelLines));
        assert_eq!(dual_angle(&a, &-a), Err(Error::ParallelLines));
    }

    #[test]
    fn matrix_algebra() {
        let id = DualMat3::identity();
        assert!(id.is_dual_orthogonal(1e-15));
        assert_eq!(id.det(), Dual::ONE);
        let m = DualMat3([
            [Dual::new(1.0, 2.0), Dual::real(2.0), Dual::ZERO],
            [Dual::ZERO, Dual::new(3.0, -1.0), Dual::real(1.0)],
            [Dual::real(1.0), Dual::ZERO, Dual::new(2.0, 0.5)],
        ]);
        assert_eq!(m.mul(&id), m);
        assert_eq!(m.transpose().transpose(), m);
        // det = 1·(6) − 2·(0 − 1) + 0 = 8 in the real part
        assert_eq!(m.det().re, 8.0);
        let applied = m.apply([Dual::ONE, Dual::ZERO, Dual::ZERO]);
        assert_eq!(applied, [m.0[0][0], m.0[1][0], m.0[2][0]]);
        let mut scaled = id;
        scaled.0[1] = [Dual::ZERO, Dual::real(2.0), Dual::ZERO];
        assert!(!scaled.is_dual_orthogonal(1e-9));
    }

    #[test]
    fn dual_rotation_is_orthogonal() {
        // rotation by θ + εd about z: a screw motion
        let c = Dual::new(0.4, 1.3).cos();
        let s = Dual::new(0.4, 1.3).sin();
        let m = DualMat3([
            [c, -s, Dual::ZERO],
            [s, c, Dual::ZERO],
            [Dual::ZERO, Dual::ZERO, Dual::ONE],
        ]);
        assert!(m.is_dual_orthogonal(1e-15));
    }
}
