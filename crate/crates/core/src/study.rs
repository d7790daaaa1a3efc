//! Oriented lines as dual unit vectors, and ruled surfaces sampled from
//! curves of lines.

use nalgebra::Vector3;

use crate::curve::DualCurve;
use crate::error::{Error, Result};
use crate::linalg::{DualVec3, PARALLEL_TOL};

/// Allowed deviation of a direction from unit length.
pub const UNIT_DIRECTION_TOL: f64 = 1e-12;
/// Allowed deviation of a dual vector from the dual unit sphere.
pub const DUAL_UNIT_TOL: f64 = 1e-9;

/// An oriented line through `point` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line3 {
    pub point: Vector3<f64>,
    pub direction: Vector3<f64>,
}

impl Line3 {
    /// Distance from `p` to the line.
    pub fn distance_to(&self, p: &Vector3<f64>) -> f64 {
        (p - self.point).cross(&self.direction).norm()
    }

    /// The point of `self` nearest to `other`; for intersecting lines this is
    /// the intersection.
    pub fn closest_point_to(&self, other: &Line3) -> Result<Vector3<f64>> {
        let b = self.direction.dot(&other.direction);
        let denom = 1.0 - b * b;
        if denom.sqrt() < PARALLEL_TOL {
            return Err(Error::ParallelLines);
        }
        let w = other.point - self.point;
        let d = self.direction.dot(&w);
        let e = other.direction.dot(&w);
        let t = (d - b * e) / denom;
        Ok(self.point + self.direction * t)
    }
}

/// The dual unit vector `a + ε(p × a)` of the line through `p` along `a`.
pub fn line_to_dual(p: &Vector3<f64>, a: &Vector3<f64>) -> Result<DualVec3> {
    let n = a.norm();
    if (n - 1.0).abs() > UNIT_DIRECTION_TOL {
        return Err(Error::NotUnitDirection(n));
    }
    Ok(DualVec3::new(*a, p.cross(a)))
}

/// Inverse of [`line_to_dual`]; the returned point is `a × a*`, the foot of
/// the perpendicular from the origin.
pub fn dual_to_line(v: &DualVec3) -> Result<Line3> {
    if !v.is_dual_unit(DUAL_UNIT_TOL) {
        return Err(Error::NotDualUnit);
    }
    Ok(Line3 { point: v.re.cross(&v.du), direction: v.re })
}

/// `count` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count)
                .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Structured grid of points `r(s, u) = base(s) + u·ruling(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuledPatch {
    pub s_grid: Vec<f64>,
    pub u_grid: Vec<f64>,
    /// `vertices[i][j] = r(s_grid[i], u_grid[j])`.
    pub vertices: Vec<Vec<Vector3<f64>>>,
}

impl RuledPatch {
    /// Builds the grid from a generator returning `(base point, ruling)` per `s`.
    pub fn from_generator<F>(s_grid: Vec<f64>, u_grid: Vec<f64>, mut generator: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<(Vector3<f64>, Vector3<f64>)>,
    {
        let mut vertices = Vec::with_capacity(s_grid.len());
        for &s in &s_grid {
            let (base, ruling) = generator(s)?;
            vertices.push(u_grid.iter().map(|&u| base + ruling * u).collect());
        }
        Ok(RuledPatch { s_grid, u_grid, vertices })
    }

    pub fn rows(&self) -> usize {
        self.s_grid.len()
    }

    pub fn cols(&self) -> usize {
        self.u_grid.len()
    }
}

/// Samples the ruled surface of `curve`, anchoring each ruling at the foot
/// point returned by [`dual_to_line`].
pub fn sample_ruled_surface<C: DualCurve + ?Sized>(
    curve: &C,
    s_grid: Vec<f64>,
    u_grid: Vec<f64>,
) -> Result<RuledPatch> {
    RuledPatch::from_generator(s_grid, u_grid, |s| {
        let line = dual_to_line(&curve.eval(s)?)?;
        Ok((line.point, line.direction))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vector3<f64> {
        Vector3::new(x, y, z)
    }

    #[test]
    fn line_to_dual_examples() {
        let d = line_to_dual(&v(0.0, 0.0, 1.0), &v(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(d, DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)));
        let a = v(0.6, 0.0, 0.8);
        assert_eq!(line_to_dual(&Vector3::zeros(), &a).unwrap(), DualVec3::real(a));
        assert!(matches!(
            line_to_dual(&Vector3::zeros(), &v(1.0, 1.0, 0.0)),
            Err(Error::NotUnitDirection(_))
        ));
    }

    #[test]
    fn helicoid_ruling_round_trip() {
        for s in [0.0, 0.5, 2.0, 5.5] {
            let (sn, cs) = f64::sin_cos(s);
            let d = line_to_dual(&v(0.0, 0.0, s), &v(cs, sn, 0.0)).unwrap();
            let expect = DualVec3::new(v(cs, sn, 0.0), v(-s * sn, s * cs, 0.0));
            let (re, du) = d.max_abs_diff(&expect);
            assert!(re < 1e-15 && du < 1e-15);
            let line = dual_to_line(&d).unwrap();
            assert!((line.point - v(0.0, 0.0, s)).amax() < 1e-15);
        }
    }

    #[test]
    fn dual_to_line_examples() {
        let line = dual_to_line(&DualVec3::new(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0))).unwrap();
        assert_eq!(line.point, v(0.0, 0.0, 1.0));
        assert_eq!(line.direction, v(1.0, 0.0, 0.0));
        let through_origin = dual_to_line(&DualVec3::real(v(0.0, 1.0, 0.0))).unwrap();
        assert_eq!(through_origin.point, Vector3::zeros());
        assert_eq!(
            dual_to_line(&DualVec3::new(v(1.0, 0.0, 0.0), v(1.0, 0.0, 0.0))),
            Err(Error::NotDualUnit)
        );
    }

    #[test]
    fn closest_point_between_lines() {
        let x_axis = Line3 { point: Vector3::zeros(), direction: v(1.0, 0.0, 0.0) };
        let lifted_y = Line3 { point: v(3.0, 5.0, 2.0), direction: v(0.0, 1.0, 0.0) };
        assert!((lifted_y.closest_point_to(&x_axis).unwrap() - v(3.0, 0.0, 2.0)).amax() < 1e-15);
        assert!((x_axis.closest_point_to(&lifted_y).unwrap() - v(3.0, 0.0, 0.0)).amax() < 1e-15);
        assert_eq!(x_axis.closest_point_to(&x_axis), Err(Error::ParallelLines));
    }

    #[test]
    fn grid_helpers() {
        assert_eq!(linspace(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
        let patch = RuledPatch::from_generator(vec![0.0, 1.0], vec![-1.0, 2.0], |s| {
            Ok((v(0.0, 0.0, s), v(1.0, 0.0, 0.0)))
        })
        .unwrap();
        assert_eq!(patch.vertices[1][0], v(-1.0, 0.0, 1.0));
        assert_eq!(patch.vertices[0][1], v(2.0, 0.0, 0.0));
        assert_eq!((patch.rows(), patch.cols()), (2, 2));
    }
}
