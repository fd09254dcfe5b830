use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::Point2d;
use crate::tol::Tolerances;

/// Closed polygon `C_1 .. C_n` in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPolygon {
    vertices: Vec<Point2d>,
    tol: Tolerances,
}

impl PlanarPolygon {
    pub fn new(vertices: Vec<Point2d>) -> Result<Self> {
        Self::with_tolerances(vertices, Tolerances::default())
    }

    /// Rejects coincident neighbours and vertices where the direction
    /// reverses, the two cases where the signed turning angle is undefined.
    pub fn with_tolerances(vertices: Vec<Point2d>, tol: Tolerances) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let p = Self { vertices, tol };
        p.compute_angles()?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point2d] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same vertices traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v, tol: self.tol }
    }

    fn scale(&self) -> f64 {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for p in &self.vertices {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm().max(f64::MIN_POSITIVE)
    }

    fn compute_angles(&self) -> Result<Vec<f64>> {
        let n = self.vertices.len();
        let min_edge = self.tol.degenerate * self.scale();
        let v = &self.vertices;
        (0..n)
            .map(|i| {
                let prev = v[i] - v[(i + n - 1) % n];
                let next = v[(i + 1) % n] - v[i];
                if prev.norm() <= min_edge || next.norm() <= min_edge {
                    return Err(Error::DegenerateVertex { index: i });
                }
                let k = prev.perp(&next).atan2(prev.dot(&next));
                if k.abs() >= PI - self.tol.angle {
                    return Err(Error::ReversalVertex { index: i, angle: k });
                }
                Ok(k)
            })
            .collect()
    }
}

/// Signed turning angle at every vertex, positive for a left turn.
pub fn signed_turning_angles(p: &PlanarPolygon) -> Result<Vec<f64>> {
    p.compute_angles()
}

/// Total signed curvature divided by `2 pi`.
pub fn turning_number(p: &PlanarPolygon) -> Result<i64> {
    let total: f64 = signed_turning_angles(p)?.iter().sum();
    let k = (total / (2.0 * PI)).round();
    let residual = (total - 2.0 * PI * k).abs();
    if residual > p.tol.turning {
        return Err(Error::NotClosedToMultiple { total, residual });
    }
    Ok(k as i64)
}
