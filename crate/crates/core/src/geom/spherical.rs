use std::f64::consts::PI;

use super::angle::{angle_between, UnitVector, Vector3};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Vertices on the unit sphere joined by minor great-circle arcs.
///
/// A closed polygon also joins the last vertex to the first. Open paths are
/// allowed so that single arcs and the indicatrix of an open space polygon
/// share the same type; area is only defined for closed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<UnitVector>,
    closed: bool,
}

impl SphericalPolygon {
    pub fn closed(vertices: Vec<UnitVector>) -> Result<Self> {
        Self::build(vertices, true, &Tolerances::default())
    }

    pub fn open(vertices: Vec<UnitVector>) -> Result<Self> {
        Self::build(vertices, false, &Tolerances::default())
    }

    pub fn build(vertices: Vec<UnitVector>, closed: bool, tol: &Tolerances) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::NotConvexSpherical(format!(
                "need at least {min} vertices, got {}",
                vertices.len()
            )));
        }
        let p = Self { vertices, closed };
        for (i, (a, b)) in p.arcs().enumerate() {
            let (a, b) = (a.as_vector(), b.as_vector());
            if (a - b).norm() <= tol.unit {
                return Err(Error::InvalidParameter(format!("vertices {i} and {} coincide", i + 1)));
            }
            if (a + b).norm() <= tol.unit {
                return Err(Error::AntipodalDirections { index: i });
            }
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[UnitVector] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, including the closing arc when closed.
    pub fn arcs(&self) -> impl Iterator<Item = (&UnitVector, &UnitVector)> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Total great-circle length of the arcs.
    pub fn length(&self) -> f64 {
        self.arcs().map(|(a, b)| a.arc_to(b)).sum()
    }

    /// Area of a convex closed spherical polygon: sum of interior angles
    /// minus `(n - 2) pi`.
    pub fn area(&self) -> Result<f64> {
        if !self.closed {
            return Err(Error::NotConvexSpherical("open path has no area".into()));
        }
        self.check_convex(&Tolerances::default())?;
        let n = self.vertices.len();
        let mut sum = 0.0;
        for i in 0..n {
            let v = self.vertices[i].as_vector();
            let prev = self.vertices[(i + n - 1) % n].as_vector();
            let next = self.vertices[(i + 1) % n].as_vector();
            sum += angle_between(&tangent(v, next), &tangent(v, prev))?;
        }
        Ok(sum - (n as f64 - 2.0) * PI)
    }

    /// Every arc's great circle must leave all other vertices strictly on one
    /// side, the same side for every arc.
    fn check_convex(&self, tol: &Tolerances) -> Result<()> {
        let n = self.vertices.len();
        let mut orientation = 0.0f64;
        for i in 0..n {
            let a = self.vertices[i].as_vector();
            let b = self.vertices[(i + 1) % n].as_vector();
            let axis = a.cross(b);
            for j in 0..n {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                let s = axis.dot(self.vertices[j].as_vector());
                if s.abs() <= tol.unit {
                    return Err(Error::NotConvexSpherical(format!(
                        "vertex {j} lies on the great circle through arc {i}"
                    )));
                }
                if orientation == 0.0 {
                    orientation = s.signum();
                } else if s.signum() != orientation {
                    return Err(Error::NotConvexSpherical(format!(
                        "vertex {j} is on the wrong side of arc {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Tangent at `v` of the great circle towards `w`.
fn tangent(v: &Vector3, w: &Vector3) -> Vector3 {
    w - v * v.dot(w)
}
