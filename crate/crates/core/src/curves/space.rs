use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{angle_between, Point3d, SphericalPolygon, UnitVector, Vector3};
use crate::tol::Tolerances;

/// Polygon `C_1 .. C_n` in space; when closed, indices wrap modulo `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacePolygon {
    vertices: Vec<Point3d>,
    closed: bool,
    tol: Tolerances,
}

impl SpacePolygon {
    pub fn closed(vertices: Vec<Point3d>) -> Result<Self> {
        Self::with_tolerances(vertices, true, Tolerances::default())
    }

    pub fn open(vertices: Vec<Point3d>) -> Result<Self> {
        Self::with_tolerances(vertices, false, Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<Point3d>, closed: bool, tol: Tolerances) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let p = Self { vertices, closed, tol };
        p.compute_angles()?;
        Ok(p)
    }

    pub fn vertices(&self) -> &[Point3d] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn scale(&self) -> f64 {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for p in &self.vertices {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm().max(f64::MIN_POSITIVE)
    }

    /// Edge vectors `C_{i+1} - C_i`; `n` of them when closed, `n - 1` when open.
    fn edges(&self) -> Result<Vec<Vector3>> {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        let min_edge = self.tol.degenerate * self.scale();
        (0..count)
            .map(|i| {
                let e = self.vertices[(i + 1) % n] - self.vertices[i];
                if e.norm() <= min_edge {
                    Err(Error::DegenerateVertex { index: (i + 1) % n })
                } else {
                    Ok(e)
                }
            })
            .collect()
    }

    /// `pi` minus the interior angle, at every vertex that has two neighbours.
    fn compute_angles(&self) -> Result<Vec<f64>> {
        let edges = self.edges()?;
        let m = edges.len();
        let (first, count) = if self.closed { (0, m) } else { (1, m - 1) };
        (0..count)
            .map(|k| {
                let vertex = first + k;
                let prev = &edges[(vertex + m - 1) % m];
                let next = &edges[vertex % m];
                let a = angle_between(prev, next)?;
                if a >= PI - self.tol.angle {
                    return Err(Error::ReversalVertex { index: vertex, angle: a });
                }
                Ok(a)
            })
            .collect()
    }
}

/// Turning angles `kappa_i = pi - angle C_{i-1} C_i C_{i+1}`. Open polygons
/// report interior vertices only.
pub fn turning_angles(p: &SpacePolygon) -> Result<Vec<f64>> {
    p.compute_angles()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalCurvature {
    pub total: f64,
    /// Closed and within `eps_turning` of `2 pi`: the planar convex case.
    pub fenchel_equality: bool,
}

pub fn total_curvature(p: &SpacePolygon) -> Result<TotalCurvature> {
    let total: f64 = turning_angles(p)?.iter().sum();
    Ok(TotalCurvature {
        total,
        fenchel_equality: p.closed && (total - 2.0 * PI).abs() <= p.tol.turning,
    })
}

/// Unit edge directions joined by great-circle arcs.
///
/// Consecutive equal directions (straight vertices) are merged; they add
/// nothing to the length.
pub fn tangent_indicatrix(p: &SpacePolygon) -> Result<SphericalPolygon> {
    let mut dirs: Vec<UnitVector> = Vec::new();
    for e in p.edges()? {
        let t = UnitVector::normalize(e)?;
        if dirs.last().is_some_and(|last| same_direction(last, &t, &p.tol)) {
            continue;
        }
        dirs.push(t);
    }
    if p.closed {
        while dirs.len() > 1 && same_direction(&dirs[0], dirs.last().unwrap(), &p.tol) {
            dirs.pop();
        }
    }
    SphericalPolygon::build(dirs, p.closed, &p.tol)
}

fn same_direction(a: &UnitVector, b: &UnitVector, tol: &Tolerances) -> bool {
    (a.as_vector() - b.as_vector()).norm() <= tol.unit
}

/// Grid of `n` parameters on `[a, b]`. A closed curve gets `n` points on
/// `[a, b)` so that `a` is not repeated.
pub fn uniform_grid(a: f64, b: f64, n: usize, closed: bool) -> Vec<f64> {
    let steps = if closed { n } else { n.saturating_sub(1).max(1) };
    (0..n).map(|k| a + (b - a) * k as f64 / steps as f64).collect()
}

/// Total curvature of the polygon inscribed in `curve` at the grid points.
pub fn inscribed_total_curvature<F>(curve: F, grid: &[f64], closed: bool) -> Result<f64>
where
    F: Fn(f64) -> Point3d,
{
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("parameter grid must be strictly increasing".into()));
    }
    let pts = grid.iter().map(|&t| curve(t)).collect();
    let poly = SpacePolygon::with_tolerances(pts, closed, Tolerances::default())?;
    Ok(total_curvature(&poly)?.total)
}
