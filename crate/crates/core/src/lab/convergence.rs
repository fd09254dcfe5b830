use rayon::prelude::*;
use serde::Serialize;

use super::analytic::{AnalyticCurve, AnalyticSurfaceOracle};
use super::fixtures::{icosphere, torus_mesh};
use crate::curves::{inscribed_total_curvature, uniform_grid};
use crate::error::{Error, Result};
use crate::surfaces::{total_mean_curvature, vertex_angle_defect, TriangleMesh};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub refinement: usize,
    pub discrete: f64,
    pub analytic: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl ConvergenceRow {
    pub fn new(refinement: usize, discrete: f64, analytic: f64) -> Self {
        let abs_err = (discrete - analytic).abs();
        let rel_err = if analytic == 0.0 { abs_err } else { abs_err / analytic.abs() };
        Self { refinement, discrete, analytic, abs_err, rel_err }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub quantity: String,
    pub family: String,
    pub rows: Vec<ConvergenceRow>,
    /// Absolute error never increased along the schedule.
    pub monotone: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceQuantity {
    Area,
    TotalMeanCurvature,
    TotalGaussCurvature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceFamily {
    /// Refinement is the subdivision level.
    Icosphere { radius: f64 },
    /// Refinement `k` is a `k x k` grid.
    Torus { major: f64, minor: f64 },
}

impl SurfaceFamily {
    fn mesh(&self, k: usize) -> Result<TriangleMesh> {
        match *self {
            SurfaceFamily::Icosphere { radius } => icosphere(radius, k as u32),
            SurfaceFamily::Torus { major, minor } => torus_mesh(major, minor, k, k),
        }
    }

    fn oracle(&self) -> AnalyticSurfaceOracle {
        match *self {
            SurfaceFamily::Icosphere { radius } => AnalyticSurfaceOracle::sphere(radius),
            SurfaceFamily::Torus { major, minor } => AnalyticSurfaceOracle::torus(major, minor),
        }
    }
}

fn finish(quantity: String, family: String, rows: Vec<ConvergenceRow>) -> ConvergenceReport {
    let monotone = rows.windows(2).all(|w| w[1].abs_err <= w[0].abs_err);
    ConvergenceReport { quantity, family, rows, monotone }
}

/// Discrete surface quantity on each mesh of the schedule against its smooth
/// limit.
pub fn surface_convergence(
    quantity: SurfaceQuantity,
    family: SurfaceFamily,
    schedule: &[usize],
) -> Result<ConvergenceReport> {
    let oracle = family.oracle();
    let rows = schedule
        .par_iter()
        .map(|&k| {
            let mesh = family.mesh(k)?;
            let (discrete, analytic) = match quantity {
                SurfaceQuantity::Area => (mesh.area(), oracle.area),
                SurfaceQuantity::TotalMeanCurvature => (total_mean_curvature(&mesh), oracle.total_mean_curvature),
                SurfaceQuantity::TotalGaussCurvature => {
                    (vertex_angle_defect(&mesh)?.iter().sum(), oracle.total_gauss_curvature)
                }
            };
            Ok(ConvergenceRow::new(k, discrete, analytic))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(format!("{quantity:?}"), oracle.name, rows))
}

/// Total curvature of the polygon inscribed at `n` uniform parameters, for
/// each `n` of the schedule.
pub fn curve_convergence(curve: &AnalyticCurve, schedule: &[usize]) -> Result<ConvergenceReport> {
    if let Some(&n) = schedule.iter().find(|&&n| n < 3) {
        return Err(Error::InvalidParameter(format!("inscribed polygons need at least 3 points, got {n}")));
    }
    let (a, b) = curve.domain;
    let rows = schedule
        .par_iter()
        .map(|&n| {
            let grid = uniform_grid(a, b, n, curve.closed);
            let total = inscribed_total_curvature(|t| curve.point(t), &grid, curve.closed)?;
            Ok(ConvergenceRow::new(n, total, curve.total_curvature))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish("InscribedTotalCurvature".into(), curve.name.clone(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_is_exact_at_every_resolution() {
        let r = curve_convergence(&AnalyticCurve::circle(1.0), &[3, 10, 100, 1000]).unwrap();
        for row in &r.rows {
            assert!(row.abs_err < 1e-12, "{row:?}");
        }
    }

    #[test]
    fn icosphere_gauss_total_is_exact() {
        let r = surface_convergence(
            SurfaceQuantity::TotalGaussCurvature,
            SurfaceFamily::Icosphere { radius: 1.0 },
            &[0, 1, 2, 3],
        )
        .unwrap();
        for row in &r.rows {
            assert!((row.discrete - 4.0 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn torus_area_converges() {
        let r = surface_convergence(
            SurfaceQuantity::Area,
            SurfaceFamily::Torus { major: 2.0, minor: 0.5 },
            &[8, 16, 32, 64],
        )
        .unwrap();
        assert!(r.monotone);
        assert!(r.rows.last().unwrap().rel_err < 2e-3);
    }

    #[test]
    fn row_errors_are_consistent() {
        let row = ConvergenceRow::new(1, 3.0, 4.0);
        assert_eq!(row.abs_err, 1.0);
        assert_eq!(row.rel_err, 0.25);
    }
}
