use std::f64::consts::PI;

use serde::Serialize;

use super::curvature::{edge_exterior_angles, vertex_exterior_angle};
use super::mesh::ConvexPolyhedron;
use crate::error::{Error, Result};

/// Coefficients of `vol(N_r) = V0 + V1 r + V2 r^2 + V3 r^3` for a convex
/// polyhedron `N` and its outer parallel body `N_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteinerCoefficients {
    /// Volume.
    pub v0: f64,
    /// Surface area.
    pub v1: f64,
    /// Total mean curvature, `1/2 sum_e beta_e l_e`.
    pub v2: f64,
    /// `1/3 sum_v beta_v`; `4 pi / 3` for every convex body.
    pub v3: f64,
}

impl SteinerCoefficients {
    pub fn volume_at(&self, r: f64) -> f64 {
        self.v0 + r * (self.v1 + r * (self.v2 + r * self.v3))
    }

    /// Area of the parallel surface, the `r`-derivative of [`volume_at`](Self::volume_at).
    pub fn area_at(&self, r: f64) -> f64 {
        self.v1 + r * (2.0 * self.v2 + 3.0 * r * self.v3)
    }

    pub fn sum_edge_terms(&self) -> f64 {
        2.0 * self.v2
    }

    pub fn sum_vertex_angles(&self) -> f64 {
        3.0 * self.v3
    }
}

pub fn steiner_polynomials(p: &ConvexPolyhedron) -> Result<SteinerCoefficients> {
    let edge_sum: f64 = edge_exterior_angles(p).iter().map(|e| e.beta * e.length).sum();
    let vertex_sum: f64 = vertex_exterior_angle(p)?.iter().sum();
    let c = SteinerCoefficients {
        v0: p.volume(),
        v1: p.area(),
        v2: 0.5 * edge_sum,
        v3: vertex_sum / 3.0,
    };
    if (c.v3 - 4.0 * PI / 3.0).abs() > 1e-9 {
        return Err(Error::NotConvex(format!(
            "vertex normal cones cover {vertex_sum} instead of 4 pi"
        )));
    }
    Ok(c)
}
