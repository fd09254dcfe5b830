use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{SphericalPolygon, Vector3};
use crate::mc::{self, EstimateWithError, McConfig};

const TIE_EPS: f64 = 1e-12;

/// Length of a spherical polygon as `pi` times the mean number of crossings
/// with a uniformly random great circle `v^perp`.
///
/// A minor arc `pq` meets `v^perp` exactly when `<p, v>` and `<q, v>` have
/// opposite signs. Directions with a vertex within `1e-12` of the circle are
/// redrawn.
pub fn crofton_length_estimate(s: &SphericalPolygon, samples: usize, seed: u64) -> Result<EstimateWithError> {
    if samples < 100 {
        return Err(Error::InvalidParameter(format!("need at least 100 samples, got {samples}")));
    }
    let verts: Vec<Vector3> = s.vertices().iter().map(|v| *v.as_vector()).collect();
    let n = verts.len();
    let arcs = if s.is_closed() { n } else { n - 1 };
    let est = mc::estimate(McConfig::new(samples, seed), |rng| loop {
        let v = mc::uniform_sphere(rng);
        let dots: Vec<f64> = verts.iter().map(|p| p.dot(&v)).collect();
        if dots.iter().any(|d| d.abs() < TIE_EPS) {
            continue;
        }
        let crossings = (0..arcs)
            .filter(|&i| (dots[i] > 0.0) != (dots[(i + 1) % n] > 0.0))
            .count();
        break crossings as f64;
    });
    Ok(est.scaled(PI))
}
