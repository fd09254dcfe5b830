use std::f64::consts::PI;

use rand::Rng;

use super::mesh::ConvexPolyhedron;
use crate::error::{Error, Result};
use crate::geom::{Point2d, Vector3};
use crate::mc::{self, EstimateWithError, McConfig};

const MIN_SAMPLES: usize = 1000;

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    Ok(())
}

/// Area of the orthogonal projection onto `v^perp`. Every point of the
/// shadow is covered by exactly two faces, hence the factor 1/2.
pub fn projection_area(p: &ConvexPolyhedron, v: &Vector3) -> f64 {
    let v = v.normalize();
    0.5 * (0..p.num_faces())
        .map(|f| p.face_normal(f).dot(&v).abs() * p.face_area(f))
        .sum::<f64>()
}

/// Support value `h(v) = max_x <x, v>`.
pub fn support_value(p: &ConvexPolyhedron, v: &Vector3) -> f64 {
    p.vertices().iter().map(|x| x.coords.dot(v)).fold(f64::NEG_INFINITY, f64::max)
}

/// Mean projection area over uniform directions.
pub fn mean_projection_area(p: &ConvexPolyhedron, samples: usize, seed: u64) -> Result<EstimateWithError> {
    check_samples(samples)?;
    Ok(mc::estimate(McConfig::new(samples, seed), |rng| {
        let v = mc::uniform_sphere(rng);
        projection_area(p, &v)
    }))
}

/// Mean width `h(v) + h(-v)` over uniform directions.
pub fn mean_width(p: &ConvexPolyhedron, samples: usize, seed: u64) -> Result<EstimateWithError> {
    check_samples(samples)?;
    Ok(mc::estimate(McConfig::new(samples, seed), |rng| {
        let v = mc::uniform_sphere(rng);
        support_value(p, &v) + support_value(p, &-v)
    }))
}

/// Mean width of a planar point set over uniform directions in the plane.
pub fn planar_mean_width(points: &[Point2d], samples: usize, seed: u64) -> Result<EstimateWithError> {
    check_samples(samples)?;
    if points.is_empty() {
        return Err(Error::InvalidParameter("no points".into()));
    }
    Ok(mc::estimate(McConfig::new(samples, seed), |rng| {
        let t = rng.random_range(0.0..2.0 * PI);
        let (s, c) = t.sin_cos();
        let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| {
            let x = q.x * c + q.y * s;
            (lo.min(x), hi.max(x))
        });
        hi - lo
    }))
}

/// Perimeter of a closed polygon.
pub fn planar_perimeter(points: &[Point2d]) -> f64 {
    let n = points.len();
    (0..n).map(|i| (points[(i + 1) % n] - points[i]).norm()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::fixtures;
    use nalgebra::{Rotation3, Unit};
    use proptest::prelude::*;

    #[test]
    fn cube_shadows() {
        let c = fixtures::cube();
        assert!((projection_area(&c, &Vector3::z()) - 1.0).abs() < 1e-15);
        let diag = Vector3::new(1., 1., 1.);
        assert!((projection_area(&c, &diag) - 3f64.sqrt()).abs() < 1e-15);
        assert!((support_value(&c, &diag) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn too_few_samples() {
        assert!(mean_width(&fixtures::cube(), 10, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn projection_invariances(
            (x, y, z) in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
            (ax, ay, az, angle) in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.0..6.0f64),
            shift in -3.0..3.0f64,
        ) {
            let v = Vector3::new(x, y, z);
            let axis = Vector3::new(ax, ay, az);
            prop_assume!(v.norm() > 1e-3 && axis.norm() > 1e-3);
            let p = fixtures::random_hull(20, 4).unwrap();
            let a = projection_area(&p, &v);
            prop_assert!((a - projection_area(&p, &-v)).abs() <= 1e-12);
            let rot = Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle);
            let moved = ConvexPolyhedron::from_poly(
                p.map_vertices(|q| rot * q + Vector3::repeat(shift)).unwrap(),
            ).unwrap();
            prop_assert!((a - projection_area(&moved, &(rot * v))).abs() <= 1e-12);
        }
    }
}
