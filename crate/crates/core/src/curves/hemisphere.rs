use nalgebra::{DMatrix, DVector};

use crate::geom::{SphericalPolygon, UnitVector, Vector3};

const MAX_ITERS: usize = 1000;

/// A direction `v` with `<T_i, v> > eps` for every vertex, if the polygon
/// fits in an open hemisphere.
///
/// Equivalent to the origin lying outside the convex hull of the vertices;
/// the closest hull point to the origin, when nonzero, is such a direction.
pub fn open_hemisphere_witness(s: &SphericalPolygon, eps: f64) -> Option<UnitVector> {
    let pts: Vec<Vector3> = s.vertices().iter().map(|v| *v.as_vector()).collect();
    let x = min_norm_point(&pts);
    if x.norm() <= eps {
        return None;
    }
    let v = UnitVector::normalize(x).ok()?;
    pts.iter().all(|p| p.dot(v.as_vector()) > eps).then_some(v)
}

/// Point of minimum norm in the convex hull of `points` (Wolfe's algorithm).
pub fn min_norm_point(points: &[Vector3]) -> Vector3 {
    assert!(!points.is_empty());
    let scale = points.iter().map(|p| p.norm_squared()).fold(0.0, f64::max);
    let tol = 1e-14 * scale.max(f64::MIN_POSITIVE);
    let start = (0..points.len())
        .min_by(|&a, &b| points[a].norm_squared().total_cmp(&points[b].norm_squared()))
        .unwrap();
    let mut corral = vec![start];
    let mut weights = vec![1.0];
    let mut x = points[start];

    for _ in 0..MAX_ITERS {
        let (j, best) = (0..points.len())
            .map(|j| (j, x.dot(&points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if x.norm_squared() - best <= tol || corral.contains(&j) {
            break;
        }
        corral.push(j);
        weights.push(0.0);
        loop {
            let alpha = match affine_minimizer(points, &corral) {
                Some(a) => a,
                None => {
                    // dependent corral: drop the newest point and stop
                    corral.pop();
                    weights.pop();
                    return combine(points, &corral, &weights);
                }
            };
            if alpha.iter().all(|&a| a > 1e-15) {
                weights = alpha;
                x = combine(points, &corral, &weights);
                break;
            }
            let theta = weights
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= 1e-15)
                .map(|(&w, &a)| w / (w - a))
                .fold(1.0f64, f64::min);
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let mut k = 0;
            let mut removed = false;
            while k < corral.len() {
                if weights[k] <= 1e-15 {
                    corral.remove(k);
                    weights.remove(k);
                    removed = true;
                } else {
                    k += 1;
                }
            }
            if !removed {
                // numerical corner: remove the smallest weight
                let (k, _) = weights
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .unwrap();
                corral.remove(k);
                weights.remove(k);
            }
            let sum: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= sum);
        }
    }
    x
}

fn combine(points: &[Vector3], idx: &[usize], w: &[f64]) -> Vector3 {
    idx.iter().zip(w).fold(Vector3::zeros(), |acc, (&i, &c)| acc + points[i] * c)
}

/// Coefficients (summing to 1) of the minimum-norm point of the affine hull.
fn affine_minimizer(points: &[Vector3], idx: &[usize]) -> Option<Vec<f64>> {
    let m = idx.len();
    let mut a = DMatrix::zeros(m + 1, m + 1);
    for r in 0..m {
        for c in 0..m {
            a[(r, c)] = points[idx[r]].dot(&points[idx[c]]);
        }
        a[(r, m)] = 1.0;
        a[(m, r)] = 1.0;
    }
    let mut b = DVector::zeros(m + 1);
    b[m] = 1.0;
    let sol = a.lu().solve(&b)?;
    let alpha: Vec<f64> = sol.iter().take(m).cloned().collect();
    alpha.iter().all(|a| a.is_finite()).then_some(alpha)
}
