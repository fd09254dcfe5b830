use serde::Serialize;

use super::metric::{local_indices, PolyhedralMetric};
use crate::error::{Error, Result};
use crate::geom::external_angle_with;
use crate::mc::{mix_seed, McConfig};

/// A curvature value with its Monte Carlo standard error (zero when every
/// contributing external angle was computed exactly).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LkValue {
    pub value: f64,
    pub stderr: f64,
    pub exact: bool,
}

fn face_seed(base: &McConfig, q: &[usize], t: &[usize]) -> McConfig {
    let mut tag = 0x51AF_u64;
    for &v in q {
        tag = mix_seed(tag, v as u64);
    }
    tag = mix_seed(tag, u64::MAX);
    for &v in t {
        tag = mix_seed(tag, v as u64);
    }
    base.derive(tag)
}

/// `K_Q = sum_{T >= Q} (-1)^(dim T - dim Q) beta(Q, T)` over all faces `T` of
/// the complex containing `Q` (including `Q` itself, with `beta = 1`).
///
/// Normalized convention: the full angle is 1, so at a codimension-2 face
/// this is `1 - sum_i alpha_i` with the incident angles divided by `2 pi`.
pub fn lk_curvature(c: &PolyhedralMetric, q: &[usize], mc: McConfig) -> Result<LkValue> {
    let mut q = q.to_vec();
    q.sort_unstable();
    if c.complex().face_index(&q).is_none() {
        return Err(Error::BadFace { face: q, detail: "not a face of the complex".into() });
    }
    let mut value = 0.0;
    let mut var = 0.0;
    let mut exact = true;
    for t in c.complex().faces_containing(&q) {
        let sign = if (t.len() - q.len()).is_multiple_of(2) { 1.0 } else { -1.0 };
        if t.len() == q.len() {
            value += sign;
            continue;
        }
        let s = c.simplex(&t)?;
        let beta = external_angle_with(&s, &local_indices(&t, &q), face_seed(&mc, &q, &t))?;
        value += sign * beta.value();
        var += beta.stderr().powi(2);
        exact &= beta.is_exact();
    }
    Ok(LkValue { value, stderr: var.sqrt(), exact })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LkRow {
    pub face: Vec<usize>,
    pub curvature: f64,
    pub stderr: f64,
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LkReport {
    pub k: usize,
    pub face_dim: usize,
    pub rows: Vec<LkRow>,
    /// `S_2k = sum_{dim Q = n - 2k} K_Q vol(Q)`.
    pub total: f64,
    pub stderr: f64,
    pub exact: bool,
}

/// Discrete total `k`-th Lipschitz-Killing curvature.
pub fn lk_total(c: &PolyhedralMetric, k: usize, mc: McConfig) -> Result<LkReport> {
    let n = c.dim();
    if 2 * k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds half the dimension {n}")));
    }
    let face_dim = n - 2 * k;
    let mut rows = Vec::new();
    let (mut total, mut var, mut exact) = (0.0, 0.0, true);
    for q in c.complex().faces(face_dim) {
        let kq = lk_curvature(c, q, mc)?;
        let volume = c.simplex(q)?.volume();
        total += kq.value * volume;
        var += (kq.stderr * volume).powi(2);
        exact &= kq.exact;
        rows.push(LkRow { face: q.clone(), curvature: kq.value, stderr: kq.stderr, volume });
    }
    Ok(LkReport { k, face_dim, rows, total, stderr: var.sqrt(), exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CgbReport {
    pub sum: f64,
    pub euler_characteristic: i64,
    pub residual: f64,
    pub stderr: f64,
    pub exact: bool,
}

/// Compares `sum_v K_v` with the Euler characteristic on an even-dimensional
/// closed polyhedral manifold.
pub fn cgb_check(c: &PolyhedralMetric, mc: McConfig) -> Result<CgbReport> {
    let n = c.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    let report = lk_total(c, n / 2, mc)?;
    let chi = c.complex().euler_characteristic();
    Ok(CgbReport {
        sum: report.total,
        euler_characteristic: chi,
        residual: (report.total - chi as f64).abs(),
        stderr: report.stderr,
        exact: report.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::fixtures;
    use crate::manifolds::cone_angles;
    use std::f64::consts::PI;

    #[test]
    fn tetrahedron_surface_vertex() {
        let c = fixtures::simplex_boundary(2, 1.0).unwrap();
        let k = lk_curvature(&c, &[0], McConfig::default()).unwrap();
        assert!(k.exact);
        assert!((k.value - 0.5).abs() < 1e-14);
        let cgb = cgb_check(&c, McConfig::default()).unwrap();
        assert!(cgb.residual < 1e-10);
        assert_eq!(cgb.euler_characteristic, 2);
    }

    #[test]
    fn codim_two_matches_deficit() {
        for c in [fixtures::simplex_boundary(3, 1.0).unwrap(), fixtures::flat_torus_3d(3).unwrap()] {
            let table = cone_angles(&c).unwrap();
            let report = lk_total(&c, 1, McConfig::default()).unwrap();
            assert!(report.exact);
            for (row, lk) in table.rows.iter().zip(&report.rows) {
                assert_eq!(row.face, lk.face);
                let closed_form = 1.0 - row.cone_angle / (2.0 * PI);
                assert!((lk.curvature - closed_form).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn odd_dimension_rejected() {
        let c = fixtures::simplex_boundary(3, 1.0).unwrap();
        assert!(matches!(cgb_check(&c, McConfig::default()), Err(Error::OddDimension(3))));
    }

    #[test]
    fn top_dimensional_faces_have_unit_curvature() {
        let c = fixtures::simplex_boundary(2, 1.0).unwrap();
        let r = lk_total(&c, 0, McConfig::default()).unwrap();
        assert!((r.total - 4.0 * 3f64.sqrt() / 4.0).abs() < 1e-14);
    }
}
