use std::f64::consts::PI;

use super::mesh::{ConvexPolyhedron, Surface};
use crate::error::Result;
use crate::geom::{angle_between, SphericalPolygon, UnitVector};

/// Euler characteristic `V - E + F`.
pub fn euler_characteristic<S: Surface>(s: &S) -> i64 {
    let m = s.mesh();
    m.num_vertices() as i64 - m.edges().len() as i64 + m.num_faces() as i64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeAngle {
    pub edge: [usize; 2],
    /// Angle between the two face normals; negative where the surface is
    /// locally concave.
    pub beta: f64,
    pub length: f64,
}

/// Exterior angle and length of every edge, in the mesh's edge order.
pub fn edge_exterior_angles<S: Surface>(s: &S) -> Vec<EdgeAngle> {
    let m = s.mesh();
    m.edges()
        .iter()
        .map(|e| {
            let [f, g] = e.faces;
            let (n1, n2) = (m.face_normal(f), m.face_normal(g));
            let a = m.vertices()[e.v[0]];
            let length = (m.vertices()[e.v[1]] - a).norm();
            let angle = n1.cross(&n2).norm().atan2(n1.dot(&n2));
            let concave = n1.dot(&(m.face_centroid(g) - a)) > 0.0;
            EdgeAngle { edge: e.v, beta: if concave { -angle } else { angle }, length }
        })
        .collect()
}

/// Angle defect `K_v = 2 pi - (sum of face angles at v)` per vertex.
pub fn vertex_angle_defect<S: Surface>(s: &S) -> Result<Vec<f64>> {
    let m = s.mesh();
    let mut sums = vec![0.0; m.num_vertices()];
    for face in m.faces() {
        let n = face.len();
        for k in 0..n {
            let v = face[k];
            let p = m.vertices()[v];
            let prev = m.vertices()[face[(k + n - 1) % n]] - p;
            let next = m.vertices()[face[(k + 1) % n]] - p;
            sums[v] += angle_between(&prev, &next)?;
        }
    }
    Ok(sums.into_iter().map(|a| 2.0 * PI - a).collect())
}

/// Area of the spherical polygon cut out by the normal cone at each vertex
/// of a convex polyhedron.
pub fn vertex_exterior_angle(p: &ConvexPolyhedron) -> Result<Vec<f64>> {
    let tol = p.tolerances();
    (0..p.num_vertices())
        .map(|v| {
            let mut normals: Vec<UnitVector> = Vec::new();
            for &f in p.vertex_star(v) {
                let n = UnitVector::normalize(p.face_normal(f))?;
                // coplanar neighbours contribute a single cone generator
                if normals.last().is_some_and(|m| (m.as_vector() - n.as_vector()).norm() <= tol.unit) {
                    continue;
                }
                normals.push(n);
            }
            while normals.len() > 1
                && (normals[0].as_vector() - normals.last().unwrap().as_vector()).norm() <= tol.unit
            {
                normals.pop();
            }
            if normals.len() < 3 {
                return Ok(0.0);
            }
            SphericalPolygon::build(normals, true, tol)?.area()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussBonnet {
    pub total_curvature: f64,
    pub euler_characteristic: i64,
    pub expected: f64,
    pub residual: f64,
}

impl GaussBonnet {
    /// Residual within `1e-8 (1 + |sum K_v|)`.
    pub fn holds(&self) -> bool {
        self.residual <= 1e-8 * (1.0 + self.total_curvature.abs())
    }
}

pub fn gauss_bonnet_check<S: Surface>(s: &S) -> Result<GaussBonnet> {
    let total: f64 = vertex_angle_defect(s)?.iter().sum();
    let chi = euler_characteristic(s);
    let expected = 2.0 * PI * chi as f64;
    Ok(GaussBonnet {
        total_curvature: total,
        euler_characteristic: chi,
        expected,
        residual: (total - expected).abs(),
    })
}

/// `1/2 sum_e beta_e l_e`, with signed exterior angles on nonconvex meshes.
pub fn total_mean_curvature<S: Surface>(s: &S) -> f64 {
    0.5 * edge_exterior_angles(s).iter().map(|e| e.beta * e.length).sum::<f64>()
}
