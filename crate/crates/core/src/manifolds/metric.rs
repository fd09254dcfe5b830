use std::f64::consts::PI;

use serde::Serialize;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::geom::MetricSimplex;
use crate::tol::Tolerances;

/// A simplicial complex together with a length for every edge.
#[derive(Debug, Clone)]
pub struct PolyhedralMetric {
    complex: SimplicialComplex,
    /// Indexed like `complex.edges()`.
    lengths: Vec<f64>,
    tol: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub total_volume: f64,
}

impl PolyhedralMetric {
    /// `lengths` is indexed like `complex.edges()`.
    pub fn new(complex: SimplicialComplex, lengths: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(complex, lengths, Tolerances::default())
    }

    pub fn with_tolerances(complex: SimplicialComplex, lengths: Vec<f64>, tol: Tolerances) -> Result<Self> {
        if lengths.len() != complex.edges().len() {
            return Err(Error::InvalidParameter(format!(
                "{} lengths for {} edges",
                lengths.len(),
                complex.edges().len()
            )));
        }
        let m = Self { complex, lengths, tol };
        for t in m.complex.top_simplices() {
            m.simplex(t)?;
        }
        Ok(m)
    }

    /// Builds the lengths from a function of the edge's endpoints.
    pub fn from_fn(complex: SimplicialComplex, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let lengths = complex.edges().iter().map(|e| f(e[0], e[1])).collect();
        Self::new(complex, lengths)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn length(&self, a: usize, b: usize) -> Option<f64> {
        self.complex.edge_index(a, b).map(|i| self.lengths[i])
    }

    /// Same complex, new lengths (revalidated).
    pub fn with_lengths(&self, lengths: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(self.complex.clone(), lengths, self.tol)
    }

    /// The Euclidean simplex on a sorted face. Errors carry global vertex ids.
    pub fn simplex(&self, face: &[usize]) -> Result<MetricSimplex> {
        let k = face.len() - 1;
        let mut lengths = Vec::with_capacity(k * (k + 1) / 2);
        for a in 0..=k {
            for b in a + 1..=k {
                let l = self.length(face[a], face[b]).ok_or_else(|| Error::BadFace {
                    face: face.to_vec(),
                    detail: "not a face of the complex".into(),
                })?;
                lengths.push(l);
            }
        }
        MetricSimplex::with_tolerances(k, lengths, self.tol).map_err(|e| match e {
            Error::UnrealizableMetric { simplex, detail } => Error::UnrealizableMetric {
                simplex: simplex.iter().map(|&i| face[i]).collect(),
                detail,
            },
            other => other,
        })
    }

    pub fn total_volume(&self) -> Result<f64> {
        self.complex
            .top_simplices()
            .iter()
            .map(|t| self.simplex(t).map(|s| s.volume()))
            .sum()
    }

    pub fn report(&self) -> Result<ValidationReport> {
        Ok(ValidationReport {
            dim: self.dim(),
            f_vector: self.complex.f_vector(),
            euler_characteristic: self.complex.euler_characteristic(),
            total_volume: self.total_volume()?,
        })
    }
}

/// `sum_k (-1)^k f_k`.
pub fn euler_characteristic(c: &PolyhedralMetric) -> i64 {
    c.complex.euler_characteristic()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodimTwoFace {
    pub face: Vec<usize>,
    pub cone_angle: f64,
    /// `2 pi - cone_angle`; either sign is possible.
    pub deficit: f64,
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureTable {
    pub rows: Vec<CodimTwoFace>,
}

impl CurvatureTable {
    pub fn max_abs_deficit(&self) -> f64 {
        self.rows.iter().map(|r| r.deficit.abs()).fold(0.0, f64::max)
    }

    /// Faces whose deficit exceeds the singular threshold.
    pub fn singular(&self, threshold: f64) -> impl Iterator<Item = &CodimTwoFace> {
        self.rows.iter().filter(move |r| r.deficit.abs() > threshold)
    }
}

/// Position of each vertex of `face` inside the sorted simplex `t`.
pub(crate) fn local_indices(t: &[usize], face: &[usize]) -> Vec<usize> {
    face.iter().map(|v| t.iter().position(|w| w == v).expect("face of simplex")).collect()
}

/// Cone angle (sum of dihedral angles of the incident top simplices) and
/// deficit at every codimension-2 face.
pub fn cone_angles(c: &PolyhedralMetric) -> Result<CurvatureTable> {
    let n = c.dim();
    if n < 2 {
        return Err(Error::InvalidParameter("cone angles need dimension at least 2".into()));
    }
    let tops = c.complex.top_simplices();
    let simplices: Vec<MetricSimplex> = tops.iter().map(|t| c.simplex(t)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(c.complex.faces(n - 2).len());
    for q in c.complex.faces(n - 2) {
        let mut theta = 0.0;
        for &ti in c.complex.top_cofaces(q) {
            theta += simplices[ti].dihedral_angle(&local_indices(&tops[ti], q))?;
        }
        let volume = if q.len() == 1 { 1.0 } else { c.simplex(q)?.volume() };
        rows.push(CodimTwoFace { face: q.clone(), cone_angle: theta, deficit: 2.0 * PI - theta, volume });
    }
    Ok(CurvatureTable { rows })
}

/// Discrete total scalar curvature `F = sum_Q K_Q vol(Q)`.
pub fn regge_functional(c: &PolyhedralMetric) -> Result<f64> {
    Ok(cone_angles(c)?.rows.iter().map(|r| r.deficit * r.volume).sum())
}

/// `dF/dl_e = sum_{Q > e} K_Q dvol(Q)/dl_e`; the derivatives of the cone
/// angles cancel. In dimension 3 this is the deficit of the edge itself.
pub fn regge_gradient(c: &PolyhedralMetric) -> Result<Vec<f64>> {
    let table = cone_angles(c)?;
    let mut grad = vec![0.0; c.lengths.len()];
    for row in &table.rows {
        if row.face.len() < 2 {
            continue;
        }
        let s = c.simplex(&row.face)?;
        for ((a, b), d) in s.edges().zip(s.volume_gradient()) {
            let e = c.complex.edge_index(row.face[a], row.face[b]).expect("edge of face");
            grad[e] += row.deficit * d;
        }
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::fixtures;

    #[test]
    fn regular_three_sphere() {
        let c = fixtures::simplex_boundary(3, 1.0).unwrap();
        let deficit = 2.0 * PI - 3.0 * (1.0f64 / 3.0).acos();
        let table = cone_angles(&c).unwrap();
        assert_eq!(table.rows.len(), 10);
        for r in &table.rows {
            assert!((r.deficit - deficit).abs() < 1e-12);
            assert!((r.volume - 1.0).abs() < 1e-15);
        }
        assert!((regge_functional(&c).unwrap() - 10.0 * deficit).abs() < 1e-11);
        for (g, r) in regge_gradient(&c).unwrap().iter().zip(&table.rows) {
            assert!((g - r.deficit).abs() < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_surface_deficits() {
        let c = fixtures::simplex_boundary(2, 1.0).unwrap();
        for r in cone_angles(&c).unwrap().rows {
            assert!((r.deficit - PI).abs() < 1e-14);
        }
        // Gauss-Bonnet makes F constant in dimension 2
        assert!(regge_gradient(&c).unwrap().iter().all(|g| *g == 0.0));
    }

    #[test]
    fn flat_torus_is_flat() {
        let c = fixtures::flat_torus_3d(3).unwrap();
        let table = cone_angles(&c).unwrap();
        assert!(table.max_abs_deficit() < 1e-9);
        assert_eq!(table.singular(1e-9).count(), 0);
        assert!(regge_functional(&c).unwrap().abs() < 1e-9);
        assert_eq!(euler_characteristic(&c), 0);
    }

    #[test]
    fn scaling_behaviour() {
        let c = fixtures::simplex_boundary(3, 1.0).unwrap();
        let f = regge_functional(&c).unwrap();
        let scaled = c.with_lengths(c.lengths().iter().map(|l| l * 2.5).collect()).unwrap();
        assert!((regge_functional(&scaled).unwrap() - 2.5 * f).abs() < 1e-10);
        let c4 = fixtures::simplex_boundary(4, 1.0).unwrap();
        let f4 = regge_functional(&c4).unwrap();
        let s4 = c4.with_lengths(c4.lengths().iter().map(|l| l * 2.0).collect()).unwrap();
        let t1 = cone_angles(&c4).unwrap();
        let t2 = cone_angles(&s4).unwrap();
        for (a, b) in t1.rows.iter().zip(&t2.rows) {
            assert!((a.deficit - b.deficit).abs() < 1e-12);
        }
        assert!((regge_functional(&s4).unwrap() - 4.0 * f4).abs() < 1e-10);
    }

    #[test]
    fn unrealizable_locus_uses_global_ids() {
        let complex = fixtures::simplex_boundary(3, 1.0).unwrap().complex().clone();
        // edge {3,4} opened to sqrt(3) flattens every tetrahedron containing it
        let r = PolyhedralMetric::from_fn(complex, |a, b| if (a, b) == (3, 4) { 3f64.sqrt() } else { 1.0 });
        match r {
            Err(Error::UnrealizableMetric { simplex, .. }) => {
                assert!(simplex.contains(&3) && simplex.contains(&4), "{simplex:?}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report() {
        let r = fixtures::simplex_boundary(3, 1.0).unwrap().report().unwrap();
        assert_eq!(r.f_vector, vec![5, 10, 10, 5]);
        assert!((r.total_volume - 5.0 / (6.0 * 2f64.sqrt())).abs() < 1e-14);
    }
}
