use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand_chacha::ChaCha8Rng;

use super::angle::angle_between_n;
use crate::error::{Error, Result};
use crate::mc::{self, EstimateWithError, McConfig};
use crate::tol::Tolerances;

/// Position of the pair `(i, j)`, `i < j`, in the lexicographic list of
/// vertex pairs of a simplex with `nv` vertices.
pub(crate) fn pair_index(i: usize, j: usize, nv: usize) -> usize {
    debug_assert!(i < j && j < nv);
    i * nv - i * (i + 1) / 2 + (j - i - 1)
}

const MAX_SAMPLED_CODIM: usize = 16;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A Euclidean `d`-simplex known only through its edge lengths.
///
/// Construction checks realizability by factoring the Gram matrix of the
/// edge vectors at vertex 0; the resulting coordinates are kept for the
/// angle computations.
#[derive(Debug, Clone)]
pub struct MetricSimplex {
    dim: usize,
    lengths: Vec<f64>,
    /// `dim x (dim + 1)`, column `i` is vertex `i`; vertex 0 at the origin.
    coords: DMatrix<f64>,
    tol: Tolerances,
}

impl MetricSimplex {
    /// `lengths` lists the edges in lexicographic pair order
    /// `(0,1), (0,2), .., (0,d), (1,2), ..`.
    pub fn new(dim: usize, lengths: Vec<f64>) -> Result<Self> {
        Self::with_tolerances(dim, lengths, Tolerances::default())
    }

    pub fn with_tolerances(dim: usize, lengths: Vec<f64>, tol: Tolerances) -> Result<Self> {
        let nv = dim + 1;
        if lengths.len() != nv * dim / 2 {
            return Err(Error::InvalidParameter(format!(
                "a {dim}-simplex has {} edges, got {} lengths",
                nv * dim / 2,
                lengths.len()
            )));
        }
        if let Some(bad) = lengths.iter().position(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::UnrealizableMetric {
                simplex: (0..nv).collect(),
                detail: format!("edge {bad} has non-positive length {}", lengths[bad]),
            });
        }
        let coords = gram_embedding(dim, &lengths, &tol)?;
        Ok(Self { dim, lengths, coords, tol })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut lengths = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..=dim {
            for j in i + 1..=dim {
                lengths.push(f(i, j));
            }
        }
        Self::new(dim, lengths)
    }

    /// Regular simplex with all edges equal to `edge`.
    pub fn regular(dim: usize, edge: f64) -> Result<Self> {
        Self::from_fn(dim, |_, _| edge)
    }

    /// Simplex spanned by `dim + 1` points of any ambient dimension.
    pub fn from_points(points: &[DVector<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("no points".into()));
        }
        Self::from_fn(points.len() - 1, |i, j| (&points[i] - &points[j]).norm())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn num_vertices(&self) -> usize {
        self.dim + 1
    }

    /// Edge lengths in lexicographic pair order.
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn length(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.lengths[pair_index(a, b, self.dim + 1)]
    }

    /// Vertex pairs in the same order as [`lengths`](Self::lengths).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> {
        let nv = self.dim + 1;
        (0..nv).flat_map(move |i| (i + 1..nv).map(move |j| (i, j)))
    }

    /// The sub-simplex on the given (sorted, distinct) local vertices.
    pub fn face(&self, vertices: &[usize]) -> Result<MetricSimplex> {
        self.check_face(vertices)?;
        let k = vertices.len() - 1;
        let mut lengths = Vec::with_capacity(k * (k + 1) / 2);
        for a in 0..=k {
            for b in a + 1..=k {
                lengths.push(self.length(vertices[a], vertices[b]));
            }
        }
        MetricSimplex::with_tolerances(k, lengths, self.tol)
    }

    /// Isometric realization in `R^dim` with vertex 0 at the origin.
    pub fn embed(&self) -> EmbeddedSimplex {
        EmbeddedSimplex {
            points: (0..=self.dim).map(|i| self.coords.column(i).into_owned()).collect(),
        }
    }

    /// Volume from the Cayley-Menger determinant.
    pub fn volume(&self) -> f64 {
        let d = self.dim;
        let cm = self.cayley_menger();
        let sign = if d.is_multiple_of(2) { -1.0 } else { 1.0 };
        let v2 = sign * cm.determinant() / (2f64.powi(d as i32) * factorial(d).powi(2));
        v2.max(0.0).sqrt()
    }

    /// `d vol / d l_e` for every edge, in pair order.
    ///
    /// With `V^2 = c det(CM)` and the symmetric appearance of `l_ij^2` in the
    /// Cayley-Menger matrix, `dV/dl_ij = 2 l_ij V (CM^-1)_(i+1, j+1)`.
    pub fn volume_gradient(&self) -> Vec<f64> {
        if self.dim == 0 {
            return Vec::new();
        }
        let cm = self.cayley_menger();
        let v = self.volume();
        // CM is nonsingular for a nondegenerate simplex
        let inv = cm.try_inverse().expect("Cayley-Menger matrix of a realizable simplex");
        self.edges()
            .map(|(i, j)| 2.0 * self.length(i, j) * v * inv[(i + 1, j + 1)])
            .collect()
    }

    fn cayley_menger(&self) -> DMatrix<f64> {
        let n = self.dim + 2;
        DMatrix::from_fn(n, n, |r, c| match (r, c) {
            (0, 0) => 0.0,
            (0, _) | (_, 0) => 1.0,
            (r, c) => self.length(r - 1, c - 1).powi(2),
        })
    }

    fn check_face(&self, face: &[usize]) -> Result<()> {
        let ok = !face.is_empty()
            && face.windows(2).all(|w| w[0] < w[1])
            && face.iter().all(|&v| v <= self.dim);
        if ok {
            Ok(())
        } else {
            Err(Error::BadFace {
                face: face.to_vec(),
                detail: format!("expected sorted distinct indices in 0..={}", self.dim),
            })
        }
    }

    fn complement(&self, face: &[usize]) -> Vec<usize> {
        (0..=self.dim).filter(|v| !face.contains(v)).collect()
    }

    /// Gradients of the barycentric coordinates. `grad[a]` is normal to the
    /// facet opposite `a` and points into the simplex.
    fn barycentric_gradients(&self) -> Vec<DVector<f64>> {
        let d = self.dim;
        let edges = self.coords.columns(1, d).into_owned();
        let inv = edges.try_inverse().expect("edge matrix of a realizable simplex");
        let mut grads: Vec<DVector<f64>> =
            (0..d).map(|i| inv.row(i).transpose().into_owned()).collect();
        let g0 = -grads.iter().fold(DVector::zeros(d), |acc, g| acc + g);
        grads.insert(0, g0);
        grads
    }

    /// Interior dihedral angle at a codimension-2 face, i.e. the angle between
    /// the two facets containing it. For a triangle this is the angle at a
    /// vertex.
    pub fn dihedral_angle(&self, face: &[usize]) -> Result<f64> {
        self.check_face(face)?;
        if self.dim < 2 || face.len() != self.dim - 1 {
            return Err(Error::BadFace {
                face: face.to_vec(),
                detail: format!("not a codimension-2 face of a {}-simplex", self.dim),
            });
        }
        let rest = self.complement(face);
        let g = self.barycentric_gradients();
        angle_between_n(&g[rest[0]], &(-&g[rest[1]]))
    }

    /// `sum_Q vol(Q) d alpha_Q / d l_e` for every edge `e`, the derivatives
    /// taken by central differences with step `h * l_e`. The sum runs over
    /// the codimension-2 faces `Q` and vanishes for Euclidean simplices.
    pub fn schlafli_residuals(&self, h: f64) -> Result<Vec<f64>> {
        if self.dim < 2 {
            return Err(Error::InvalidParameter("dihedral angles need dimension at least 2".into()));
        }
        let faces: Vec<Vec<usize>> = self
            .edges()
            .map(|(a, b)| (0..=self.dim).filter(|&v| v != a && v != b).collect())
            .collect();
        let volumes: Vec<f64> = faces.iter().map(|q| self.face(q).map(|f| f.volume())).collect::<Result<_>>()?;
        let weighted = |lengths: Vec<f64>| -> Result<f64> {
            let t = MetricSimplex::with_tolerances(self.dim, lengths, self.tol)?;
            faces.iter().zip(&volumes).map(|(q, v)| Ok(v * t.dihedral_angle(q)?)).sum()
        };
        (0..self.lengths.len())
            .map(|e| {
                let step = h * self.lengths[e];
                let mut plus = self.lengths.clone();
                plus[e] += step;
                let mut minus = self.lengths.clone();
                minus[e] -= step;
                Ok((weighted(plus)? - weighted(minus)?) / (2.0 * step))
            })
            .collect()
    }

    /// Outward unit normals of the facets containing `face`; they generate
    /// the normal cone of the simplex at that face.
    fn normal_cone_generators(&self, face: &[usize]) -> Vec<DVector<f64>> {
        let g = self.barycentric_gradients();
        self.complement(face)
            .into_iter()
            .map(|a| -g[a].normalize())
            .collect()
    }
}

/// Realizes the lengths through a Cholesky factorization of the Gram matrix
/// at vertex 0. The first failing pivot names the offending sub-simplex
/// `{0, .., k}`.
fn gram_embedding(dim: usize, lengths: &[f64], tol: &Tolerances) -> Result<DMatrix<f64>> {
    let nv = dim + 1;
    let len = |i: usize, j: usize| -> f64 {
        if i == j {
            0.0
        } else {
            lengths[pair_index(i.min(j), i.max(j), nv)]
        }
    };
    let scale2 = lengths.iter().fold(0.0f64, |m, l| m.max(l * l));
    let gram = DMatrix::from_fn(dim, dim, |a, b| {
        let (i, j) = (a + 1, b + 1);
        0.5 * (len(0, i).powi(2) + len(0, j).powi(2) - len(i, j).powi(2))
    });
    let mut l = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim {
        let pivot = gram[(k, k)] - (0..k).map(|m| l[(k, m)].powi(2)).sum::<f64>();
        if !(pivot > tol.degenerate * scale2) {
            return Err(Error::UnrealizableMetric {
                simplex: (0..=k + 1).collect(),
                detail: format!("squared height {pivot:e} at vertex {}", k + 1),
            });
        }
        let diag = pivot.sqrt();
        l[(k, k)] = diag;
        for i in k + 1..dim {
            let s = gram[(i, k)] - (0..k).map(|m| l[(i, m)] * l[(k, m)]).sum::<f64>();
            l[(i, k)] = s / diag;
        }
    }
    let mut coords = DMatrix::zeros(dim, nv);
    for i in 1..nv {
        for c in 0..dim {
            coords[(c, i)] = l[(i - 1, c)];
        }
    }
    Ok(coords)
}

/// A simplex given by vertex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedSimplex {
    pub points: Vec<DVector<f64>>,
}

impl EmbeddedSimplex {
    pub fn dim(&self) -> usize {
        self.points.len() - 1
    }

    /// `|det(p_1 - p_0, .., p_d - p_0)| / d!`; requires ambient dimension `d`.
    pub fn volume(&self) -> f64 {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |r, c| self.points[c + 1][r] - self.points[0][r]);
        m.determinant().abs() / factorial(d)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        (&self.points[i] - &self.points[j]).norm()
    }
}

/// Normalized external angle: the fraction of the normal directions at a face
/// that lie in the normal cone. Exact up to codimension 3, sampled beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalizedAngle {
    Exact(f64),
    Estimated(EstimateWithError),
}

impl NormalizedAngle {
    pub fn value(&self) -> f64 {
        match self {
            NormalizedAngle::Exact(v) => *v,
            NormalizedAngle::Estimated(e) => e.mean,
        }
    }

    pub fn stderr(&self) -> f64 {
        match self {
            NormalizedAngle::Exact(_) => 0.0,
            NormalizedAngle::Estimated(e) => e.stderr,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NormalizedAngle::Exact(_))
    }
}

/// `beta(face, s)` with the default sampling budget.
pub fn external_angle(s: &MetricSimplex, face: &[usize]) -> Result<NormalizedAngle> {
    external_angle_with(s, face, McConfig::default())
}

/// `beta(face, s)`: normalized solid angle of the normal cone of `s` at
/// `face`, measured in the `(dim s - dim face)`-dimensional normal space.
///
/// Codimension 0 gives 1, codimension 1 gives 1/2, codimension 2 is
/// `(pi - dihedral) / 2pi` and codimension 3 is the spherical excess of the
/// triangle of facet normals over `4pi`. Higher codimensions are estimated by
/// drawing Gaussian vectors in the normal space and testing whether their
/// coordinates in the generator basis are all nonnegative.
pub fn external_angle_with(s: &MetricSimplex, face: &[usize], mc: McConfig) -> Result<NormalizedAngle> {
    s.check_face(face)?;
    let codim = s.dim + 1 - face.len();
    match codim {
        0 => Ok(NormalizedAngle::Exact(1.0)),
        1 => Ok(NormalizedAngle::Exact(0.5)),
        2 => {
            let n = s.normal_cone_generators(face);
            Ok(NormalizedAngle::Exact(angle_between_n(&n[0], &n[1])? / (2.0 * PI)))
        }
        3 => {
            let n = s.normal_cone_generators(face);
            let (a, b, c) = (n[0].dot(&n[1]), n[0].dot(&n[2]), n[1].dot(&n[2]));
            // |n0 . (n1 x n2)| from the triangular factor of the generators
            let r = DMatrix::from_columns(&n).qr().r();
            let triple = (r[(0, 0)] * r[(1, 1)] * r[(2, 2)]).abs();
            let omega = 2.0 * triple.atan2(1.0 + a + b + c);
            Ok(NormalizedAngle::Exact(omega / (4.0 * PI)))
        }
        k if k > MAX_SAMPLED_CODIM => Err(Error::InvalidParameter(format!(
            "external angles are sampled up to codimension {MAX_SAMPLED_CODIM}, got {k}"
        ))),
        k => {
            let n = s.normal_cone_generators(face);
            let gens = DMatrix::from_columns(&n);
            let r = gens.qr().r();
            let r_inv = r
                .solve_upper_triangular(&DMatrix::identity(k, k))
                .ok_or_else(|| Error::UnrealizableMetric {
                    simplex: (0..=s.dim).collect(),
                    detail: "dependent facet normals".into(),
                })?;
            let rows: Vec<f64> = r_inv.transpose().iter().copied().collect();
            let est = mc::estimate(mc, |rng: &mut ChaCha8Rng| {
                let mut z = [0.0f64; MAX_SAMPLED_CODIM];
                for zi in z.iter_mut().take(k) {
                    *zi = mc::gaussian(rng);
                }
                let inside = rows
                    .chunks_exact(k)
                    .all(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>() >= 0.0);
                if inside {
                    1.0
                } else {
                    0.0
                }
            });
            Ok(NormalizedAngle::Estimated(est))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn unit_triangle() -> MetricSimplex {
        MetricSimplex::regular(2, 1.0).unwrap()
    }

    fn right_corner() -> MetricSimplex {
        let pts = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]
        .map(|p| DVector::from_row_slice(&p));
        MetricSimplex::from_points(&pts).unwrap()
    }

    #[test]
    fn pair_order() {
        let nv = 4;
        let pairs: Vec<_> = (0..nv).flat_map(|i| (i + 1..nv).map(move |j| (i, j))).collect();
        for (k, (i, j)) in pairs.into_iter().enumerate() {
            assert_eq!(pair_index(i, j, nv), k);
        }
    }

    #[test]
    fn equilateral_embedding() {
        let e = unit_triangle().embed();
        assert!(e.points[0].norm() < 1e-15);
        assert!((e.points[1][0] - 1.0).abs() < 1e-15 && e.points[1][1].abs() < 1e-15);
        assert!((e.points[2][0] - 0.5).abs() < 1e-15);
        assert!((e.points[2][1] - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_inequality_violation() {
        let r = MetricSimplex::new(2, vec![1.0, 1.0, 3.0]);
        assert!(matches!(r, Err(Error::UnrealizableMetric { .. })));
    }

    #[test]
    fn flat_tetrahedron_is_unrealizable() {
        // two unit equilateral triangles hinged on edge {0,1}, opened flat:
        // apexes 2 and 3 are sqrt(3) apart
        let r = MetricSimplex::from_fn(3, |i, j| if (i, j) == (2, 3) { 3f64.sqrt() } else { 1.0 });
        match r {
            Err(Error::UnrealizableMetric { simplex, .. }) => assert_eq!(simplex, vec![0, 1, 2, 3]),
            other => panic!("expected unrealizable, got {other:?}"),
        }
    }

    #[test]
    fn known_volumes() {
        assert!((MetricSimplex::regular(1, 1.0).unwrap().volume() - 1.0).abs() < 1e-15);
        assert!((unit_triangle().volume() - 3f64.sqrt() / 4.0).abs() < 1e-15);
        let tet = MetricSimplex::regular(3, 1.0).unwrap();
        assert!((tet.volume() - 1.0 / (6.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((tet.embed().volume() - 1.0 / (6.0 * 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(MetricSimplex::new(0, vec![]).unwrap().volume(), 1.0);
    }

    #[test]
    fn known_gradients() {
        let g = MetricSimplex::regular(1, 1.0).unwrap().volume_gradient();
        assert!((g[0] - 1.0).abs() < 1e-14);
        // Heron: d/da of sqrt(s(s-a)(s-b)(s-c)) at a=b=c=1 is 1/(2 sqrt 3)
        for d in unit_triangle().volume_gradient() {
            assert!((d - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-14);
        }
    }

    #[test]
    fn dihedral_angles() {
        let t = unit_triangle();
        for v in 0..3 {
            assert!((t.dihedral_angle(&[v]).unwrap() - PI / 3.0).abs() < 1e-14);
        }
        let tet = MetricSimplex::regular(3, 1.0).unwrap();
        for (i, j) in tet.edges() {
            assert!((tet.dihedral_angle(&[i, j]).unwrap() - (1.0f64 / 3.0).acos()).abs() < 1e-14);
        }
        let rc = right_corner();
        for e in [[0, 1], [0, 2], [0, 3]] {
            assert!((rc.dihedral_angle(&e).unwrap() - PI / 2.0).abs() < 1e-14);
        }
        assert!(matches!(tet.dihedral_angle(&[1, 0]), Err(Error::BadFace { .. })));
        assert!(matches!(tet.dihedral_angle(&[1]), Err(Error::BadFace { .. })));
        assert!(matches!(tet.dihedral_angle(&[1, 4]), Err(Error::BadFace { .. })));
    }

    #[test]
    fn low_codimension_external_angles() {
        let tet = MetricSimplex::regular(3, 1.0).unwrap();
        assert_eq!(external_angle(&tet, &[0, 1, 2, 3]).unwrap().value(), 1.0);
        assert_eq!(external_angle(&tet, &[0, 1, 2]).unwrap().value(), 0.5);
        // right isosceles triangle at the right angle
        let t = MetricSimplex::new(2, vec![1.0, 1.0, 2f64.sqrt()]).unwrap();
        assert!((external_angle(&t, &[0]).unwrap().value() - 0.25).abs() < 1e-15);
        // regular tetrahedron: four congruent vertex cones tile the sphere
        for v in 0..4 {
            assert!((external_angle(&tet, &[v]).unwrap().value() - 0.25).abs() < 1e-14);
        }
        // right corner of [0,1]^3: the outward normals span an octant
        let rc = right_corner();
        assert!((external_angle(&rc, &[0]).unwrap().value() - 0.125).abs() < 1e-14);
    }

    #[test]
    fn regular_four_simplex_vertex_angles_sum_to_one() {
        let s = MetricSimplex::regular(4, 1.0).unwrap();
        let cfg = McConfig::new(1_000_000, 11);
        let mut total = 0.0;
        let mut var = 0.0;
        for v in 0..5 {
            let a = external_angle_with(&s, &[v], cfg.derive(v as u64)).unwrap();
            assert!(!a.is_exact());
            total += a.value();
            var += a.stderr().powi(2);
        }
        assert!((total - 1.0).abs() <= 3.0 * var.sqrt(), "total {total} stderr {}", var.sqrt());
    }

    /// Random simplex in the unit box whose volume is at least a fifth of the
    /// regular simplex on its longest edge.
    fn random_simplex(rng: &mut impl Rng, dim: usize) -> MetricSimplex {
        loop {
            let pts: Vec<DVector<f64>> = (0..=dim)
                .map(|_| DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)))
                .collect();
            let Ok(s) = MetricSimplex::from_points(&pts) else { continue };
            let longest = s.lengths().iter().cloned().fold(0.0, f64::max);
            let reference = MetricSimplex::regular(dim, longest).unwrap().volume();
            if s.volume() > 0.2 * reference {
                return s;
            }
        }
    }

    #[test]
    fn exact_vertex_angles_tile_space() {
        let mut rng = mc::rng(5);
        for dim in 1..=3 {
            for _ in 0..50 {
                let s = random_simplex(&mut rng, dim);
                let sum: f64 = (0..=dim).map(|v| external_angle(&s, &[v]).unwrap().value()).sum();
                assert!((sum - 1.0).abs() < 1e-12, "dim {dim}: {sum}");
            }
        }
    }

    #[test]
    fn codim_two_angle_is_complement_of_dihedral() {
        let mut rng = mc::rng(9);
        for _ in 0..50 {
            let s = random_simplex(&mut rng, 3);
            for (i, j) in s.edges() {
                let beta = external_angle(&s, &[i, j]).unwrap().value();
                let theta = s.dihedral_angle(&[i, j]).unwrap();
                assert!((beta - (0.5 - theta / (2.0 * PI))).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn volume_gradient_matches_central_differences() {
        let mut rng = mc::rng(3);
        let h = 1e-5;
        for k in 0..100 {
            let s = random_simplex(&mut rng, 2 + k % 2);
            let grad = s.volume_gradient();
            for (e, g) in grad.iter().enumerate() {
                let vol_at = |delta: f64| {
                    let mut l = s.lengths().to_vec();
                    l[e] += delta;
                    MetricSimplex::new(s.dim(), l).unwrap().volume()
                };
                let fd = (vol_at(h) - vol_at(-h)) / (2.0 * h);
                assert!((fd - g).abs() <= 1e-8, "edge {e}: {fd} vs {g}");
            }
        }
    }

    #[test]
    fn schlafli_sum_vanishes() {
        let mut rng = mc::rng(11);
        for k in 0..60 {
            let s = random_simplex(&mut rng, 2 + k % 3);
            for r in s.schlafli_residuals(1e-5).unwrap() {
                assert!(r.abs() < 1e-6, "dim {}: {r}", s.dim());
            }
        }
    }

    proptest! {
        #[test]
        fn embedding_reproduces_lengths(seed in any::<u64>(), dim in 1usize..=5) {
            let mut rng = mc::rng(seed);
            let s = random_simplex(&mut rng, dim);
            let e = s.embed();
            for (i, j) in s.edges() {
                prop_assert!((e.distance(i, j) - s.length(i, j)).abs() <= 1e-9);
            }
            let (cm, det) = (s.volume(), e.volume());
            prop_assert!((cm - det).abs() <= 1e-10 * det);
        }
    }
}
