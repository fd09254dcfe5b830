use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{Point3d, Vector3};
use crate::tol::Tolerances;

/// An undirected edge with its two faces. `faces[0]` traverses `v[0] -> v[1]`,
/// `faces[1]` the opposite direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub v: [usize; 2],
    pub faces: [usize; 2],
}

/// A closed, oriented polygonal 2-manifold in `R^3`.
///
/// Validation requires every edge to be used once in each direction, every
/// vertex star to be a single cycle of faces, and every face to have a
/// nonzero area vector.
#[derive(Debug, Clone)]
pub struct PolyMesh {
    vertices: Vec<Point3d>,
    faces: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    /// Face `i`'s area vector (area times unit normal).
    area_vectors: Vec<Vector3>,
    /// Incident faces of each vertex in cyclic order.
    stars: Vec<Vec<usize>>,
    components: usize,
    tol: Tolerances,
}

impl PolyMesh {
    pub fn new(vertices: Vec<Point3d>, faces: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_tolerances(vertices, faces, Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<Point3d>, faces: Vec<Vec<usize>>, tol: Tolerances) -> Result<Self> {
        let nv = vertices.len();
        if faces.is_empty() {
            return Err(Error::NonManifold("mesh has no faces".into()));
        }
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::NonManifold(format!("face {fi} has fewer than 3 vertices")));
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= nv) {
                return Err(Error::InvalidParameter(format!("face {fi} references vertex {bad} of {nv}")));
            }
            let mut sorted = f.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NonManifold(format!("face {fi} repeats a vertex")));
            }
        }

        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..f.len() {
                let e = (f[k], f[(k + 1) % f.len()]);
                if let Some(other) = directed.insert(e, fi) {
                    return Err(Error::NonManifold(format!(
                        "directed edge {e:?} used by faces {other} and {fi} (inconsistent orientation or more than two faces)"
                    )));
                }
            }
        }
        let mut edges = Vec::new();
        for (&(a, b), &f) in &directed {
            match directed.get(&(b, a)) {
                None => {
                    return Err(Error::NonManifold(format!("edge ({a}, {b}) is on the boundary")));
                }
                Some(&g) if a < b => edges.push(Edge { v: [a, b], faces: [f, g] }),
                Some(_) => {}
            }
        }
        edges.sort_by_key(|e| e.v);

        let mut incident = vec![0usize; nv];
        for f in &faces {
            for &v in f {
                incident[v] += 1;
            }
        }
        if let Some(v) = incident.iter().position(|&c| c == 0) {
            return Err(Error::NonManifold(format!("vertex {v} belongs to no face")));
        }

        // position of each vertex inside each face, for the star walk
        let successor = |f: usize, v: usize| -> usize {
            let face = &faces[f];
            let k = face.iter().position(|&x| x == v).unwrap();
            face[(k + 1) % face.len()]
        };
        let mut first_face = vec![usize::MAX; nv];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if first_face[v] == usize::MAX {
                    first_face[v] = fi;
                }
            }
        }
        let mut stars = Vec::with_capacity(nv);
        for v in 0..nv {
            let start = first_face[v];
            let mut star = vec![start];
            let mut f = start;
            loop {
                let w = successor(f, v);
                let g = directed[&(w, v)];
                if g == start {
                    break;
                }
                star.push(g);
                f = g;
                if star.len() > incident[v] {
                    break;
                }
            }
            if star.len() != incident[v] {
                return Err(Error::NonManifold(format!(
                    "vertex {v}: faces around it form more than one fan"
                )));
            }
            stars.push(star);
        }

        let scale = bbox_diagonal(&vertices);
        let mut area_vectors = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            let a = area_vector(&vertices, f);
            if a.norm() <= tol.degenerate * scale * scale {
                return Err(Error::DegenerateNormal { face: fi });
            }
            area_vectors.push(a);
        }

        let components = count_components(faces.len(), &edges);
        Ok(Self { vertices, faces, edges, area_vectors, stars, components, tol })
    }

    pub fn vertices(&self) -> &[Point3d] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Undirected edges sorted by vertex pair.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn face_normal(&self, f: usize) -> Vector3 {
        self.area_vectors[f].normalize()
    }

    pub fn face_area(&self, f: usize) -> f64 {
        self.area_vectors[f].norm()
    }

    pub fn face_centroid(&self, f: usize) -> Point3d {
        let face = &self.faces[f];
        let sum = face.iter().fold(Vector3::zeros(), |acc, &v| acc + self.vertices[v].coords);
        Point3d::from(sum / face.len() as f64)
    }

    /// Faces around `v` in cyclic order, consistent with the orientation.
    pub fn vertex_star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    pub fn area(&self) -> f64 {
        self.area_vectors.iter().map(|a| a.norm()).sum()
    }

    /// Signed enclosed volume (positive for outward orientation).
    pub fn volume(&self) -> f64 {
        self.faces
            .iter()
            .zip(&self.area_vectors)
            .map(|(f, a)| self.vertices[f[0]].coords.dot(a))
            .sum::<f64>()
            / 3.0
    }

    pub fn diameter_bound(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    /// Applies `f` to every vertex; the combinatorics are unchanged.
    pub fn map_vertices(&self, f: impl Fn(&Point3d) -> Point3d) -> Result<Self> {
        Self::with_tolerances(self.vertices.iter().map(f).collect(), self.faces.clone(), self.tol)
    }
}

fn bbox_diagonal(pts: &[Point3d]) -> f64 {
    let Some(first) = pts.first() else { return 0.0 };
    let (mut lo, mut hi) = (*first, *first);
    for p in pts {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// `1/2 sum p_i x p_{i+1}`, exact for planar polygons.
fn area_vector(vertices: &[Point3d], face: &[usize]) -> Vector3 {
    let o = vertices[face[0]];
    let mut s = Vector3::zeros();
    for k in 1..face.len() - 1 {
        let a = vertices[face[k]] - o;
        let b = vertices[face[k + 1]] - o;
        s += a.cross(&b);
    }
    s * 0.5
}

fn count_components(nf: usize, edges: &[Edge]) -> usize {
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.faces[0]), find(&mut parent, e.faces[1]));
        if a != b {
            parent[a] = b;
        }
    }
    (0..nf).filter(|&x| find(&mut parent, x) == x).count()
}

/// Anything that exposes a validated closed polygonal surface.
pub trait Surface {
    fn mesh(&self) -> &PolyMesh;
}

impl Surface for PolyMesh {
    fn mesh(&self) -> &PolyMesh {
        self
    }
}

/// Closed oriented triangle mesh.
#[derive(Debug, Clone)]
pub struct TriangleMesh(PolyMesh);

impl TriangleMesh {
    pub fn new(vertices: Vec<Point3d>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        Self::with_tolerances(vertices, triangles, Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<Point3d>, triangles: Vec<[usize; 3]>, tol: Tolerances) -> Result<Self> {
        let faces = triangles.into_iter().map(|t| t.to_vec()).collect();
        PolyMesh::with_tolerances(vertices, faces, tol).map(TriangleMesh)
    }

    pub fn from_poly(mesh: PolyMesh) -> Result<Self> {
        if let Some(f) = mesh.faces.iter().position(|f| f.len() != 3) {
            return Err(Error::InvalidParameter(format!("face {f} is not a triangle")));
        }
        Ok(TriangleMesh(mesh))
    }

    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.0.faces.iter().map(|f| [f[0], f[1], f[2]])
    }

    pub fn into_poly(self) -> PolyMesh {
        self.0
    }
}

impl Surface for TriangleMesh {
    fn mesh(&self) -> &PolyMesh {
        &self.0
    }
}

impl std::ops::Deref for TriangleMesh {
    type Target = PolyMesh;
    fn deref(&self) -> &PolyMesh {
        &self.0
    }
}

/// Closed polygonal surface bounding a convex body. Faces are planar and all
/// vertices lie on the inner side of every face plane.
#[derive(Debug, Clone)]
pub struct ConvexPolyhedron(PolyMesh);

impl ConvexPolyhedron {
    pub fn new(vertices: Vec<Point3d>, faces: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_poly(PolyMesh::new(vertices, faces)?)
    }

    pub fn from_poly(mesh: PolyMesh) -> Result<Self> {
        let tol = mesh.tol;
        let diam = mesh.diameter_bound();
        for f in 0..mesh.num_faces() {
            let n = mesh.face_normal(f);
            let c = mesh.face_centroid(f);
            for &v in &mesh.faces[f] {
                let off = n.dot(&(mesh.vertices[v] - c));
                if off.abs() > tol.planar * diam {
                    return Err(Error::NotConvex(format!("face {f} is not planar (vertex {v} off by {off:e})")));
                }
            }
            for (v, p) in mesh.vertices.iter().enumerate() {
                let off = n.dot(&(p - c));
                if off > tol.convex * diam {
                    return Err(Error::NotConvex(format!(
                        "vertex {v} lies {off:e} outside the plane of face {f}"
                    )));
                }
            }
        }
        if mesh.volume() <= 0.0 {
            return Err(Error::NotConvex("faces are oriented inward".into()));
        }
        Ok(ConvexPolyhedron(mesh))
    }

    pub fn from_triangles(mesh: TriangleMesh) -> Result<Self> {
        Self::from_poly(mesh.0)
    }

    pub fn into_poly(self) -> PolyMesh {
        self.0
    }
}

impl Surface for ConvexPolyhedron {
    fn mesh(&self) -> &PolyMesh {
        &self.0
    }
}

impl std::ops::Deref for ConvexPolyhedron {
    type Target = PolyMesh;
    fn deref(&self) -> &PolyMesh {
        &self.0
    }
}
