//! Deterministic test shapes: meshes, convex hulls and abstract complexes.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{Point3d, Vector3};
use crate::manifolds::{PolyhedralMetric, SimplicialComplex};
use crate::mc;
use crate::surfaces::{ConvexPolyhedron, PolyMesh, TriangleMesh};

fn p(x: f64, y: f64, z: f64) -> Point3d {
    Point3d::new(x, y, z)
}

const CUBE_VERTICES: [[f64; 3]; 8] = [
    [0., 0., 0.],
    [1., 0., 0.],
    [1., 1., 0.],
    [0., 1., 0.],
    [0., 0., 1.],
    [1., 0., 1.],
    [1., 1., 1.],
    [0., 1., 1.],
];

const CUBE_FACES: [[usize; 4]; 6] =
    [[0, 3, 2, 1], [4, 5, 6, 7], [0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]];

fn cube_points() -> Vec<Point3d> {
    CUBE_VERTICES.iter().map(|v| p(v[0], v[1], v[2])).collect()
}

/// Unit cube `[0,1]^3` with six square faces.
pub fn cube() -> ConvexPolyhedron {
    ConvexPolyhedron::new(cube_points(), CUBE_FACES.iter().map(|f| f.to_vec()).collect())
        .expect("unit cube is a valid convex polyhedron")
}

/// Unit cube with every square split along a diagonal.
pub fn cube_mesh() -> TriangleMesh {
    let tris = CUBE_FACES.iter().flat_map(|f| [[f[0], f[1], f[2]], [f[0], f[2], f[3]]]).collect();
    TriangleMesh::new(cube_points(), tris).expect("triangulated cube is valid")
}

/// Regular tetrahedron with unit edges, centred at the origin.
pub fn tetrahedron_mesh() -> TriangleMesh {
    let s = 1.0 / (2.0 * 2f64.sqrt());
    let verts = vec![p(s, s, s), p(s, -s, -s), p(-s, s, -s), p(-s, -s, s)];
    TriangleMesh::new(verts, vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]).expect("regular tetrahedron is valid")
}

/// Repeated 4-to-1 subdivision of the icosahedron with every new vertex pushed
/// out to the sphere of radius `radius`. Level `l` has `10 * 4^l + 2` vertices.
pub fn icosphere(radius: f64, level: u32) -> Result<TriangleMesh> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!("icosphere radius must be positive, got {radius}")));
    }
    if level > 8 {
        return Err(Error::InvalidParameter(format!("icosphere level {level} is too large")));
    }
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3> = [
        [-1., g, 0.],
        [1., g, 0.],
        [-1., -g, 0.],
        [1., -g, 0.],
        [0., -1., g],
        [0., 1., g],
        [0., -1., -g],
        [0., 1., -g],
        [g, 0., -1.],
        [g, 0., 1.],
        [-g, 0., -1.],
        [-g, 0., 1.],
    ]
    .iter()
    .map(|v| Vector3::new(v[0], v[1], v[2]).normalize())
    .collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vector3>| {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                verts.push((verts[a] + verts[b]).normalize());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(tris.len() * 4);
        for [a, b, c] in tris {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        tris = next;
    }
    let points = verts.iter().map(|v| Point3d::from(v * radius)).collect();
    TriangleMesh::new(points, tris)
}

/// Torus of revolution sampled on an `m x n` parameter grid, each grid square
/// split into two triangles.
pub fn torus_mesh(major: f64, minor: f64, m: usize, n: usize) -> Result<TriangleMesh> {
    if !(major > minor && minor > 0.0) {
        return Err(Error::InvalidParameter(format!("torus radii need R > r > 0, got R={major}, r={minor}")));
    }
    if m < 3 || n < 3 {
        return Err(Error::InvalidParameter(format!("torus grid needs m, n >= 3, got {m}x{n}")));
    }
    let mut verts = Vec::with_capacity(m * n);
    for i in 0..m {
        let u = 2.0 * PI * i as f64 / m as f64;
        for j in 0..n {
            let v = 2.0 * PI * j as f64 / n as f64;
            let w = major + minor * v.cos();
            verts.push(p(w * u.cos(), w * u.sin(), minor * v.sin()));
        }
    }
    let id = |i: usize, j: usize| (i % m) * n + j % n;
    let mut tris = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    TriangleMesh::new(verts, tris)
}

/// Boundary of a `5 x 3 x 1` block of unit voxels with the cells `(1,1,0)` and
/// `(3,1,0)` removed: a closed surface of genus 2, triangulated.
pub fn genus2_mesh() -> TriangleMesh {
    let filled = |c: [i64; 3]| {
        (0..5).contains(&c[0]) && (0..3).contains(&c[1]) && c[2] == 0 && c != [1, 1, 0] && c != [3, 1, 0]
    };
    let mut ids: HashMap<[i64; 3], usize> = HashMap::new();
    let mut verts = Vec::new();
    let mut tris = Vec::new();
    for x in 0..5 {
        for y in 0..3 {
            let cell = [x, y, 0];
            if !filled(cell) {
                continue;
            }
            for axis in 0..3 {
                for sign in [1i64, -1] {
                    let mut nb = cell;
                    nb[axis] += sign;
                    if filled(nb) {
                        continue;
                    }
                    let (b, c) = ((axis + 1) % 3, (axis + 2) % 3);
                    let mut base = cell;
                    if sign > 0 {
                        base[axis] += 1;
                    }
                    let mut corners = [base; 4];
                    corners[1][b] += 1;
                    corners[2][b] += 1;
                    corners[2][c] += 1;
                    corners[3][c] += 1;
                    if sign < 0 {
                        corners.swap(1, 3);
                    }
                    let q: Vec<usize> = corners
                        .iter()
                        .map(|k| {
                            *ids.entry(*k).or_insert_with(|| {
                                verts.push(p(k[0] as f64, k[1] as f64, k[2] as f64));
                                verts.len() - 1
                            })
                        })
                        .collect();
                    tris.push([q[0], q[1], q[2]]);
                    tris.push([q[0], q[2], q[3]]);
                }
            }
        }
    }
    TriangleMesh::new(verts, tris).expect("voxel surface is a closed manifold")
}

/// Convex hull of `n` seeded uniform points on the unit sphere.
pub fn random_hull(n: usize, seed: u64) -> Result<ConvexPolyhedron> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("a hull needs at least 4 points, got {n}")));
    }
    let mut rng = mc::rng(seed);
    let pts: Vec<Point3d> = (0..n).map(|_| Point3d::from(mc::uniform_sphere(&mut rng))).collect();
    convex_hull(pts)
}

/// Brute-force hull of points in general position (no four coplanar on the
/// hull). Every input point must be a hull vertex.
pub fn convex_hull(pts: Vec<Point3d>) -> Result<ConvexPolyhedron> {
    let n = pts.len();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                let (mut above, mut below) = (false, false);
                for (l, q) in pts.iter().enumerate() {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    let s = normal.dot(&(q - pts[i]));
                    above |= s > 0.0;
                    below |= s < 0.0;
                    if above && below {
                        break;
                    }
                }
                match (above, below) {
                    (false, true) => faces.push(vec![i, j, k]),
                    (true, false) => faces.push(vec![i, k, j]),
                    _ => {}
                }
            }
        }
    }
    let used: std::collections::HashSet<usize> = faces.iter().flatten().copied().collect();
    if used.len() != n {
        return Err(Error::InvalidParameter(format!("{} of {n} points are interior to the hull", n - used.len())));
    }
    ConvexPolyhedron::from_poly(PolyMesh::new(pts, faces)?)
}

/// The boundary of the regular `(n+1)`-simplex as an abstract `n`-manifold.
pub fn simplex_boundary(n: usize, edge: f64) -> Result<PolyhedralMetric> {
    let tops = (0..n + 2).map(|skip| (0..n + 2).filter(|&v| v != skip).collect()).collect();
    PolyhedralMetric::from_fn(SimplicialComplex::new(n, tops)?, |_, _| edge)
}

/// Periodic triangulation of the unit cube on an `m^3` grid, six tetrahedra
/// per grid cell (one per monotone lattice path across the cell), lengths
/// taken from the flat metric.
pub fn flat_torus_3d(m: usize) -> Result<PolyhedralMetric> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("flat torus grid needs m >= 3, got {m}")));
    }
    let id = |c: [usize; 3]| c[0] % m + m * (c[1] % m) + m * m * (c[2] % m);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut tops = Vec::with_capacity(6 * m * m * m);
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for perm in perms {
                    let mut c = [x, y, z];
                    let mut t = vec![id(c)];
                    for axis in perm {
                        c[axis] += 1;
                        t.push(id(c));
                    }
                    tops.push(t);
                }
            }
        }
    }
    let h = 1.0 / m as f64;
    let coord = |v: usize| [v % m, (v / m) % m, v / (m * m)];
    PolyhedralMetric::from_fn(SimplicialComplex::new(3, tops)?, |a, b| {
        let (ca, cb) = (coord(a), coord(b));
        let sq: usize = (0..3)
            .map(|k| {
                let d = (cb[k] + m - ca[k]) % m;
                usize::from(d != 0)
            })
            .sum();
        h * (sq as f64).sqrt()
    })
}

/// [`flat_torus_3d`] with every length multiplied by `1 + noise * u`,
/// `u` uniform in `[-1, 1]`.
pub fn perturbed_flat_torus(m: usize, noise: f64, seed: u64) -> Result<PolyhedralMetric> {
    let flat = flat_torus_3d(m)?;
    let mut rng = mc::rng(seed);
    let lengths = flat.lengths().iter().map(|l| l * (1.0 + noise * rng.random_range(-1.0..=1.0))).collect();
    flat.with_lengths(lengths)
}

/// A triangulated surface as an abstract 2-manifold with its induced
/// edge lengths.
pub fn surface_metric(mesh: &TriangleMesh) -> Result<PolyhedralMetric> {
    let tops = mesh.triangles().map(|t| t.to_vec()).collect();
    let verts = mesh.vertices();
    PolyhedralMetric::from_fn(SimplicialComplex::new(2, tops)?, |a, b| (verts[a] - verts[b]).norm())
}
