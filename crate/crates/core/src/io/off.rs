use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::Point3d;
use crate::surfaces::{ConvexPolyhedron, PolyMesh, TriangleMesh};
use crate::tol::Tolerances;

/// A surface read from an OFF file.
#[derive(Debug, Clone)]
pub enum OffSurface {
    /// Every face is a triangle.
    Triangles(TriangleMesh),
    /// At least one face has more than three corners. Such input is meant
    /// to describe a convex polyhedron; see [`OffSurface::into_convex`].
    Polygons(PolyMesh),
}

impl OffSurface {
    pub fn mesh(&self) -> &PolyMesh {
        match self {
            OffSurface::Triangles(t) => t,
            OffSurface::Polygons(p) => p,
        }
    }

    pub fn into_poly(self) -> PolyMesh {
        match self {
            OffSurface::Triangles(t) => t.into_poly(),
            OffSurface::Polygons(p) => p,
        }
    }

    pub fn into_convex(self) -> Result<ConvexPolyhedron> {
        ConvexPolyhedron::from_poly(self.into_poly())
    }
}

struct Tokens<'a> {
    lines: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
                .filter(|(_, l)| !l.trim().is_empty()),
        );
        Self { lines: it.peekable() }
    }

    /// Next non-empty line as `(line number, [(column, token)])`.
    fn line(&mut self, what: &str) -> Result<(usize, Vec<(usize, &'a str)>)> {
        let Some((n, l)) = self.lines.next() else {
            return Err(Error::Parse { line: 0, column: 0, message: format!("unexpected end of file, expected {what}") });
        };
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in l.char_indices().chain(std::iter::once((l.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s + 1, &l[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        Ok((n, out))
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: (usize, &str), what: &str) -> Result<T> {
    tok.1.parse().map_err(|_| Error::Parse { line, column: tok.0, message: format!("expected {what}, found {:?}", tok.1) })
}

/// Reads an ASCII OFF file.
pub fn parse_off(text: &str) -> Result<OffSurface> {
    parse_off_with(text, Tolerances::default())
}

pub fn parse_off_with(text: &str, tol: Tolerances) -> Result<OffSurface> {
    let mut tokens = Tokens::new(text);
    let (line, mut head) = tokens.line("OFF header")?;
    if head.first().map(|t| t.1) != Some("OFF") {
        let column = head.first().map_or(1, |t| t.0);
        return Err(Error::Parse { line, column, message: "missing OFF header".into() });
    }
    head.remove(0);
    let (line, counts) = if head.is_empty() { tokens.line("element counts")? } else { (line, head) };
    if counts.len() < 2 {
        let column = counts.last().map_or(1, |t| t.0 + t.1.len());
        return Err(Error::Parse { line, column, message: "expected vertex and face counts".into() });
    }
    let nv: usize = number(line, counts[0], "vertex count")?;
    let nf: usize = number(line, counts[1], "face count")?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, toks) = tokens.line("vertex")?;
        if toks.len() < 3 {
            let column = toks.last().map_or(1, |t| t.0 + t.1.len());
            return Err(Error::Parse { line, column, message: "vertex needs three coordinates".into() });
        }
        let mut c = [0.0; 3];
        for k in 0..3 {
            c[k] = number::<f64>(line, toks[k], "coordinate")?;
            if !c[k].is_finite() {
                return Err(Error::Parse { line, column: toks[k].0, message: "coordinate is not finite".into() });
            }
        }
        vertices.push(Point3d::new(c[0], c[1], c[2]));
    }

    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, toks) = tokens.line("face")?;
        let k: usize = number(line, toks[0], "corner count")?;
        if k < 3 {
            return Err(Error::Parse { line, column: toks[0].0, message: format!("face has {k} corners") });
        }
        if toks.len() < k + 1 {
            let column = toks.last().map_or(1, |t| t.0 + t.1.len());
            return Err(Error::Parse { line, column, message: format!("face lists fewer than {k} indices") });
        }
        let mut face = Vec::with_capacity(k);
        for &tok in &toks[1..=k] {
            let index: usize = number(line, tok, "vertex index")?;
            if index >= nv {
                return Err(Error::IndexOutOfRange { line, index, count: nv });
            }
            face.push(index);
        }
        faces.push(face);
    }
    if let Some((line, _)) = tokens.lines.next() {
        return Err(Error::Parse { line, column: 1, message: "trailing data after the last face".into() });
    }

    if faces.iter().all(|f| f.len() == 3) {
        let tris = faces.iter().map(|f| [f[0], f[1], f[2]]).collect();
        Ok(OffSurface::Triangles(TriangleMesh::with_tolerances(vertices, tris, tol)?))
    } else {
        Ok(OffSurface::Polygons(PolyMesh::with_tolerances(vertices, faces, tol)?))
    }
}

/// Writes a mesh as OFF. Coordinates use the shortest representation that
/// reads back to the same `f64`.
pub fn to_off(mesh: &PolyMesh) -> String {
    let mut s = String::new();
    writeln!(s, "OFF\n{} {} 0", mesh.num_vertices(), mesh.num_faces()).unwrap();
    for v in mesh.vertices() {
        writeln!(s, "{:?} {:?} {:?}", v.x, v.y, v.z).unwrap();
    }
    for f in mesh.faces() {
        write!(s, "{}", f.len()).unwrap();
        for i in f {
            write!(s, " {i}").unwrap();
        }
        s.push('\n');
    }
    s
}
