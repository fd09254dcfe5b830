use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Pure closed pseudo-manifold of dimension `n`, stored with its full face
/// lattice. Faces are sorted vertex-id lists; every face list is in
/// lexicographic order so that reports are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    dim: usize,
    faces: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// For every face, the top simplices containing it.
    cofaces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds the face lattice and checks that every `(n-1)`-face lies in
    /// exactly two top simplices and that the complex is connected.
    ///
    /// Only the pseudo-manifold condition is verified; links of lower
    /// dimensional faces are not checked to be spheres.
    pub fn new(dim: usize, top_simplices: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("complex dimension must be at least 1".into()));
        }
        if top_simplices.is_empty() {
            return Err(Error::NonManifold("no top simplices".into()));
        }
        let mut tops = Vec::with_capacity(top_simplices.len());
        for (i, t) in top_simplices.into_iter().enumerate() {
            if t.len() != dim + 1 {
                return Err(Error::InvalidParameter(format!(
                    "top simplex {i} has {} vertices, expected {}",
                    t.len(),
                    dim + 1
                )));
            }
            let mut s = t.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!("top simplex {i} repeats a vertex: {t:?}")));
            }
            tops.push(s);
        }
        tops.sort();
        if let Some(w) = tops.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NonManifold(format!("top simplex {:?} appears twice", w[0])));
        }

        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for t in &tops {
            for mask in 1u32..(1 << (dim + 1)) {
                let face: Vec<usize> = (0..=dim).filter(|b| mask & (1 << b) != 0).map(|b| t[b]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let faces: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        let mut cofaces: Vec<Vec<Vec<usize>>> = faces.iter().map(|fs| vec![Vec::new(); fs.len()]).collect();
        for (ti, t) in tops.iter().enumerate() {
            for mask in 1u32..(1 << (dim + 1)) {
                let face: Vec<usize> = (0..=dim).filter(|b| mask & (1 << b) != 0).map(|b| t[b]).collect();
                let k = face.len() - 1;
                cofaces[k][index[k][&face]].push(ti);
            }
        }

        for (i, c) in cofaces[dim - 1].iter().enumerate() {
            if c.len() != 2 {
                return Err(Error::NonManifold(format!(
                    "{}-face {:?} lies in {} top simplices (expected 2)",
                    dim - 1,
                    faces[dim - 1][i],
                    c.len()
                )));
            }
        }

        let complex = Self { dim, faces, index, cofaces };
        let comps = complex.count_components();
        if comps != 1 {
            return Err(Error::NonManifold(format!("complex has {comps} connected components")));
        }
        Ok(complex)
    }

    fn count_components(&self) -> usize {
        let n = self.faces[self.dim].len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for pair in &self.cofaces[self.dim - 1] {
            let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted `k`-faces.
    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        &self.faces[k]
    }

    pub fn top_simplices(&self) -> &[Vec<usize>] {
        &self.faces[self.dim]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces[0].iter().map(|f| f[0])
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.faces[1]
    }

    /// Position of a sorted face in [`faces`](Self::faces).
    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        let k = face.len().checked_sub(1)?;
        self.index.get(k)?.get(face).copied()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = if a < b { [a, b] } else { [b, a] };
        self.face_index(&e)
    }

    /// Indices of the top simplices containing the face.
    pub fn top_cofaces(&self, face: &[usize]) -> &[usize] {
        let k = face.len() - 1;
        match self.index[k].get(face) {
            Some(&i) => &self.cofaces[k][i],
            None => &[],
        }
    }

    /// `(f_0, .., f_n)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    /// Every face (of any dimension) containing `face`, ordered by dimension
    /// and then lexicographically.
    pub fn faces_containing(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for &ti in self.top_cofaces(face) {
            let t = &self.faces[self.dim][ti];
            let rest: Vec<usize> = t.iter().copied().filter(|v| !face.contains(v)).collect();
            for mask in 0u32..(1 << rest.len()) {
                let mut f = face.to_vec();
                f.extend((0..rest.len()).filter(|b| mask & (1 << b) != 0).map(|b| rest[b]));
                f.sort_unstable();
                out.insert((f.len(), f));
            }
        }
        out.into_iter().map(|(_, f)| f).collect()
    }
}
