use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifolds::{PolyhedralMetric, SimplicialComplex};
use crate::tol::Tolerances;

/// On-disk form of a polyhedral metric:
/// `{"dim": n, "top_simplices": [[ids]], "lengths": [[i, j, value]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub dim: usize,
    pub top_simplices: Vec<Vec<usize>>,
    pub lengths: Vec<(usize, usize, f64)>,
}

impl ComplexFile {
    pub fn from_metric(c: &PolyhedralMetric) -> Self {
        Self {
            dim: c.dim(),
            top_simplices: c.complex().top_simplices().to_vec(),
            lengths: c.complex().edges().iter().zip(c.lengths()).map(|(e, &l)| (e[0], e[1], l)).collect(),
        }
    }

    pub fn into_metric(self, tol: Tolerances) -> Result<PolyhedralMetric> {
        let parse = |message: String| Error::Parse { line: 0, column: 0, message };
        for (i, t) in self.top_simplices.iter().enumerate() {
            if t.len() != self.dim + 1 {
                return Err(parse(format!(
                    "top simplex {i} has {} vertices but dim is {} (expected {})",
                    t.len(),
                    self.dim,
                    self.dim + 1
                )));
            }
        }
        let mut given = BTreeMap::new();
        for &(a, b, l) in &self.lengths {
            if a == b {
                return Err(parse(format!("length given for the loop ({a}, {a})")));
            }
            if !(l.is_finite() && l > 0.0) {
                return Err(parse(format!("length of edge ({a}, {b}) must be positive, got {l}")));
            }
            if given.insert((a.min(b), a.max(b)), l).is_some() {
                return Err(parse(format!("duplicate length for edge ({}, {})", a.min(b), a.max(b))));
            }
        }
        let complex = SimplicialComplex::new(self.dim, self.top_simplices)?;
        let mut lengths = Vec::with_capacity(complex.edges().len());
        for e in complex.edges() {
            match given.remove(&(e[0], e[1])) {
                Some(l) => lengths.push(l),
                None => return Err(Error::MissingLength { edge: (e[0], e[1]) }),
            }
        }
        if let Some((&(a, b), _)) = given.iter().next() {
            return Err(parse(format!("length given for ({a}, {b}), which is not an edge")));
        }
        PolyhedralMetric::with_tolerances(complex, lengths, tol)
    }
}

pub fn parse_complex_json(text: &str) -> Result<PolyhedralMetric> {
    parse_complex_json_with(text, Tolerances::default())
}

pub fn parse_complex_json_with(text: &str, tol: Tolerances) -> Result<PolyhedralMetric> {
    let file: ComplexFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    file.into_metric(tol)
}

/// Pretty-printed JSON; floats use the shortest round-trip representation.
pub fn complex_to_json(c: &PolyhedralMetric) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_metric(c)).expect("plain data serializes")
}
