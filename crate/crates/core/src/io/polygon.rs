use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polygon file: `{"closed": true, "points": [[x, y], ...]}`. Points all
/// have two coordinates (planar) or all have three (space).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    #[serde(default = "closed_by_default")]
    pub closed: bool,
    pub points: Vec<Vec<f64>>,
}

fn closed_by_default() -> bool {
    true
}

impl PolygonFile {
    /// 2 or 3.
    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }
}

pub fn parse_polygon_json(text: &str) -> Result<PolygonFile> {
    let file: PolygonFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let dim = file.dimension();
    if dim != 2 && dim != 3 {
        return Err(Error::Parse { line: 0, column: 0, message: format!("points must have 2 or 3 coordinates, got {dim}") });
    }
    if let Some(i) = file.points.iter().position(|p| p.len() != dim) {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("point {i} has {} coordinates, expected {dim}", file.points[i].len()),
        });
    }
    if file.points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Parse { line: 0, column: 0, message: "coordinates must be finite".into() });
    }
    Ok(file)
}
