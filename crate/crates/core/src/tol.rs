use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by validation and the curvature routines.
///
/// `degenerate`, `convex` and `planar` are relative to the scale of the
/// object they are applied to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub unit: f64,
    pub degenerate: f64,
    pub embed: f64,
    pub angle: f64,
    pub turning: f64,
    pub convex: f64,
    pub planar: f64,
    /// Threshold on |K_Q| below which a codimension-2 face counts as flat.
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-9,
            degenerate: 1e-12,
            embed: 1e-9,
            angle: 1e-9,
            turning: 1e-8,
            convex: 1e-9,
            planar: 1e-9,
            singular: 1e-9,
        }
    }
}

impl Tolerances {
    pub const KEYS: [&'static str; 8] = [
        "unit",
        "degenerate",
        "embed",
        "angle",
        "turning",
        "convex",
        "planar",
        "singular",
    ];

    /// Overrides a single threshold by name. Unknown names are rejected.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {key} must be positive, got {value}"
            )));
        }
        let slot = match key {
            "unit" => &mut self.unit,
            "degenerate" => &mut self.degenerate,
            "embed" => &mut self.embed,
            "angle" => &mut self.angle,
            "turning" => &mut self.turning,
            "convex" => &mut self.convex,
            "planar" => &mut self.planar,
            "singular" => &mut self.singular,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown tolerance key {key:?} (expected one of {:?})",
                    Self::KEYS
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}
