//! File formats: OFF surfaces, JSON complexes and polygons, CSV/JSON tables,
//! and the run configuration shared by the command-line tool.

mod complex_json;
mod config;
mod off;
mod polygon;
mod table;

pub use complex_json::{complex_to_json, parse_complex_json, parse_complex_json_with, ComplexFile};
pub use config::{Format, RunConfig};
pub use off::{parse_off, parse_off_with, to_off, OffSurface};
pub use polygon::{parse_polygon_json, PolygonFile};
pub use table::{render_json, render_rows};
