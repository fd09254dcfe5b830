//! Curvature of planar and space polygons.

mod crofton;
mod hemisphere;
mod planar;
mod space;

pub use crofton::crofton_length_estimate;
pub use hemisphere::{min_norm_point, open_hemisphere_witness};
pub use planar::{signed_turning_angles, turning_number, PlanarPolygon};
pub use space::{
    inscribed_total_curvature, tangent_indicatrix, total_curvature, turning_angles, uniform_grid,
    SpacePolygon, TotalCurvature,
};
