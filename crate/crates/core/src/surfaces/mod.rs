//! Embedded closed polyhedral surfaces: intrinsic and extrinsic curvature,
//! Steiner polynomials and integral-geometric identities.

mod curvature;
mod integral;
mod mesh;
mod steiner;

pub use curvature::{
    edge_exterior_angles, euler_characteristic, gauss_bonnet_check, total_mean_curvature,
    vertex_angle_defect, vertex_exterior_angle, EdgeAngle, GaussBonnet,
};
pub use integral::{
    mean_projection_area, mean_width, planar_mean_width, planar_perimeter, projection_area,
    support_value,
};
pub use mesh::{ConvexPolyhedron, Edge, PolyMesh, Surface, TriangleMesh};
pub use steiner::{steiner_polynomials, SteinerCoefficients};
