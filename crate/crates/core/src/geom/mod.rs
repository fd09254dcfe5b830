//! Low-level exact geometry shared by every other module.

mod angle;
mod simplex;
mod spherical;

pub use angle::{angle_between, angle_between_n, UnitVector, Vector3};
pub use simplex::{
    external_angle, external_angle_with, EmbeddedSimplex, MetricSimplex, NormalizedAngle,
};
pub use spherical::SphericalPolygon;

use nalgebra::{Point2, Point3};

pub type Point2d = Point2<f64>;
pub type Point3d = Point3<f64>;
