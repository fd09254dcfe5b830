//! Discrete curvature of polygons, polyhedral surfaces and abstract
//! polyhedral manifolds.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: angles, spherical polygons, metric simplices (volumes,
//!   dihedral angles, normalized external angles).
//! - [`curves`]: turning angles, turning number, total curvature, tangent
//!   indicatrix, hemisphere test and Crofton length estimation.
//! - [`surfaces`]: angle defects, exterior angles, Gauss-Bonnet, Steiner
//!   polynomials, projections and mean width of convex polyhedra.
//! - [`manifolds`]: simplicial complexes with edge-length metrics, cone
//!   angles, the Regge functional and its gradient, relaxation, discrete
//!   Lipschitz-Killing curvatures and the Chern-Gauss-Bonnet check.
//! - [`lab`]: fixture generators and convergence tables against smooth
//!   closed-form values.
//! - [`io`]: OFF / JSON readers and writers, CSV tables, run configuration.

pub mod curves;
pub mod error;
pub mod geom;
pub mod io;
pub mod lab;
pub mod manifolds;
pub mod mc;
pub mod surfaces;
pub mod tol;

pub use error::{Error, Result};
pub use geom::{MetricSimplex, EmbeddedSimplex, SphericalPolygon, UnitVector, Vector3};
pub use mc::{EstimateWithError, McConfig};
pub use tol::Tolerances;
