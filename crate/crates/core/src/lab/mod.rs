//! Fixture generators and convergence tables of discrete quantities against
//! smooth closed-form values.

mod analytic;
mod convergence;
pub mod fixtures;

pub use analytic::{builtin_curves, AnalyticCurve, AnalyticSurfaceOracle};
pub use convergence::{
    curve_convergence, surface_convergence, ConvergenceReport, ConvergenceRow, SurfaceFamily, SurfaceQuantity,
};
