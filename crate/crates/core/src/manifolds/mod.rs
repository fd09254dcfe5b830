//! Abstract polyhedral manifolds: a pure simplicial complex plus an edge
//! length for every edge, each top simplex being a Euclidean simplex.

mod complex;
mod lk;
mod metric;
mod relax;
mod subdivide;

pub use complex::SimplicialComplex;
pub use lk::{cgb_check, lk_curvature, lk_total, CgbReport, LkReport, LkRow, LkValue};
pub use metric::{
    cone_angles, euler_characteristic, regge_functional, regge_gradient, CodimTwoFace,
    CurvatureTable, PolyhedralMetric, ValidationReport,
};
pub use relax::{regge_relax, RelaxConfig, RelaxReport, RelaxRow, RelaxStatus, StepRule};
pub use subdivide::barycentric_subdivide;
