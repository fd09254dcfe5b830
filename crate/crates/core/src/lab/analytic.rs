use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::geom::Point3d;

/// A smooth parametrized curve with its exact total curvature.
#[derive(Clone)]
pub struct AnalyticCurve {
    pub name: String,
    pub domain: (f64, f64),
    pub closed: bool,
    pub total_curvature: f64,
    param: Arc<dyn Fn(f64) -> Point3d + Send + Sync>,
}

impl fmt::Debug for AnalyticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticCurve")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("closed", &self.closed)
            .field("total_curvature", &self.total_curvature)
            .finish()
    }
}

impl AnalyticCurve {
    pub fn new(
        name: impl Into<String>,
        domain: (f64, f64),
        closed: bool,
        total_curvature: f64,
        param: impl Fn(f64) -> Point3d + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), domain, closed, total_curvature, param: Arc::new(param) }
    }

    pub fn point(&self, t: f64) -> Point3d {
        (self.param)(t)
    }

    pub fn circle(radius: f64) -> Self {
        Self::new(format!("circle({radius})"), (0.0, 2.0 * PI), true, 2.0 * PI, move |t| {
            Point3d::new(radius * t.cos(), radius * t.sin(), 0.0)
        })
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        Self::new(format!("ellipse({a},{b})"), (0.0, 2.0 * PI), true, 2.0 * PI, move |t| {
            Point3d::new(a * t.cos(), b * t.sin(), 0.0)
        })
    }

    /// One turn of `(cos t, sin t, h t)`: curvature `1/(1+h^2)` over length
    /// `2 pi sqrt(1+h^2)`.
    pub fn helix(h: f64) -> Self {
        let total = 2.0 * PI / (1.0 + h * h).sqrt();
        Self::new(format!("helix({h})"), (0.0, 2.0 * PI), false, total, move |t| {
            Point3d::new(t.cos(), t.sin(), h * t)
        })
    }
}

pub fn builtin_curves() -> Vec<AnalyticCurve> {
    vec![AnalyticCurve::circle(1.0), AnalyticCurve::ellipse(2.0, 1.0), AnalyticCurve::helix(1.0)]
}

/// Exact integrals for a smooth closed surface. Mean curvature is
/// `(k1 + k2) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSurfaceOracle {
    pub name: String,
    pub area: f64,
    pub total_mean_curvature: f64,
    pub total_gauss_curvature: f64,
}

impl AnalyticSurfaceOracle {
    pub fn sphere(radius: f64) -> Self {
        Self {
            name: format!("sphere({radius})"),
            area: 4.0 * PI * radius * radius,
            total_mean_curvature: 4.0 * PI * radius,
            total_gauss_curvature: 4.0 * PI,
        }
    }

    pub fn torus(major: f64, minor: f64) -> Self {
        Self {
            name: format!("torus({major},{minor})"),
            area: 4.0 * PI * PI * major * minor,
            total_mean_curvature: 2.0 * PI * PI * major,
            total_gauss_curvature: 0.0,
        }
    }
}
