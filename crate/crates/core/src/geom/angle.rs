use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub type Vector3 = nalgebra::Vector3<f64>;

/// Unsigned angle between two nonzero vectors, in `[0, pi]`.
///
/// Uses `atan2(|u x v|, u . v)`, which stays accurate near 0 and pi where
/// `acos` of a normalized dot product loses half the digits.
pub fn angle_between(u: &Vector3, v: &Vector3) -> Result<f64> {
    let eps = Tolerances::default().degenerate;
    for w in [u, v] {
        let n = w.norm();
        if !(n >= eps) {
            return Err(Error::ZeroVector { norm: n });
        }
    }
    Ok(u.cross(v).norm().atan2(u.dot(v)))
}

/// Dimension-free version of [`angle_between`]: `2 atan2(|a - b|, |a + b|)`
/// on the normalized inputs.
pub fn angle_between_n(u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    let eps = Tolerances::default().degenerate;
    let (nu, nv) = (u.norm(), v.norm());
    if !(nu >= eps) {
        return Err(Error::ZeroVector { norm: nu });
    }
    if !(nv >= eps) {
        return Err(Error::ZeroVector { norm: nv });
    }
    let a = u / nu;
    let b = v / nv;
    Ok(2.0 * (&a - &b).norm().atan2((&a + &b).norm()))
}

/// A point of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector(Vector3);

impl UnitVector {
    /// Accepts `v` only if its norm is within `eps_unit` of 1.
    pub fn new(v: Vector3) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > Tolerances::default().unit || !n.is_finite() {
            return Err(Error::InvalidParameter(format!("vector norm {n} is not 1")));
        }
        Ok(Self(v))
    }

    pub fn normalize(v: Vector3) -> Result<Self> {
        let n = v.norm();
        if !(n >= Tolerances::default().degenerate) || !n.is_finite() {
            return Err(Error::ZeroVector { norm: n });
        }
        Ok(Self(v / n))
    }

    pub fn as_vector(&self) -> &Vector3 {
        &self.0
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.0.dot(&other.0)
    }

    /// Great-circle distance.
    pub fn arc_to(&self, other: &UnitVector) -> f64 {
        self.0.cross(&other.0).norm().atan2(self.0.dot(&other.0))
    }
}

impl std::ops::Neg for UnitVector {
    type Output = UnitVector;
    fn neg(self) -> UnitVector {
        UnitVector(-self.0)
    }
}
