use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::UNIT_NORM;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// A direction of Euclidean length one (within [`UNIT_NORM`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const E1: UnitVec3 = UnitVec3(Vec3::new(1.0, 0.0, 0.0));
    pub const E2: UnitVec3 = UnitVec3(Vec3::new(0.0, 1.0, 0.0));
    pub const E3: UnitVec3 = UnitVec3(Vec3::new(0.0, 0.0, 1.0));

    /// Accepts components that already have unit length.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if !v.is_finite() {
            return Err(Error::invalid(format!("non-finite direction {v:?}")));
        }
        if (v.norm() - 1.0).abs() > UNIT_NORM {
            return Err(Error::invalid(format!(
                "direction ({x}, {y}, {z}) has norm {}, expected 1",
                v.norm()
            )));
        }
        Ok(UnitVec3(v))
    }

    /// Scales a non-zero finite vector to unit length.
    pub fn normalize(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if !v.is_finite() || n == 0.0 || !n.is_finite() {
            return Err(Error::invalid(format!("cannot normalize {v:?}")));
        }
        Ok(UnitVec3(v * (1.0 / n)))
    }

    /// Wraps a vector that is unit length by construction.
    pub(crate) fn from_unit(v: Vec3) -> Self {
        debug_assert!((v.norm() - 1.0).abs() < 1e-10, "not unit: {v:?}");
        UnitVec3(v)
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.0.dot(other)
    }
}

impl From<UnitVec3> for [f64; 3] {
    fn from(u: UnitVec3) -> Self {
        u.0.to_array()
    }
}

impl<'de> Deserialize<'de> for UnitVec3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        UnitVec3::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_is_right_handed() {
        let c = Vec3::new(1.0, 0.0, 0.0).cross(Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(c, Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn unit_rejects_non_unit() {
        assert!(UnitVec3::new(1.0, 1.0, 0.0).is_err());
        assert!(UnitVec3::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(UnitVec3::new(0.6, 0.0, 0.8).is_ok());
    }

    #[test]
    fn normalize_zero_fails() {
        assert!(UnitVec3::normalize(Vec3::default()).is_err());
        let u = UnitVec3::normalize(Vec3::new(3.0, 0.0, 4.0)).unwrap();
        assert!((u.vec().norm() - 1.0).abs() < 1e-15);
    }
}
