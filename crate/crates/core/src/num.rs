//! Scalar abstraction for the kinematics, safety and simulation code.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating point scalar used by the world model: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("f64 constant fits the scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Wraps an angle in degrees into `(-180, 180]`.
pub fn wrap_degrees<T: Real>(deg: T) -> T {
    let full = T::lit(360.0);
    let half = T::lit(180.0);
    let mut a = deg % full;
    if a <= -half {
        a = a + full;
    } else if a > half {
        a = a - full;
    }
    a
}

/// Signed smallest difference `to - from` in degrees.
pub fn angle_diff<T: Real>(from: T, to: T) -> T {
    wrap_degrees(to - from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_into_half_open_range() {
        assert_eq!(wrap_degrees(180.0_f64), 180.0);
        assert_eq!(wrap_degrees(-180.0_f64), 180.0);
        assert_eq!(wrap_degrees(270.0_f64), -90.0);
        assert_eq!(wrap_degrees(-450.0_f32), -90.0);
        assert_eq!(angle_diff(170.0_f64, -170.0), 20.0);
    }
}
