//! Planar vectors and the few segment queries the guard needs.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::num::Real;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector for a heading in degrees, counter-clockwise from +x.
    pub fn from_heading(deg: T) -> Self {
        let r = deg.to_radians();
        Self::new(r.cos(), r.sin())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Heading of the vector in degrees.
    pub fn heading(self) -> T {
        self.y.atan2(self.x).to_degrees()
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() {
            Some(self * (T::one() / n))
        } else {
            None
        }
    }

    /// Moves `self` toward `target` by at most `max_step`.
    pub fn move_towards(self, target: Self, max_step: T) -> Self {
        let d = target - self;
        let n = d.norm();
        if n <= max_step || n == T::zero() {
            target
        } else {
            self + d * (max_step / n)
        }
    }

    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Real> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Closed segment `[a, b]`; a point when `a == b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T> {
    pub a: Vec2<T>,
    pub b: Vec2<T>,
}

impl<T: Real> Segment<T> {
    pub fn new(a: Vec2<T>, b: Vec2<T>) -> Self {
        Self { a, b }
    }

    pub fn point(p: Vec2<T>) -> Self {
        Self { a: p, b: p }
    }

    pub fn closest_point(&self, p: Vec2<T>) -> Vec2<T> {
        let d = self.b - self.a;
        let len_sq = d.norm_sq();
        if len_sq == T::zero() {
            return self.a;
        }
        let t = ((p - self.a).dot(d) / len_sq).max(T::zero()).min(T::one());
        self.a + d * t
    }

    pub fn dist_to_point(&self, p: Vec2<T>) -> T {
        self.closest_point(p).dist(p)
    }

    /// Minimum distance between two segments.
    pub fn dist(&self, o: &Segment<T>) -> T {
        if self.intersects(o) {
            return T::zero();
        }
        self.dist_to_point(o.a)
            .min(self.dist_to_point(o.b))
            .min(o.dist_to_point(self.a))
            .min(o.dist_to_point(self.b))
    }

    fn intersects(&self, o: &Segment<T>) -> bool {
        let cross = |o: Vec2<T>, a: Vec2<T>, b: Vec2<T>| (a - o).x * (b - o).y - (a - o).y * (b - o).x;
        let d1 = cross(o.a, o.b, self.a);
        let d2 = cross(o.a, o.b, self.b);
        let d3 = cross(self.a, self.b, o.a);
        let d4 = cross(self.a, self.b, o.b);
        let z = T::zero();
        ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_distance_cases() {
        let s = Segment::new(Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0));
        let parallel = Segment::new(Vec2::new(0.0, 1.0), Vec2::new(1.0, 1.0));
        assert!((s.dist(&parallel) - 1.0_f64).abs() < 1e-12);
        let crossing = Segment::new(Vec2::new(0.5, -1.0), Vec2::new(0.5, 1.0));
        assert_eq!(s.dist(&crossing), 0.0);
        let beyond = Segment::point(Vec2::new(4.0, 4.0));
        assert!((s.dist(&beyond) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn move_towards_caps_step() {
        let v = Vec2::new(0.0_f64, 0.0).move_towards(Vec2::new(3.0, 4.0), 1.0);
        assert!((v.norm() - 1.0).abs() < 1e-12);
        let w = Vec2::new(0.0_f32, 0.0).move_towards(Vec2::new(0.3, 0.4), 1.0);
        assert_eq!(w, Vec2::new(0.3, 0.4));
    }
}
