//! Physical parameters of robots and ball, and the velocity response both the
//! simulator and the crash guard rely on.

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::num::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotModel<T> {
    /// Robots fit a cylinder 0.18 m across.
    pub radius: T,
    /// m/s^2 while speeding up or turning the velocity vector.
    pub max_accel: T,
    /// m/s^2 while slowing down.
    pub max_decel: T,
    /// Ball is held by the dribbler within this center distance (m).
    pub dribbler_range: T,
    /// Ball speed for kick power 1.0 (m/s).
    pub kick_speed_per_power: T,
}

impl<T: Real> Default for RobotModel<T> {
    fn default() -> Self {
        Self {
            radius: T::lit(0.09),
            max_accel: T::lit(2.0),
            max_decel: T::lit(2.0),
            dribbler_range: T::lit(0.12),
            kick_speed_per_power: T::lit(2.0),
        }
    }
}

impl<T: Real> RobotModel<T> {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.max_accel > T::zero()) {
            return Err("max_accel must be positive".into());
        }
        if self.max_decel < self.max_accel {
            return Err("max_decel must be at least max_accel".into());
        }
        if !(self.radius > T::zero()) {
            return Err("radius must be positive".into());
        }
        Ok(())
    }

    /// Position and velocity after one period of tracking `command`.
    ///
    /// The velocity ramps linearly at the capped rate until it reaches the
    /// command, then stays there; the displacement integrates that profile
    /// exactly.
    pub fn advance(&self, pos: Vec2<T>, vel: Vec2<T>, command: Vec2<T>, dt: T) -> (Vec2<T>, Vec2<T>) {
        let limit = if command.norm() < vel.norm() { self.max_decel } else { self.max_accel };
        let gap = (command - vel).norm();
        let ramp = if limit > T::zero() { gap / limit } else { T::infinity() };
        if ramp >= dt {
            let next = vel.move_towards(command, limit * dt);
            (pos + (vel + next) * (dt * T::half()), next)
        } else {
            let disp = (vel + command) * (ramp * T::half()) + command * (dt - ramp);
            (pos + disp, command)
        }
    }

    /// Distance covered while braking from `speed` at `max_decel`.
    pub fn braking_distance(&self, speed: T) -> T {
        speed * speed / (T::two() * self.max_decel)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallModel<T> {
    pub radius: T,
    /// Rolling friction deceleration (m/s^2).
    pub friction: T,
    /// Fraction of normal speed kept when bouncing off walls and the boundary.
    pub restitution: T,
}

impl<T: Real> Default for BallModel<T> {
    fn default() -> Self {
        Self { radius: T::lit(0.0215), friction: T::lit(0.5), restitution: T::lit(0.5) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerating_from_rest_matches_closed_form() {
        // 0.5 s at 2 m/s^2 reaches 1 m/s after 0.25 m
        let m = RobotModel::<f64>::default();
        let dt = 1.0 / 60.0;
        let (mut p, mut v) = (Vec2::zero(), Vec2::zero());
        for _ in 0..30 {
            (p, v) = m.advance(p, v, Vec2::new(1.0, 0.0), dt);
        }
        assert!((v.x - 1.0).abs() < 1e-12);
        assert!((p.x - 0.25).abs() < 1e-12);
    }

    #[test]
    fn braking_stops_at_braking_distance() {
        let m = RobotModel::<f64>::default();
        let dt = 1.0 / 60.0;
        let start_speed = 0.9;
        let (mut p, mut v) = (Vec2::zero(), Vec2::new(start_speed, 0.0));
        for _ in 0..60 {
            (p, v) = m.advance(p, v, Vec2::zero(), dt);
        }
        assert_eq!(v, Vec2::zero());
        assert!((p.x - m.braking_distance(start_speed)).abs() < 1e-12);
    }
}
