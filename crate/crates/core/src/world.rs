//! World snapshot published by the simulator every control period.

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::num::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotState<T> {
    pub id: u32,
    pub x: T,
    pub y: T,
    /// Heading in degrees, counter-clockwise from +x.
    pub theta: T,
    pub vx: T,
    pub vy: T,
    /// Angular rate in degrees per second.
    pub omega: T,
    pub available: bool,
    #[serde(default)]
    pub dribbler: bool,
}

impl<T: Real> RobotState<T> {
    pub fn at(id: u32, x: T, y: T, theta: T) -> Self {
        Self {
            id,
            x,
            y,
            theta,
            vx: T::zero(),
            vy: T::zero(),
            omega: T::zero(),
            available: true,
            dribbler: false,
        }
    }

    pub fn pos(&self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }

    pub fn vel(&self) -> Vec2<T> {
        Vec2::new(self.vx, self.vy)
    }

    pub fn set_pos(&mut self, p: Vec2<T>) {
        self.x = p.x;
        self.y = p.y;
    }

    pub fn set_vel(&mut self, v: Vec2<T>) {
        self.vx = v.x;
        self.vy = v.y;
    }

    pub fn speed(&self) -> T {
        self.vel().norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallState<T> {
    pub x: T,
    pub y: T,
    pub vx: T,
    pub vy: T,
}

impl<T: Real> BallState<T> {
    pub fn at_rest(x: T, y: T) -> Self {
        Self { x, y, vx: T::zero(), vy: T::zero() }
    }

    pub fn pos(&self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }

    pub fn vel(&self) -> Vec2<T> {
        Vec2::new(self.vx, self.vy)
    }

    pub fn set_pos(&mut self, p: Vec2<T>) {
        self.x = p.x;
        self.y = p.y;
    }

    pub fn set_vel(&mut self, v: Vec2<T>) {
        self.vx = v.x;
        self.vy = v.y;
    }
}

/// A collectible item of the `collection` scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Item<T> {
    pub x: T,
    pub y: T,
    pub collected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldState<T> {
    /// Simulation time in seconds.
    pub timestamp: T,
    pub frame_seq: u64,
    pub robots: Vec<RobotState<T>>,
    pub ball: BallState<T>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<Item<T>>,
}

impl<T: Real> WorldState<T> {
    pub fn robot(&self, id: u32) -> Option<&RobotState<T>> {
        self.robots.iter().find(|r| r.id == id)
    }

    pub fn robot_mut(&mut self, id: u32) -> Option<&mut RobotState<T>> {
        self.robots.iter_mut().find(|r| r.id == id)
    }

    pub fn robot_index(&self, id: u32) -> Option<usize> {
        self.robots.iter().position(|r| r.id == id)
    }
}
