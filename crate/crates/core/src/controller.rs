//! Skill controllers: turn the active command of a robot into a velocity
//! proposal for the guard.

use crate::geom::Vec2;
use crate::num::{angle_diff, Real};
use crate::safety::SafetyConfig;
use crate::skill::{Command, Skill};
use crate::world::{RobotState, WorldState};

/// Below this distance the move controller holds still (m).
const ARRIVED: f64 = 0.005;
/// Proportional heading gain (1/s).
const HEADING_GAIN: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proposal<T> {
    pub velocity: Vec2<T>,
    pub omega: T,
}

impl<T: Real> Proposal<T> {
    pub fn still() -> Self {
        Self { velocity: Vec2::zero(), omega: T::zero() }
    }
}

/// Speed profile that brakes at half the available deceleration so the
/// stopping path always ends short of the target.
fn approach<T: Real>(from: Vec2<T>, to: Vec2<T>, cfg: &SafetyConfig<T>) -> Vec2<T> {
    let gap = to - from;
    let dist = gap.norm();
    if dist < T::lit(ARRIVED) {
        return Vec2::zero();
    }
    let speed = cfg.max_speed.min((cfg.max_decel * dist).sqrt());
    gap * (speed / dist)
}

fn face<T: Real>(robot: &RobotState<T>, heading: T, cfg: &SafetyConfig<T>) -> T {
    let err = angle_diff(robot.theta, heading);
    if err.abs() < T::lit(0.2) {
        return T::zero();
    }
    let w = err * T::lit(HEADING_GAIN);
    w.max(-cfg.max_angular_speed).min(cfg.max_angular_speed)
}

pub fn move_to<T: Real>(robot: &RobotState<T>, target: Vec2<T>, heading: T, cfg: &SafetyConfig<T>) -> Proposal<T> {
    Proposal { velocity: approach(robot.pos(), target, cfg), omega: face(robot, heading, cfg) }
}

/// Velocity proposal for the robot's active command.
pub fn propose<T: Real>(
    robot: &RobotState<T>,
    cmd: &Command<T>,
    world: &WorldState<T>,
    cfg: &SafetyConfig<T>,
) -> Proposal<T> {
    let p = &cmd.params;
    match cmd.skill {
        Skill::MoveTo => move_to(robot, Vec2::new(p[0], p[1]), p[2], cfg),
        Skill::TurnTo => Proposal { velocity: Vec2::zero(), omega: face(robot, p[0], cfg) },
        Skill::Catch => {
            let ball = world.ball.pos();
            let rel = ball - robot.pos();
            let Some(dir) = rel.normalized() else { return Proposal::still() };
            let reach = cfg.robot_radius + T::lit(0.02);
            let stand = cfg.clamp_target(ball - dir * reach);
            move_to(robot, stand, rel.heading(), cfg)
        }
        Skill::Block => {
            let ball = world.ball.pos();
            let stand = cfg.clamp_target(Vec2::new(robot.x, ball.y));
            move_to(robot, stand, (ball - robot.pos()).heading(), cfg)
        }
        Skill::Kick | Skill::Dribble | Skill::Halt | Skill::SetId => Proposal::still(),
    }
}
