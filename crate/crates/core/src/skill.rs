//! Skill commands accepted by the Marionette stack.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;
use crate::model::{BallModel, RobotModel};
use crate::num::{angle_diff, Real};
use crate::world::{RobotState, WorldState};

/// Position tolerance for a finished move (m).
pub const POSITION_TOLERANCE: f64 = 0.02;
/// Heading tolerance for a finished move or turn (deg).
pub const HEADING_TOLERANCE: f64 = 3.0;
/// Per-command deadline for blocking motion calls (s).
pub const COMMAND_DEADLINE: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Skill {
    MoveTo,
    TurnTo,
    Kick,
    Dribble,
    Catch,
    Block,
    Halt,
    SetId,
}

impl Skill {
    pub const ALL: [Skill; 8] = [
        Skill::MoveTo,
        Skill::TurnTo,
        Skill::Kick,
        Skill::Dribble,
        Skill::Catch,
        Skill::Block,
        Skill::Halt,
        Skill::SetId,
    ];

    /// Number of numeric parameters fixed by the schema.
    pub fn param_count(self) -> usize {
        match self {
            Skill::MoveTo => 3,
            Skill::TurnTo | Skill::Kick | Skill::Dribble => 1,
            Skill::Catch | Skill::Block | Skill::Halt | Skill::SetId => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Skill::MoveTo => "MOVE_TO",
            Skill::TurnTo => "TURN_TO",
            Skill::Kick => "KICK",
            Skill::Dribble => "DRIBBLE",
            Skill::Catch => "CATCH",
            Skill::Block => "BLOCK",
            Skill::Halt => "HALT",
            Skill::SetId => "SET_ID",
        }
    }

    /// Skills that keep running across control periods until they finish.
    pub fn is_continuous(self) -> bool {
        matches!(self, Skill::MoveTo | Skill::TurnTo | Skill::Catch | Skill::Block)
    }
}

impl fmt::Display for Skill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Skill {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Skill::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown skill {s}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Command<T> {
    pub skill: Skill,
    pub params: Vec<T>,
}

impl<T: Real> Command<T> {
    pub fn new(skill: Skill, params: Vec<T>) -> Result<Self, String> {
        if params.len() != skill.param_count() {
            return Err(format!(
                "{} takes {} parameters, got {}",
                skill,
                skill.param_count(),
                params.len()
            ));
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(format!("{skill} parameters must be finite numbers"));
        }
        Ok(Self { skill, params })
    }

    pub fn move_to(x: T, y: T, theta: T) -> Self {
        Self { skill: Skill::MoveTo, params: vec![x, y, theta] }
    }

    pub fn turn_to(theta: T) -> Self {
        Self { skill: Skill::TurnTo, params: vec![theta] }
    }

    pub fn kick(power: T) -> Self {
        Self { skill: Skill::Kick, params: vec![power] }
    }

    pub fn bare(skill: Skill) -> Self {
        Self { skill, params: Vec::new() }
    }
}

/// Whether the robot has finished executing `cmd` in `world`.
pub fn is_complete<T: Real>(
    cmd: &Command<T>,
    robot: &RobotState<T>,
    world: &WorldState<T>,
    model: &RobotModel<T>,
    ball: &BallModel<T>,
) -> bool {
    let pos_tol = T::lit(POSITION_TOLERANCE);
    let head_tol = T::lit(HEADING_TOLERANCE);
    match cmd.skill {
        Skill::MoveTo => {
            let target = Vec2::new(cmd.params[0], cmd.params[1]);
            robot.pos().dist(target) <= pos_tol
                && angle_diff(robot.theta, cmd.params[2]).abs() <= head_tol
        }
        Skill::TurnTo => angle_diff(robot.theta, cmd.params[0]).abs() <= head_tol,
        Skill::Catch => robot.dribbler && holds_ball(robot, world, model, ball),
        Skill::Block => touches_ball(robot, world, model, ball),
        Skill::Kick | Skill::Dribble | Skill::Halt | Skill::SetId => true,
    }
}

/// Ball is in front of the robot within dribbler range.
pub fn holds_ball<T: Real>(
    robot: &RobotState<T>,
    world: &WorldState<T>,
    model: &RobotModel<T>,
    ball: &BallModel<T>,
) -> bool {
    let rel = world.ball.pos() - robot.pos();
    let ahead = Vec2::from_heading(robot.theta).dot(rel);
    rel.norm() <= model.dribbler_range + ball.radius && ahead > T::zero()
}

pub fn touches_ball<T: Real>(
    robot: &RobotState<T>,
    world: &WorldState<T>,
    model: &RobotModel<T>,
    ball: &BallModel<T>,
) -> bool {
    world.ball.pos().dist(robot.pos()) <= model.radius + ball.radius + T::lit(0.01)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_arity_and_names() {
        for s in Skill::ALL {
            assert_eq!(s.as_str().parse::<Skill>().unwrap(), s);
        }
        assert!(Command::<f64>::new(Skill::MoveTo, vec![1.0, 2.0]).is_err());
        assert!(Command::<f64>::new(Skill::Kick, vec![f64::NAN]).is_err());
        assert!(Command::<f64>::new(Skill::Catch, vec![]).is_ok());
    }
}
