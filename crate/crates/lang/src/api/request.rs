//! Translating `robot.*` calls into skill commands and answering sensor
//! queries from the latest world state.

use robojs_core::num::wrap_degrees;
use robojs_core::skill::Skill;
use robojs_core::{Command, GridMap, RobotState, Vec2};

use super::manifest::{catalog_index, ParamKind, CATALOG};
use super::ResultKind;
use crate::diagnostic::{Category, CheckCategory, RuntimeKind};
use crate::exec::io::{IoRequest, Primitive, Snapshot};
use crate::exec::value::Value;

/// World frames older than this are treated as missing.
pub const STALE_AFTER: f64 = 1.0;

pub const DEFAULT_CELL_SIZE: f64 = 0.3;

/// Per-program robot state: which robot is driven and the grid used by
/// the beginner commands.
#[derive(Debug, Clone)]
pub struct RobotSession {
    pub robot_id: Option<u32>,
    pub grid: GridMap,
    next_request_id: u64,
}

impl Default for RobotSession {
    fn default() -> Self {
        Self { robot_id: None, grid: GridMap::covering(1.8, 1.2, DEFAULT_CELL_SIZE), next_request_id: 1 }
    }
}

impl RobotSession {
    pub fn with_grid(grid: GridMap) -> Self {
        Self { grid, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub category: Category,
    pub message: String,
}

fn robot_error(message: impl Into<String>) -> ApiError {
    ApiError { category: Category::Runtime(RuntimeKind::Robot), message: message.into() }
}

pub fn no_robot_selected() -> ApiError {
    robot_error("No robot selected. Call robot.setRobotId(n) first.")
}

pub fn no_vision_data() -> ApiError {
    robot_error("No vision data: the robot's position is unknown right now.")
}

pub fn is_sense(name: &str) -> bool {
    catalog_index(name).is_some_and(|i| CATALOG[i].2 == ResultKind::Number)
}

fn primitives(name: &str, args: &[Value]) -> Result<Vec<Primitive>, ApiError> {
    let row = &CATALOG[catalog_index(name).expect("known API name")];
    let mut out = Vec::with_capacity(row.3.len());
    for (i, param) in row.3.iter().enumerate() {
        let kind = if *param == "on" { ParamKind::Boolean } else { ParamKind::Number };
        let arg = args.get(i).unwrap_or(&Value::Undefined);
        let mismatch = |want: &str| ApiError {
            category: Category::Check(CheckCategory::OpTypeMismatch),
            message: format!("robot.{name} expects {want} for \"{param}\", but got {}.", arg.describe()),
        };
        match (kind, arg) {
            (ParamKind::Number, Value::Number(n)) if n.is_finite() => out.push(Primitive::Number(*n)),
            (ParamKind::Number, Value::Number(n)) => {
                return Err(robot_error(format!(
                    "robot.{name} needs a finite number for \"{param}\", but got {}.",
                    crate::js::number_to_string(*n)
                )))
            }
            (ParamKind::Number, _) => return Err(mismatch("a number")),
            (ParamKind::Boolean, Value::Bool(b)) => out.push(Primitive::Bool(*b)),
            (ParamKind::Boolean, _) => return Err(mismatch("true or false")),
        }
    }
    Ok(out)
}

fn fresh(snapshot: Option<&Snapshot>) -> Result<&Snapshot, ApiError> {
    match snapshot {
        Some(s) if s.age <= STALE_AFTER => Ok(s),
        _ => Err(no_vision_data()),
    }
}

fn own_pose<'s>(snapshot: Option<&'s Snapshot>, robot_id: u32) -> Result<&'s RobotState, ApiError> {
    fresh(snapshot)?
        .world
        .robot(robot_id)
        .ok_or_else(|| robot_error(format!("Robot {robot_id} is not on the field.")))
}

/// Heading rounded to the nearest quarter turn.
pub fn snap_heading(theta: f64) -> f64 {
    wrap_degrees((theta / 90.0).round() * 90.0)
}

fn grid_step(heading: f64) -> (i32, i32) {
    match snap_heading(heading) as i32 {
        0 => (1, 0),
        90 => (0, 1),
        180 | -180 => (-1, 0),
        _ => (0, -1),
    }
}

/// Resolves a motion or skill call into a request for the session's
/// robot. Relative and grid commands use the pose in `snapshot`.
pub fn to_request(
    name: &str,
    args: &[Value],
    session: &mut RobotSession,
    snapshot: Option<&Snapshot>,
) -> Result<IoRequest, ApiError> {
    let prims = primitives(name, args)?;
    let num = |i: usize| match prims[i] {
        Primitive::Number(n) => n,
        Primitive::Bool(b) => f64::from(u8::from(b)),
    };
    let (robot_id, command) = if name == "setRobotId" {
        let n = num(0);
        if n < 0.0 || n.fract() != 0.0 || n > u32::MAX as f64 {
            return Err(robot_error(format!(
                "Robot numbers are whole numbers 0 or greater, not {}.",
                crate::js::number_to_string(n)
            )));
        }
        (n as u32, Command::bare(Skill::SetId))
    } else {
        let id = session.robot_id.ok_or_else(no_robot_selected)?;
        let grid = &session.grid;
        let command = match name {
            "moveForward" => {
                let me = own_pose(snapshot, id)?;
                let (dc, dr) = grid_step(me.theta);
                let cell = grid.cell_of(me.pos());
                let target = grid.center(grid.clamp_cell((cell.0 + dc, cell.1 + dr)));
                Command::move_to(target.x, target.y, snap_heading(me.theta))
            }
            "turnLeft" | "turnRight" => {
                let me = own_pose(snapshot, id)?;
                let quarter = if name == "turnLeft" { 90.0 } else { -90.0 };
                Command::turn_to(wrap_degrees(snap_heading(me.theta) + quarter))
            }
            "moveByXCells" | "moveByYCells" => {
                let me = own_pose(snapshot, id)?;
                let cells = num(0).round() as i32;
                let cell = grid.cell_of(me.pos());
                let next = if name == "moveByXCells" { (cell.0 + cells, cell.1) } else { (cell.0, cell.1 + cells) };
                let target = grid.center(grid.clamp_cell(next));
                Command::move_to(target.x, target.y, me.theta)
            }
            "moveByX" | "moveByY" | "moveByXY" | "moveBy" => {
                let me = own_pose(snapshot, id)?;
                let (d, turn) = match name {
                    "moveByX" => (Vec2::new(num(0), 0.0), 0.0),
                    "moveByY" => (Vec2::new(0.0, num(0)), 0.0),
                    "moveByXY" => (Vec2::new(num(0), num(1)), 0.0),
                    _ => (Vec2::new(num(0), num(1)), num(2)),
                };
                let target = me.pos() + d;
                Command::move_to(target.x, target.y, wrap_degrees(me.theta + turn))
            }
            "turnBy" => {
                let me = own_pose(snapshot, id)?;
                Command::turn_to(wrap_degrees(me.theta + num(0)))
            }
            "moveToX" | "moveToY" | "moveToXY" => {
                let me = own_pose(snapshot, id)?;
                let (x, y) = match name {
                    "moveToX" => (num(0), me.y),
                    "moveToY" => (me.x, num(0)),
                    _ => (num(0), num(1)),
                };
                Command::move_to(x, y, me.theta)
            }
            "moveTo" => Command::move_to(num(0), num(1), wrap_degrees(num(2))),
            "turnTo" => Command::turn_to(wrap_degrees(num(0))),
            "kick" => Command::kick(num(0).clamp(0.0, 1.0)),
            "dribble" => Command::new(Skill::Dribble, vec![num(0)]).expect("one parameter"),
            "catchBall" => Command::bare(Skill::Catch),
            "block" => Command::bare(Skill::Block),
            other => unreachable!("{other} is not a motion command"),
        };
        (id, command)
    };
    let request_id = session.next_request_id;
    session.next_request_id += 1;
    Ok(IoRequest { request_id, api_name: name.to_string(), args: prims, robot_id, command })
}

/// Answers a sensor call from the current world state.
pub fn sense(name: &str, snapshot: Option<&Snapshot>, session: &RobotSession) -> Result<f64, ApiError> {
    let snap = fresh(snapshot)?;
    let ball = &snap.world.ball;
    Ok(match name {
        "getBallPosX" => ball.x,
        "getBallPosY" => ball.y,
        "getBallVelX" => ball.vx,
        "getBallVelY" => ball.vy,
        _ => {
            let id = session.robot_id.ok_or_else(no_robot_selected)?;
            let me = own_pose(snapshot, id)?;
            match name {
                "getPosX" => me.x,
                "getPosY" => me.y,
                "getAngle" => me.theta,
                other => unreachable!("{other} is not a sensor"),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use robojs_core::{BallState, WorldState};

    fn snap(x: f64, y: f64, theta: f64) -> Snapshot {
        let world = WorldState {
            timestamp: 1.0,
            frame_seq: 1,
            robots: vec![RobotState::at(0, x, y, theta)],
            ball: BallState::at_rest(0.0, 0.0),
            items: vec![],
        };
        Snapshot { world, age: 0.0 }
    }

    fn session() -> RobotSession {
        RobotSession { robot_id: Some(0), ..RobotSession::default() }
    }

    #[test]
    fn move_forward_is_one_cell_along_heading() {
        let mut s = session();
        let r = to_request("moveForward", &[], &mut s, Some(&snap(0.15, 0.15, 0.0))).unwrap();
        assert_eq!(r.command.skill, Skill::MoveTo);
        assert!((r.command.params[0] - 0.45).abs() < 1e-12 && (r.command.params[1] - 0.15).abs() < 1e-12);
        let r = to_request("moveForward", &[], &mut s, Some(&snap(0.15, 0.15, 92.0))).unwrap();
        assert!((r.command.params[1] - 0.45).abs() < 1e-12);
        assert_eq!(r.command.params[2], 90.0);
    }

    #[test]
    fn turn_left_is_quarter_turn() {
        let mut s = session();
        let r = to_request("turnLeft", &[], &mut s, Some(&snap(0.0, 0.0, 0.0))).unwrap();
        assert_eq!(r.command, Command::turn_to(90.0));
        let r = to_request("turnRight", &[], &mut s, Some(&snap(0.0, 0.0, 180.0))).unwrap();
        assert_eq!(r.command, Command::turn_to(90.0));
    }

    #[test]
    fn relative_moves_use_sensed_pose() {
        let mut s = session();
        let r = to_request("moveByXY", &[Value::Number(0.5), Value::Number(-0.25)], &mut s, Some(&snap(0.1, 0.2, 30.0)))
            .unwrap();
        assert_eq!(r.command, Command::move_to(0.1 + 0.5, 0.2 + -0.25, 30.0));
        assert_ne!(r.request_id, to_request("turnBy", &[Value::Number(10.0)], &mut s, Some(&snap(0.0, 0.0, 0.0))).unwrap().request_id);
    }

    #[test]
    fn requires_selected_robot_and_fresh_world() {
        let mut s = RobotSession::default();
        let err = to_request("kick", &[Value::Number(0.5)], &mut s, None).unwrap_err();
        assert!(err.message.contains("No robot selected"));
        let mut s = session();
        let mut old = snap(0.0, 0.0, 0.0);
        old.age = 1.5;
        assert!(to_request("moveByX", &[Value::Number(1.0)], &mut s, Some(&old)).unwrap_err().message.contains("vision"));
        assert!(sense("getBallPosX", Some(&old), &s).is_err());
        assert!(to_request("moveTo", &[Value::Number(1.0), Value::Number(1.0), Value::Number(0.0)], &mut s, None).is_ok());
    }

    #[test]
    fn argument_types() {
        let mut s = session();
        let err = to_request("moveTo", &[Value::str("a"), Value::Number(1.0), Value::Number(0.0)], &mut s, None).unwrap_err();
        assert_eq!(err.category, Category::Check(CheckCategory::OpTypeMismatch));
        assert!(to_request("dribble", &[Value::Number(1.0)], &mut s, None).is_err());
        assert!(to_request("dribble", &[Value::Bool(true)], &mut s, None).is_ok());
        assert!(to_request("setRobotId", &[Value::Number(1.5)], &mut s, None).is_err());
    }

    #[test]
    fn sensing() {
        let s = session();
        let sn = snap(0.3, -0.2, 90.0);
        assert_eq!(sense("getBallPosX", Some(&sn), &s).unwrap(), 0.0);
        assert_eq!(sense("getAngle", Some(&sn), &s).unwrap(), 90.0);
        assert_eq!(sense("getPosY", Some(&sn), &s).unwrap(), -0.2);
    }
}
