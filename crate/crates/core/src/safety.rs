//! The six safety measures applied between student programs and the robots:
//! speed limit, crash prevention, command timeout, robot selection, field
//! boundary truncation and skill applicability.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Segment, Vec2};
use crate::model::RobotModel;
use crate::num::{angle_diff, wrap_degrees, Real};
use crate::skill::{Command, Skill};
use crate::world::WorldState;

/// Slack used by the admissibility tests so that rounding never eats into the
/// guaranteed separation or containment.
const SLACK: f64 = 1e-9;

/// Guard parameters. Lengths in meters, speeds in m/s, angles in degrees,
/// times in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SafetyConfig<T> {
    pub max_speed: T,
    /// What the hardware could do; informational only.
    pub hardware_speed_cap: T,
    pub command_timeout: T,
    /// Extra clearance kept between robot discs.
    pub safety_margin: T,
    pub field_half_x: T,
    pub field_half_y: T,
    pub robot_radius: T,
    pub kick_max_dist: T,
    pub kick_cone_half_angle: T,
    /// deg/s
    pub max_angular_speed: T,
    /// Deceleration assumed for stopping-distance reasoning (m/s^2).
    pub max_decel: T,
    pub control_period: T,
}

impl<T: Real> Default for SafetyConfig<T> {
    fn default() -> Self {
        Self {
            max_speed: T::lit(1.0),
            hardware_speed_cap: T::lit(4.0),
            command_timeout: T::lit(5.0),
            safety_margin: T::lit(0.05),
            field_half_x: T::lit(1.8),
            field_half_y: T::lit(1.2),
            robot_radius: T::lit(0.09),
            kick_max_dist: T::lit(0.25),
            kick_cone_half_angle: T::lit(30.0),
            max_angular_speed: T::lit(180.0),
            max_decel: T::lit(2.0),
            control_period: T::lit(1.0 / 60.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid safety config: {0}")]
    Invalid(&'static str),
    #[error("could not parse safety config: {0}")]
    Parse(String),
}

impl<T: Real> SafetyConfig<T> {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let z = T::zero();
        if !(self.max_speed > z && self.max_speed <= self.hardware_speed_cap) {
            return Err(ConfigError::Invalid("need 0 < max_speed <= hardware_speed_cap"));
        }
        if !(self.safety_margin > z) {
            return Err(ConfigError::Invalid("safety_margin must be positive"));
        }
        if !(self.field_half_x > self.robot_radius && self.field_half_y > self.robot_radius) {
            return Err(ConfigError::Invalid("field must be larger than a robot"));
        }
        if !(self.robot_radius > z && self.command_timeout > z && self.control_period > z) {
            return Err(ConfigError::Invalid("radius, timeout and period must be positive"));
        }
        if !(self.max_decel > z && self.max_angular_speed > z) {
            return Err(ConfigError::Invalid("max_decel and max_angular_speed must be positive"));
        }
        if !(self.kick_max_dist > z && self.kick_cone_half_angle > z) {
            return Err(ConfigError::Invalid("kick thresholds must be positive"));
        }
        Ok(())
    }

    /// Minimum allowed distance between two robot centers.
    pub fn min_separation(&self) -> T {
        T::two() * self.robot_radius + self.safety_margin
    }

    pub fn inset_half_x(&self) -> T {
        self.field_half_x - self.robot_radius
    }

    pub fn inset_half_y(&self) -> T {
        self.field_half_y - self.robot_radius
    }

    /// Truncates a target position into the reachable part of the field.
    pub fn clamp_target(&self, p: Vec2<T>) -> Vec2<T> {
        let hx = self.inset_half_x();
        let hy = self.inset_half_y();
        Vec2::new(p.x.max(-hx).min(hx), p.y.max(-hy).min(hy))
    }

    pub fn contains(&self, p: Vec2<T>, slack: T) -> bool {
        p.x.abs() <= self.inset_half_x() - slack && p.y.abs() <= self.inset_half_y() - slack
    }
}

impl SafetyConfig<f64> {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Rejection {
    #[error("robot {0} is not on the field")]
    UnknownRobot(u32),
    #[error("robot {0} is not available for control")]
    RobotUnavailable(u32),
    #[error("cannot kick: the ball is {distance:.2} m away at {bearing:.0} degrees off the robot's heading")]
    KickNotApplicable { distance: f64, bearing: f64 },
    #[error("invalid command: {0}")]
    Invalid(String),
}

impl Rejection {
    /// Machine-readable reason carried in REJECT messages.
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::UnknownRobot(_) => "unknown-robot",
            Rejection::RobotUnavailable(_) => "robot-unavailable",
            Rejection::KickNotApplicable { .. } => "kick-not-applicable",
            Rejection::Invalid(_) => "invalid-command",
        }
    }
}

/// Validates a command against the world and returns the command that will
/// actually run. Boundary truncation is silent.
pub fn admit<T: Real>(
    robot_id: u32,
    cmd: &Command<T>,
    world: &WorldState<T>,
    cfg: &SafetyConfig<T>,
) -> Result<Command<T>, Rejection> {
    let robot = world.robot(robot_id).ok_or(Rejection::UnknownRobot(robot_id))?;
    if !robot.available {
        return Err(Rejection::RobotUnavailable(robot_id));
    }
    let checked = Command::new(cmd.skill, cmd.params.clone()).map_err(Rejection::Invalid)?;
    let p = &checked.params;
    let admitted = match checked.skill {
        Skill::MoveTo => {
            let t = cfg.clamp_target(Vec2::new(p[0], p[1]));
            Command::move_to(t.x, t.y, wrap_degrees(p[2]))
        }
        Skill::TurnTo => Command::turn_to(wrap_degrees(p[0])),
        Skill::Kick => {
            let rel = world.ball.pos() - robot.pos();
            let distance = rel.norm();
            let bearing = if distance > T::zero() {
                angle_diff(robot.theta, rel.heading())
            } else {
                T::zero()
            };
            if distance > cfg.kick_max_dist || bearing.abs() > cfg.kick_cone_half_angle {
                return Err(Rejection::KickNotApplicable {
                    distance: distance.to_f64_lossy(),
                    bearing: bearing.to_f64_lossy(),
                });
            }
            Command::kick(p[0].max(T::zero()).min(T::one()))
        }
        Skill::Dribble => Command {
            skill: Skill::Dribble,
            params: vec![if p[0] != T::zero() { T::one() } else { T::zero() }],
        },
        Skill::Catch | Skill::Block | Skill::Halt | Skill::SetId => checked,
    };
    Ok(admitted)
}

/// Scales planar speed down to `max_speed` keeping direction, and clamps the
/// angular rate.
pub fn clamp_velocity<T: Real>(v: Vec2<T>, omega: T, cfg: &SafetyConfig<T>) -> (Vec2<T>, T) {
    let speed = v.norm();
    let v = if speed > cfg.max_speed { v * (cfg.max_speed / speed) } else { v };
    let w = cfg.max_angular_speed;
    (v, omega.max(-w).min(w))
}

/// Straight braking path of a robot that moves at `vel` from `pos`.
fn braking_segment<T: Real>(pos: Vec2<T>, vel: Vec2<T>, decel: T) -> Segment<T> {
    match vel.normalized() {
        Some(dir) => {
            let speed = vel.norm();
            Segment::new(pos, pos + dir * (speed * speed / (T::two() * decel)))
        }
        None => Segment::point(pos),
    }
}

/// Positions and braking path after one period of tracking `command`.
fn swept<T: Real>(
    pos: Vec2<T>,
    vel: Vec2<T>,
    command: Vec2<T>,
    model: &RobotModel<T>,
    cfg: &SafetyConfig<T>,
) -> Segment<T> {
    let (p, v) = model.advance(pos, vel, command, cfg.control_period);
    braking_segment(p, v, model.max_decel.min(cfg.max_decel))
}

/// Deterministic candidate set, ordered by generation index.
fn candidates<T: Real>(proposal: Vec2<T>, current: Vec2<T>, cfg: &SafetyConfig<T>) -> Vec<Vec2<T>> {
    let mut out = vec![proposal];
    for s in [0.75, 0.5, 0.25] {
        out.push(proposal * T::lit(s));
    }
    if current.norm() <= cfg.max_speed {
        out.push(current);
    }
    let directions = 16;
    for k in 0..directions {
        let dir = Vec2::from_heading(T::lit(360.0 * k as f64 / directions as f64));
        for s in [1.0, 0.5, 0.25] {
            out.push(dir * (cfg.max_speed * T::lit(s)));
        }
    }
    out.push(Vec2::zero());
    out
}

/// Replaces every proposal that could lead to a collision or leave the field
/// with the nearest admissible velocity.
///
/// Robots are decided in world order. A candidate for robot `i` is admissible
/// when, after one period and a full stop at maximum deceleration, its path
/// keeps `min_separation` from the paths already chosen for earlier robots and
/// from the stopping paths of later robots, and stays inside the field inset.
/// If the invariant held for the previous period, the zero velocity is always
/// admissible.
pub fn crash_prevention<T: Real>(
    proposals: &[Vec2<T>],
    world: &WorldState<T>,
    cfg: &SafetyConfig<T>,
    model: &RobotModel<T>,
) -> Vec<Vec2<T>> {
    let n = world.robots.len();
    assert_eq!(proposals.len(), n, "one proposal per robot");
    let min_sep = cfg.min_separation() + T::lit(SLACK);
    let slack = T::lit(SLACK);
    let mut paths: Vec<Segment<T>> = world
        .robots
        .iter()
        .map(|r| swept(r.pos(), r.vel(), Vec2::zero(), model, cfg))
        .collect();
    let mut chosen = Vec::with_capacity(n);
    for (i, robot) in world.robots.iter().enumerate() {
        let admissible = |c: Vec2<T>| -> Option<Segment<T>> {
            let seg = swept(robot.pos(), robot.vel(), c, model, cfg);
            if !cfg.contains(seg.a, slack) || !cfg.contains(seg.b, slack) {
                return None;
            }
            let clear = paths
                .iter()
                .enumerate()
                .all(|(j, other)| j == i || seg.dist(other) >= min_sep);
            clear.then_some(seg)
        };
        let proposal = proposals[i];
        let pick = match admissible(proposal) {
            Some(seg) => Some((proposal, seg)),
            None => {
                let mut cands: Vec<(usize, Vec2<T>)> =
                    candidates(proposal, robot.vel(), cfg).into_iter().enumerate().skip(1).collect();
                cands.sort_by(|a, b| {
                    let da = (a.1 - proposal).norm_sq();
                    let db = (b.1 - proposal).norm_sq();
                    da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(&b.0))
                });
                cands.into_iter().find_map(|(_, c)| admissible(c).map(|s| (c, s)))
            }
        };
        let (v, seg) = pick.unwrap_or_else(|| {
            (Vec2::zero(), swept(robot.pos(), robot.vel(), Vec2::zero(), model, cfg))
        });
        paths[i] = seg;
        chosen.push(v);
    }
    chosen
}

/// Per-robot guard bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotGuard<T> {
    pub id: u32,
    pub last_command_time: Option<T>,
    pub active: Option<Command<T>>,
    /// Set by the timeout supervisor, cleared by the next command.
    pub timed_out: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuardState<T> {
    pub robots: Vec<RobotGuard<T>>,
    pub latest: Option<WorldState<T>>,
}

impl<T: Real> Default for GuardState<T> {
    fn default() -> Self {
        Self { robots: Vec::new(), latest: None }
    }
}

impl<T: Real> GuardState<T> {
    pub fn entry(&mut self, id: u32) -> &mut RobotGuard<T> {
        if let Some(i) = self.robots.iter().position(|r| r.id == id) {
            return &mut self.robots[i];
        }
        self.robots.push(RobotGuard { id, last_command_time: None, active: None, timed_out: false });
        self.robots.last_mut().unwrap()
    }

    pub fn get(&self, id: u32) -> Option<&RobotGuard<T>> {
        self.robots.iter().find(|r| r.id == id)
    }

    /// Records a command at `now`; continuous skills become the active action.
    pub fn record(&mut self, id: u32, cmd: &Command<T>, now: T) {
        let e = self.entry(id);
        e.last_command_time = Some(now);
        e.timed_out = false;
        match cmd.skill {
            Skill::Halt => e.active = None,
            s if s.is_continuous() => e.active = Some(cmd.clone()),
            _ => {}
        }
    }
}

/// Robots whose last command is older than the timeout window. Each robot is
/// reported once per silence; its active command is dropped.
pub fn timeout_supervisor<T: Real>(state: &mut GuardState<T>, now: T, cfg: &SafetyConfig<T>) -> Vec<u32> {
    let mut halts = Vec::new();
    for r in &mut state.robots {
        if let Some(last) = r.last_command_time {
            if !r.timed_out && last < now - cfg.command_timeout {
                r.timed_out = true;
                r.active = None;
                halts.push(r.id);
            }
        }
    }
    halts
}
