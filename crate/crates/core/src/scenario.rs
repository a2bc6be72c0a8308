//! Scenario files and the shipped presets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Segment, Vec2};
use crate::grid::GridMap;
use crate::num::Real;
use crate::safety::SafetyConfig;
use crate::world::{BallState, Item, RobotState, WorldState};

pub const PRESETS: [&str; 5] = ["maze", "collection", "tag", "penalty", "soccer-2v2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Background {
    #[default]
    Pitch,
    Maze,
}

/// Built-in opponent behaviour for robots the students do not control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    /// Runs away from the given robot.
    Flee { from: u32 },
    /// Tracks the ball along its goal line.
    Goalie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobotSpec {
    pub id: u32,
    /// Fixed pose; when absent the robot is placed on a random free cell.
    #[serde(default)]
    pub pose: Option<[f64; 3]>,
    #[serde(default = "yes")]
    pub available: bool,
    #[serde(default)]
    pub policy: Option<Policy>,
}

fn yes() -> bool {
    true
}

fn default_cell() -> f64 {
    0.3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub robots: Vec<RobotSpec>,
    /// Ball position (m).
    pub ball: [f64; 2],
    #[serde(default)]
    pub background: Background,
    /// Walls between pairs of edge-adjacent cells.
    #[serde(default)]
    pub walls: Vec<[[i32; 2]; 2]>,
    #[serde(default)]
    pub items: Vec<[f64; 2]>,
    /// Extra items placed on random free cells.
    #[serde(default)]
    pub random_items: usize,
    #[serde(default)]
    pub random_seed: u64,
    #[serde(default = "default_cell")]
    pub cell_size: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`")]
    Unknown(String),
    #[error("robots {0} and {1} overlap")]
    Overlap(u32, u32),
    #[error("robot {0} starts outside the field")]
    OutOfField(u32),
    #[error("duplicate robot id {0}")]
    DuplicateId(u32),
    #[error("invalid wall between {0:?} and {1:?}")]
    BadWall([i32; 2], [i32; 2]),
    #[error("no free cell left for random placement")]
    NoRoom,
    #[error("could not parse scenario: {0}")]
    Parse(String),
}

/// A loaded scenario: the initial world plus static geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario<T> {
    pub name: String,
    pub world: WorldState<T>,
    pub background: Background,
    pub grid: GridMap<T>,
    pub walls: Vec<Segment<T>>,
    pub wall_cells: Vec<[[i32; 2]; 2]>,
    pub policies: Vec<(u32, Policy)>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn preset(name: &str, seed: u64) -> Result<Self, ScenarioError> {
        let fixed = |id, x, y, t| RobotSpec { id, pose: Some([x, y, t]), available: true, policy: None };
        let cfg = match name {
            "maze" => ScenarioConfig {
                name: name.into(),
                robots: vec![fixed(0, -1.65, -1.05, 0.0)],
                ball: [1.65, 1.05],
                background: Background::Maze,
                walls: maze_walls(),
                items: vec![],
                random_items: 0,
                random_seed: seed,
                cell_size: 0.3,
            },
            "collection" => ScenarioConfig {
                name: name.into(),
                robots: vec![RobotSpec { id: 0, pose: None, available: true, policy: None }],
                ball: [0.0, 0.0],
                background: Background::Pitch,
                walls: vec![],
                items: vec![],
                random_items: 5,
                random_seed: seed,
                cell_size: 0.3,
            },
            "tag" => ScenarioConfig {
                name: name.into(),
                robots: vec![
                    fixed(0, -1.0, 0.0, 0.0),
                    RobotSpec {
                        id: 1,
                        pose: Some([1.0, 0.0, 180.0]),
                        available: false,
                        policy: Some(Policy::Flee { from: 0 }),
                    },
                ],
                ball: [0.0, -1.0],
                background: Background::Pitch,
                walls: vec![],
                items: vec![],
                random_items: 0,
                random_seed: seed,
                cell_size: 0.3,
            },
            "penalty" => ScenarioConfig {
                name: name.into(),
                robots: vec![
                    fixed(0, 0.5, 0.0, 0.0),
                    RobotSpec {
                        id: 1,
                        pose: Some([1.65, 0.0, 180.0]),
                        available: false,
                        policy: Some(Policy::Goalie),
                    },
                ],
                ball: [0.9, 0.0],
                background: Background::Pitch,
                walls: vec![],
                items: vec![],
                random_items: 0,
                random_seed: seed,
                cell_size: 0.3,
            },
            "soccer-2v2" => ScenarioConfig {
                name: name.into(),
                robots: vec![
                    fixed(0, -1.5, 0.0, 0.0),
                    fixed(1, -0.6, 0.4, 0.0),
                    fixed(2, 1.5, 0.0, 180.0),
                    fixed(3, 0.6, -0.4, 180.0),
                ],
                ball: [0.0, 0.0],
                background: Background::Pitch,
                walls: vec![],
                items: vec![],
                random_items: 0,
                random_seed: seed,
                cell_size: 0.3,
            },
            other => return Err(ScenarioError::Unknown(other.to_string())),
        };
        Ok(cfg)
    }
}

/// A serpentine maze: three wall columns, each open at alternating ends.
fn maze_walls() -> Vec<[[i32; 2]; 2]> {
    let mut walls = Vec::new();
    for (col, open) in [(2, [6, 7]), (5, [0, 1]), (8, [6, 7])] {
        for row in (0..8).filter(|r| !open.contains(r)) {
            walls.push([[col, row], [col + 1, row]]);
        }
    }
    walls
}

/// Loads a scenario into a world. Random placements depend only on the seed.
pub fn load_scenario<T: Real>(cfg: &ScenarioConfig, safety: &SafetyConfig<T>) -> Result<Scenario<T>, ScenarioError> {
    let half_x = safety.field_half_x;
    let half_y = safety.field_half_y;
    let grid = GridMap::covering(half_x, half_y, T::lit(cfg.cell_size));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.random_seed);

    let mut walls = Vec::new();
    for [a, b] in &cfg.walls {
        let seg = grid.wall_between((a[0], a[1]), (b[0], b[1])).ok_or(ScenarioError::BadWall(*a, *b))?;
        walls.push(seg);
    }

    let mut free: Vec<(i32, i32)> =
        (0..grid.cols).flat_map(|i| (0..grid.rows).map(move |j| (i, j))).collect();
    free.shuffle(&mut rng);

    let min_sep = safety.min_separation();
    let mut robots: Vec<RobotState<T>> = Vec::new();
    let mut policies = Vec::new();
    let mut ids = std::collections::BTreeSet::new();
    for entry in &cfg.robots {
        if !ids.insert(entry.id) {
            return Err(ScenarioError::DuplicateId(entry.id));
        }
        let mut r = match entry.pose {
            Some([x, y, t]) => RobotState::at(entry.id, T::lit(x), T::lit(y), T::lit(t)),
            None => {
                let cell = loop {
                    let c = free.pop().ok_or(ScenarioError::NoRoom)?;
                    let p = grid.center(c);
                    if robots.iter().all(|o| o.pos().dist(p) >= min_sep) {
                        break c;
                    }
                };
                let p = grid.center(cell);
                RobotState::at(entry.id, p.x, p.y, T::zero())
            }
        };
        r.available = entry.available;
        if !safety.contains(r.pos(), T::zero()) {
            return Err(ScenarioError::OutOfField(entry.id));
        }
        if let Some(o) = robots.iter().find(|o| o.pos().dist(r.pos()) < min_sep) {
            return Err(ScenarioError::Overlap(o.id, entry.id));
        }
        if let Some(p) = entry.policy {
            policies.push((entry.id, p));
        }
        robots.push(r);
    }

    let mut items: Vec<Item<T>> =
        cfg.items.iter().map(|[x, y]| Item { x: T::lit(*x), y: T::lit(*y), collected: false }).collect();
    for _ in 0..cfg.random_items {
        let cell = loop {
            let c = free.pop().ok_or(ScenarioError::NoRoom)?;
            let p = grid.center(c);
            if robots.iter().all(|r| r.pos().dist(p) > T::lit(0.3)) {
                break c;
            }
        };
        let p = grid.center(cell);
        items.push(Item { x: p.x, y: p.y, collected: false });
    }

    let world = WorldState {
        timestamp: T::zero(),
        frame_seq: 0,
        robots,
        ball: BallState::at_rest(T::lit(cfg.ball[0]), T::lit(cfg.ball[1])),
        items,
    };
    Ok(Scenario {
        name: cfg.name.clone(),
        world,
        background: cfg.background,
        grid,
        walls,
        wall_cells: cfg.walls.clone(),
        policies,
    })
}

/// Proposal of a built-in policy, before the guard sees it.
pub fn policy_velocity<T: Real>(policy: Policy, me: &RobotState<T>, world: &WorldState<T>, safety: &SafetyConfig<T>) -> Vec2<T> {
    match policy {
        Policy::Flee { from } => {
            let Some(chaser) = world.robot(from) else { return Vec2::zero() };
            let away = me.pos() - chaser.pos();
            if away.norm() > T::lit(1.2) {
                return Vec2::zero();
            }
            let dir = away.normalized().unwrap_or(Vec2::new(T::zero(), T::one()));
            // slide along the boundary instead of pinning into a corner
            let mut goal = safety.clamp_target(me.pos() + dir * T::lit(0.5));
            if goal.dist(me.pos()) < T::lit(0.05) {
                goal = safety.clamp_target(me.pos() + dir.perp() * T::lit(0.5));
            }
            let gap = goal - me.pos();
            gap.normalized().map(|d| d * (safety.max_speed * T::lit(0.8))).unwrap_or(Vec2::zero())
        }
        Policy::Goalie => {
            let mouth = T::lit(0.35);
            let y = world.ball.y.max(-mouth).min(mouth);
            let gap = Vec2::new(me.x, y) - me.pos();
            let dist = gap.norm();
            if dist < T::lit(0.005) {
                Vec2::zero()
            } else {
                gap * (safety.max_speed.min((safety.max_decel * dist).sqrt()) / dist)
            }
        }
    }
}
