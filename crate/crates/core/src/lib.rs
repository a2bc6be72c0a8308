//! World model, safety guard and simulator behind the RoboJS robot platform.
//!
//! Everything here is generic over the scalar type ([`Real`]); the aliases at
//! the crate root fix it to `f64`, which is what the runtime and the wire
//! protocol use.

pub mod controller;
pub mod geom;
pub mod grid;
pub mod marionette;
pub mod model;
pub mod num;
pub mod safety;
pub mod scenario;
pub mod sim;
pub mod skill;
pub mod soak;
pub mod world;

pub use num::Real;
pub use safety::{ConfigError, Rejection};
pub use scenario::{Background, Policy, ScenarioConfig, ScenarioError, PRESETS};
pub use skill::Skill;

pub type Vec2 = geom::Vec2<f64>;
pub type WorldState = world::WorldState<f64>;
pub type RobotState = world::RobotState<f64>;
pub type BallState = world::BallState<f64>;
pub type Command = skill::Command<f64>;
pub type SafetyConfig = safety::SafetyConfig<f64>;
pub type GuardState = safety::GuardState<f64>;
pub type RobotModel = model::RobotModel<f64>;
pub type Simulator = sim::Simulator<f64>;
pub type Scenario = scenario::Scenario<f64>;
pub type GridMap = grid::GridMap<f64>;
pub type Stack = marionette::Stack<f64>;

pub type WorldStateF32 = world::WorldState<f32>;
pub type StackF32 = marionette::Stack<f32>;
