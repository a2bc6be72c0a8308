//! The Marionette stack: executes externally supplied skill commands after the
//! guard has validated them, and advances the simulation one control period at
//! a time.

use crate::controller::{self, Proposal};
use crate::geom::Vec2;
use crate::safety::{admit, clamp_velocity, crash_prevention, timeout_supervisor, GuardState, Rejection, SafetyConfig};
use crate::scenario::{policy_velocity, Policy, Scenario};
use crate::sim::{Actuation, Simulator};
use crate::skill::{is_complete, Command, Skill};
use crate::num::Real;
use crate::world::WorldState;

#[derive(Debug, Clone)]
pub struct Stack<T> {
    world: WorldState<T>,
    pub sim: Simulator<T>,
    pub cfg: SafetyConfig<T>,
    pub guard: GuardState<T>,
    policies: Vec<(u32, Policy)>,
    /// One-shot effects for the next period, indexed like `world.robots`.
    pending: Vec<Actuation<T>>,
}

impl<T: Real> Stack<T> {
    pub fn new(world: WorldState<T>, cfg: SafetyConfig<T>) -> Self {
        let sim = Simulator {
            half_x: cfg.field_half_x,
            half_y: cfg.field_half_y,
            ..Simulator::default()
        };
        let pending = vec![Actuation::default(); world.robots.len()];
        Self { world, sim, cfg, guard: GuardState::default(), policies: Vec::new(), pending }
    }

    pub fn from_scenario(scenario: &Scenario<T>, cfg: SafetyConfig<T>) -> Self {
        let mut s = Self::new(scenario.world.clone(), cfg);
        s.sim.walls = scenario.walls.clone();
        s.policies = scenario.policies.clone();
        s
    }

    pub fn world(&self) -> &WorldState<T> {
        &self.world
    }

    pub fn now(&self) -> T {
        self.world.timestamp
    }

    /// Validates `cmd` for `robot_id` and makes it the robot's current action.
    /// Returns the command as admitted (targets truncated to the field).
    pub fn submit(&mut self, robot_id: u32, cmd: &Command<T>) -> Result<Command<T>, Rejection> {
        let admitted = admit(robot_id, cmd, &self.world, &self.cfg)?;
        let idx = self.world.robot_index(robot_id).expect("admitted robots exist");
        self.guard.record(robot_id, &admitted, self.now());
        let slot = &mut self.pending[idx];
        match admitted.skill {
            Skill::Kick => slot.kick = Some(admitted.params[0]),
            Skill::Dribble => slot.dribbler = Some(admitted.params[0] != T::zero()),
            Skill::Catch => slot.dribbler = Some(true),
            Skill::Halt => slot.stop = true,
            Skill::MoveTo | Skill::TurnTo | Skill::Block | Skill::SetId => {}
        }
        Ok(admitted)
    }

    /// Stops a robot immediately and drops its action, without counting as a
    /// command for the timeout window.
    pub fn halt(&mut self, robot_id: u32) {
        if let Some(idx) = self.world.robot_index(robot_id) {
            self.guard.entry(robot_id).active = None;
            self.pending[idx].stop = true;
        }
    }

    pub fn is_complete(&self, robot_id: u32, cmd: &Command<T>) -> bool {
        match self.world.robot(robot_id) {
            Some(r) => is_complete(cmd, r, &self.world, &self.sim.robot, &self.sim.ball),
            None => false,
        }
    }

    /// Advances one control period and returns the new frame.
    pub fn step(&mut self) -> &WorldState<T> {
        let now = self.now();
        for id in timeout_supervisor(&mut self.guard, now, &self.cfg) {
            if let Some(idx) = self.world.robot_index(id) {
                self.pending[idx].stop = true;
            }
        }

        let mut act = std::mem::replace(&mut self.pending, vec![Actuation::default(); self.world.robots.len()]);
        let mut view = self.world.clone();
        let mut proposals = Vec::with_capacity(view.robots.len());
        for (i, robot) in self.world.robots.iter().enumerate() {
            if act[i].stop {
                view.robots[i].set_vel(Vec2::zero());
                proposals.push(Proposal::still());
                continue;
            }
            let active = self.guard.get(robot.id).and_then(|g| g.active.as_ref());
            let policy = self.policies.iter().find(|(id, _)| *id == robot.id).map(|(_, p)| *p);
            let p = match (active, policy) {
                (Some(cmd), _) => controller::propose(robot, cmd, &self.world, &self.cfg),
                (None, Some(pol)) => Proposal {
                    velocity: policy_velocity(pol, robot, &self.world, &self.cfg),
                    omega: T::zero(),
                },
                (None, None) => Proposal::still(),
            };
            let (v, w) = clamp_velocity(p.velocity, p.omega, &self.cfg);
            proposals.push(Proposal { velocity: v, omega: w });
        }

        let velocities: Vec<Vec2<T>> = proposals.iter().map(|p| p.velocity).collect();
        let safe = crash_prevention(&velocities, &view, &self.cfg, &self.sim.robot);
        for (i, a) in act.iter_mut().enumerate() {
            if !a.stop {
                a.velocity = safe[i];
                a.omega = proposals[i].omega;
            }
        }
        self.world = self.sim.step(&self.world, &act, self.cfg.control_period);
        &self.world
    }
}
