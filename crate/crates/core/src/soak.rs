//! Randomised command traffic for soak-testing the guard: wandering and
//! colliding targets, off-field goals, kicks from anywhere and long
//! silences, all reproducible from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Vec2;
use crate::marionette::Stack;
use crate::safety::{Rejection, SafetyConfig};
use crate::skill::{Command, Skill};
use crate::world::{BallState, RobotState, WorldState};

/// `n` robots placed at random, clear of each other and inside the field.
pub fn random_world(n: u32, seed: u64, cfg: &SafetyConfig<f64>) -> WorldState<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut robots: Vec<RobotState<f64>> = Vec::new();
    let (hx, hy) = (cfg.inset_half_x() - 0.05, cfg.inset_half_y() - 0.05);
    while robots.len() < n as usize {
        let p = Vec2::new(rng.random_range(-hx..hx), rng.random_range(-hy..hy));
        if robots.iter().all(|r| r.pos().dist(p) > cfg.min_separation() + 0.1) {
            robots.push(RobotState::at(robots.len() as u32, p.x, p.y, rng.random_range(-180.0..180.0)));
        }
    }
    WorldState { timestamp: 0.0, frame_seq: 0, robots, ball: BallState::at_rest(0.0, 0.0), items: vec![] }
}

/// One submitted command and the guard's answer.
#[derive(Debug, Clone, PartialEq)]
pub struct Issued {
    pub robot_id: u32,
    pub command: Command<f64>,
    pub result: Result<Command<f64>, Rejection>,
}

pub struct Soak {
    rng: ChaCha8Rng,
    next_at: Vec<f64>,
}

impl Soak {
    pub fn new(seed: u64, robots: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), next_at: vec![0.0; robots] }
    }

    fn pick(&mut self, id: u32, world: &WorldState<f64>) -> Option<Command<f64>> {
        let rng = &mut self.rng;
        let roll: f64 = rng.random();
        let cmd = if roll < 0.30 {
            Command::move_to(rng.random_range(-2.5..2.5), rng.random_range(-1.8..1.8), rng.random_range(-360.0..360.0))
        } else if roll < 0.50 {
            // Straight at another robot.
            let others: Vec<_> = world.robots.iter().filter(|r| r.id != id).collect();
            let o = others[rng.random_range(0..others.len())];
            Command::move_to(o.x, o.y, 0.0)
        } else if roll < 0.60 {
            Command::turn_to(rng.random_range(-720.0..720.0))
        } else if roll < 0.68 {
            Command::kick(rng.random_range(-0.5..1.5))
        } else if roll < 0.72 {
            Command { skill: Skill::Dribble, params: vec![f64::from(rng.random_range(0..2u8))] }
        } else if roll < 0.77 {
            Command::bare(Skill::Catch)
        } else if roll < 0.82 {
            Command::bare(Skill::Block)
        } else if roll < 0.87 {
            Command::bare(Skill::Halt)
        } else {
            return None;
        };
        Some(cmd)
    }

    /// Issues whatever commands are due at the stack's current time.
    pub fn drive(&mut self, stack: &mut Stack<f64>) -> Vec<Issued> {
        let now = stack.now();
        let mut out = Vec::new();
        for i in 0..self.next_at.len() {
            if now < self.next_at[i] {
                continue;
            }
            let id = stack.world().robots[i].id;
            match self.pick(id, stack.world()) {
                Some(command) => {
                    let result = stack.submit(id, &command);
                    out.push(Issued { robot_id: id, command, result });
                    self.next_at[i] = now + self.rng.random_range(0.05..2.0);
                }
                // Go quiet for long enough to trip the command timeout.
                None => self.next_at[i] = now + self.rng.random_range(5.0..9.0),
            }
        }
        out
    }
}
