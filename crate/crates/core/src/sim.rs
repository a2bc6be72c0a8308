//! Fixed-step kinematic simulation of omnidirectional robots and the ball.

use crate::geom::{Segment, Vec2};
use crate::model::{BallModel, RobotModel};
use crate::num::{wrap_degrees, Real};
use crate::skill::holds_ball;
use crate::world::WorldState;

/// What the robot stack asks a robot to do during one period.
#[derive(Debug, Clone, PartialEq)]
pub struct Actuation<T> {
    pub velocity: Vec2<T>,
    /// deg/s
    pub omega: T,
    /// Kick power in `[0, 1]` for a kick admitted this period.
    pub kick: Option<T>,
    /// New dribbler state, if it changes.
    pub dribbler: Option<bool>,
    /// Motors cut: velocity drops to zero immediately.
    pub stop: bool,
}

impl<T: Real> Default for Actuation<T> {
    fn default() -> Self {
        Self { velocity: Vec2::zero(), omega: T::zero(), kick: None, dribbler: None, stop: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulator<T> {
    pub robot: RobotModel<T>,
    pub ball: BallModel<T>,
    pub half_x: T,
    pub half_y: T,
    pub walls: Vec<Segment<T>>,
    /// Items count as collected within this center distance (m).
    pub pickup_range: T,
}

impl<T: Real> Default for Simulator<T> {
    fn default() -> Self {
        Self {
            robot: RobotModel::default(),
            ball: BallModel::default(),
            half_x: T::lit(1.8),
            half_y: T::lit(1.2),
            walls: Vec::new(),
            pickup_range: T::lit(0.12),
        }
    }
}

impl<T: Real> Simulator<T> {
    /// Advances the world by `dt`. `act` is indexed like `world.robots`;
    /// missing entries mean "no command".
    pub fn step(&self, world: &WorldState<T>, act: &[Actuation<T>], dt: T) -> WorldState<T> {
        let mut next = world.clone();
        next.frame_seq += 1;
        next.timestamp = world.timestamp + dt;
        let idle = Actuation::default();
        let radius = self.robot.radius;

        for (i, robot) in next.robots.iter_mut().enumerate() {
            let a = act.get(i).unwrap_or(&idle);
            if let Some(on) = a.dribbler {
                robot.dribbler = on;
            }
            if a.stop {
                robot.set_vel(Vec2::zero());
                robot.omega = T::zero();
                continue;
            }
            let (p, v) = self.robot.advance(robot.pos(), robot.vel(), a.velocity, dt);
            let blocked = self.walls.iter().any(|w| w.dist_to_point(p) < radius)
                || p.x.abs() > self.half_x - radius
                || p.y.abs() > self.half_y - radius;
            if blocked {
                robot.set_vel(Vec2::zero());
            } else {
                robot.set_pos(p);
                robot.set_vel(v);
            }
            robot.omega = a.omega;
            robot.theta = wrap_degrees(robot.theta + a.omega * dt);
        }

        self.step_ball(&mut next, act, dt);

        for item in next.items.iter_mut().filter(|i| !i.collected) {
            let at = Vec2::new(item.x, item.y);
            if next.robots.iter().any(|r| r.pos().dist(at) <= self.pickup_range) {
                item.collected = true;
            }
        }
        next
    }

    fn step_ball(&self, world: &mut WorldState<T>, act: &[Actuation<T>], dt: T) {
        let contact = self.robot.radius + self.ball.radius;

        let kicker = act
            .iter()
            .enumerate()
            .find_map(|(i, a)| a.kick.map(|p| (i, p)))
            .filter(|(i, _)| *i < world.robots.len());
        if let Some((i, power)) = kicker {
            let r = &world.robots[i];
            let dir = Vec2::from_heading(r.theta);
            world.ball.set_pos(r.pos() + dir * contact);
            world.ball.set_vel(dir * (power * self.robot.kick_speed_per_power));
            return;
        }

        let holder = world
            .robots
            .iter()
            .find(|r| r.dribbler && holds_ball(r, world, &self.robot, &self.ball))
            .cloned();
        if let Some(r) = holder {
            world.ball.set_pos(r.pos() + Vec2::from_heading(r.theta) * contact);
            world.ball.set_vel(r.vel());
            return;
        }

        let (pos, vel) = self.roll(world.ball.pos(), world.ball.vel(), dt);
        world.ball.set_pos(pos);
        world.ball.set_vel(vel);
        self.resolve_ball_contacts(world);
    }

    /// Exact constant-deceleration rolling over one period.
    fn roll(&self, pos: Vec2<T>, vel: Vec2<T>, dt: T) -> (Vec2<T>, Vec2<T>) {
        let speed = vel.norm();
        if speed == T::zero() {
            return (pos, vel);
        }
        let f = self.ball.friction;
        let stop_time = speed / f;
        if stop_time <= dt {
            (pos + vel * (stop_time * T::half()), Vec2::zero())
        } else {
            let next = vel * ((speed - f * dt) / speed);
            (pos + (vel + next) * (dt * T::half()), next)
        }
    }

    fn resolve_ball_contacts(&self, world: &mut WorldState<T>) {
        let contact = self.robot.radius + self.ball.radius;
        let rb = self.ball.radius;
        let e = self.ball.restitution;
        for _ in 0..4 {
            let mut moved = false;
            for r in &world.robots {
                let rel = world.ball.pos() - r.pos();
                let d = rel.norm();
                if d < contact {
                    let n = rel.normalized().unwrap_or_else(|| Vec2::from_heading(r.theta));
                    world.ball.set_pos(r.pos() + n * contact);
                    let vb = world.ball.vel();
                    let vn = vb.dot(n).max(r.vel().dot(n));
                    world.ball.set_vel(vb - n * vb.dot(n) + n * vn);
                    moved = true;
                }
            }
            for w in &self.walls {
                let b = world.ball.pos();
                let c = w.closest_point(b);
                let rel = b - c;
                if rel.norm() < rb {
                    let n = rel.normalized().unwrap_or_else(|| (w.b - w.a).perp().normalized().unwrap());
                    world.ball.set_pos(c + n * rb);
                    let vb = world.ball.vel();
                    let vn = vb.dot(n);
                    if vn < T::zero() {
                        world.ball.set_vel(vb - n * (vn * (T::one() + e)));
                    }
                    moved = true;
                }
            }
            let (hx, hy) = (self.half_x - rb, self.half_y - rb);
            let mut b = world.ball.pos();
            let mut v = world.ball.vel();
            if b.x.abs() > hx {
                b.x = b.x.signum() * hx;
                v.x = -v.x * e;
                moved = true;
            }
            if b.y.abs() > hy {
                b.y = b.y.signum() * hy;
                v.y = -v.y * e;
                moved = true;
            }
            world.ball.set_pos(b);
            world.ball.set_vel(v);
            if !moved {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{BallState, RobotState};

    fn empty_world() -> WorldState<f64> {
        WorldState { timestamp: 0.0, frame_seq: 0, robots: vec![], ball: BallState::at_rest(0.0, 0.0), items: vec![] }
    }

    #[test]
    fn robot_accelerates_to_commanded_velocity() {
        let sim = Simulator::<f64>::default();
        let mut w = empty_world();
        w.robots.push(RobotState::at(0, -1.0, 0.5, 0.0));
        w.ball = BallState::at_rest(1.0, -1.0);
        let act = vec![Actuation { velocity: Vec2::new(1.0, 0.0), ..Default::default() }];
        for _ in 0..30 {
            w = sim.step(&w, &act, 1.0 / 60.0);
        }
        assert!((w.robots[0].vx - 1.0).abs() < 1e-12);
        assert!((w.robots[0].x - (-0.75)).abs() < 1e-12);
        assert_eq!(w.frame_seq, 30);
    }

    #[test]
    fn ball_rolls_one_meter_and_stops_in_two_seconds() {
        let sim = Simulator::<f64>::default();
        let mut w = empty_world();
        w.ball = BallState { x: -0.5, y: 0.0, vx: 1.0, vy: 0.0 };
        for _ in 0..120 {
            w = sim.step(&w, &[], 1.0 / 60.0);
        }
        assert!(w.ball.vx.abs() < 1e-9);
        assert!((w.ball.x - 0.5).abs() < 1e-9);
    }

    #[test]
    fn no_commands_keeps_robots_in_place() {
        let sim = Simulator::<f64>::default();
        let mut w = empty_world();
        w.robots.push(RobotState::at(0, 0.3, 0.3, 45.0));
        let before = w.robots.clone();
        w = sim.step(&w, &[], 1.0 / 60.0);
        assert_eq!(w.robots, before);
    }

    #[test]
    fn ball_pushed_out_of_robot() {
        let sim = Simulator::<f64>::default();
        let mut w = empty_world();
        w.robots.push(RobotState::at(0, 0.0, 0.0, 0.0));
        w.ball = BallState { x: 0.2, y: 0.0, vx: -1.0, vy: 0.0 };
        for _ in 0..30 {
            w = sim.step(&w, &[], 1.0 / 60.0);
            let d = w.ball.pos().dist(w.robots[0].pos());
            assert!(d >= sim.robot.radius + sim.ball.radius - 1e-12);
        }
    }
}
