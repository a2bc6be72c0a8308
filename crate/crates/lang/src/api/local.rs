//! An in-process port that drives the simulator directly, in lockstep with
//! the program: simulated time only advances while a command is running.

use std::time::{Duration, Instant};

use robojs_core::num::angle_diff;
use robojs_core::skill::{Skill, COMMAND_DEADLINE};
use robojs_core::{Command, Stack, Vec2, WorldState};

use crate::exec::io::{Completion, IoFailure, IoPort, IoReply, IoRequest, Snapshot, StopHandle};

/// A running command is resent this often (s of simulated time) so the
/// guard's command timeout never fires while the program waits.
pub const KEEPALIVE: f64 = 1.0;
/// Window over which a motion must make progress (s).
pub const STALL_WINDOW: f64 = 1.0;
/// Progress below these over one window means the robot is stuck.
pub const STALL_DISTANCE: f64 = 0.001;
pub const STALL_ANGLE: f64 = 0.1;

/// Watches one continuous command until it completes, runs out of time or
/// stops making progress.
#[derive(Debug, Clone)]
pub struct CompletionWatcher {
    started: f64,
    window_start: f64,
    window_pos: Vec2,
    window_theta: f64,
    pub deadline: f64,
}

impl CompletionWatcher {
    pub fn new(now: f64, pos: Vec2, theta: f64) -> Self {
        Self { started: now, window_start: now, window_pos: pos, window_theta: theta, deadline: COMMAND_DEADLINE }
    }

    /// `Some` once the command has finished one way or the other.
    pub fn observe(&mut self, now: f64, pos: Vec2, theta: f64, complete: bool) -> Option<Completion> {
        if complete {
            return Some(Completion::Done);
        }
        if now - self.started >= self.deadline {
            return Some(Completion::GaveUp);
        }
        if now - self.window_start >= STALL_WINDOW {
            let moved = pos.dist(self.window_pos);
            let turned = angle_diff(self.window_theta, theta).abs();
            if moved < STALL_DISTANCE && turned < STALL_ANGLE {
                return Some(Completion::GaveUp);
            }
            self.window_start = now;
            self.window_pos = pos;
            self.window_theta = theta;
        }
        None
    }
}

type FrameObserver = Box<dyn FnMut(&WorldState) + Send>;

pub struct LocalSimPort {
    pub stack: Stack,
    /// Sleep one control period per step so motion plays at wall-clock speed.
    pub realtime: bool,
    observer: Option<FrameObserver>,
}

impl LocalSimPort {
    pub fn new(stack: Stack) -> Self {
        Self { stack, realtime: false, observer: None }
    }

    pub fn realtime(mut self, on: bool) -> Self {
        self.realtime = on;
        self
    }

    /// Called with every simulated frame.
    pub fn on_frame(mut self, f: impl FnMut(&WorldState) + Send + 'static) -> Self {
        self.observer = Some(Box::new(f));
        self
    }

    fn step(&mut self) {
        let started = Instant::now();
        let world = self.stack.step();
        if let Some(obs) = self.observer.as_mut() {
            obs(world);
        }
        if self.realtime {
            let period = Duration::from_secs_f64(self.stack.cfg.control_period);
            if let Some(rest) = period.checked_sub(started.elapsed()) {
                std::thread::sleep(rest);
            }
        }
    }

    fn pose(&self, id: u32) -> (Vec2, f64) {
        self.stack.world().robot(id).map_or((Vec2::zero(), 0.0), |r| (r.pos(), r.theta))
    }
}

impl IoPort for LocalSimPort {
    fn snapshot(&mut self) -> Option<Snapshot> {
        Some(Snapshot { world: self.stack.world().clone(), age: 0.0 })
    }

    fn dispatch(&mut self, request: IoRequest, stop: &StopHandle) -> Option<IoReply> {
        let id = request.robot_id;
        let reply = |result| Some(IoReply { request_id: request.request_id, result });
        let admitted: Command = match self.stack.submit(id, &request.command) {
            Ok(c) => c,
            Err(r) => return reply(Err(IoFailure::Rejected { code: r.code().into(), message: r.to_string() })),
        };
        if !admitted.skill.is_continuous() {
            if admitted.skill != Skill::SetId {
                // One-shot effects apply on the next period.
                self.step();
            }
            return reply(Ok(Completion::Done));
        }
        let (pos, theta) = self.pose(id);
        let mut watch = CompletionWatcher::new(self.stack.now(), pos, theta);
        let mut last_sent = self.stack.now();
        loop {
            if stop.is_stopped() {
                self.stack.halt(id);
                return None;
            }
            let (pos, theta) = self.pose(id);
            let complete = self.stack.is_complete(id, &admitted);
            if let Some(done) = watch.observe(self.stack.now(), pos, theta, complete) {
                self.stack.halt(id);
                return reply(Ok(done));
            }
            if self.stack.now() - last_sent >= KEEPALIVE {
                last_sent = self.stack.now();
                if let Err(r) = self.stack.submit(id, &admitted) {
                    return reply(Err(IoFailure::Rejected { code: r.code().into(), message: r.to_string() }));
                }
            }
            self.step();
        }
    }

    fn halt(&mut self, robot_id: u32) {
        self.stack.halt(robot_id);
        self.step();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn watcher_detects_stall_and_deadline() {
        let mut w = CompletionWatcher::new(0.0, Vec2::zero(), 0.0);
        assert_eq!(w.observe(0.5, Vec2::new(0.1, 0.0), 0.0, false), None);
        assert_eq!(w.observe(1.0, Vec2::new(0.2, 0.0), 0.0, false), None);
        assert_eq!(w.observe(2.0, Vec2::new(0.2005, 0.0), 0.0, false), Some(Completion::GaveUp));
        let mut w = CompletionWatcher::new(0.0, Vec2::zero(), 0.0);
        let mut t = 0.0;
        let mut x = 0.0;
        let result = loop {
            t += 0.5;
            x += 0.01;
            if let Some(c) = w.observe(t, Vec2::new(x, 0.0), 0.0, false) {
                break (t, c);
            }
        };
        assert_eq!(result, (COMMAND_DEADLINE, Completion::GaveUp));
        assert_eq!(w.observe(0.0, Vec2::zero(), 0.0, true), Some(Completion::Done));
    }
}
