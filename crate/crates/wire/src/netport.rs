//! Runs programs against a remote guard: each robot call becomes an
//! acknowledged COMMAND, and completion is judged from the state stream.

use std::time::{Duration, Instant};

use robojs_core::model::BallModel;
use robojs_core::skill::is_complete;
use robojs_core::{Command, RobotModel, WorldState};
use robojs_lang::api::local::{CompletionWatcher, KEEPALIVE};
use robojs_lang::exec::{Completion, IoFailure, IoPort, IoReply, IoRequest, Snapshot, StopHandle};

use crate::client::{Client, Reply, REPLY_TIMEOUT, RESEND_INTERVAL};
use crate::envelope::CommandMsg;

/// No frame for this long while a motion runs means the link is gone.
pub const FRAME_SILENCE: Duration = Duration::from_secs(2);

pub struct NetPort {
    client: Client,
    robot: RobotModel,
    ball: BallModel<f64>,
}

enum Sent {
    Admitted(Command),
    Failed(IoFailure),
    Stopped,
}

impl NetPort {
    pub fn new(client: Client) -> Self {
        Self { client, robot: RobotModel::default(), ball: BallModel::default() }
    }

    pub fn client(&self) -> &Client {
        &self.client
    }

    fn send(&self, robot_id: u32, cmd: &Command, stop: &StopHandle) -> Sent {
        let msg = CommandMsg {
            robot_id,
            skill: cmd.skill,
            params: cmd.params.clone(),
            request_id: self.client.next_request_id(),
        };
        match self.client.reliable_command_with(msg, RESEND_INTERVAL, REPLY_TIMEOUT, &|| stop.is_stopped()) {
            None => Sent::Stopped,
            Some(Err(_)) => Sent::Failed(IoFailure::TransportTimeout),
            Some(Ok(Reply::Reject(r))) => Sent::Failed(IoFailure::Rejected { code: r.code, message: r.message }),
            Some(Ok(Reply::Ack(a))) => match Command::new(cmd.skill, a.params) {
                Ok(c) => Sent::Admitted(c),
                Err(m) => Sent::Failed(IoFailure::Disconnected(format!("malformed acknowledgement: {m}"))),
            },
        }
    }

    fn next_frame(&self, after: Option<u64>) -> Result<WorldState, IoFailure> {
        self.client
            .wait_frame(after, FRAME_SILENCE)
            .map(|(w, _)| w)
            .ok_or_else(|| IoFailure::Disconnected("the state stream went silent".into()))
    }

    fn wait_done(&self, id: u32, cmd: &Command, stop: &StopHandle) -> Option<Result<Completion, IoFailure>> {
        let mut frame = match self.next_frame(self.client.latest().map(|(w, _)| w.frame_seq)) {
            Ok(f) => f,
            Err(e) => return Some(Err(e)),
        };
        let mut watch = None;
        let mut last_sent = frame.timestamp;
        loop {
            if stop.is_stopped() {
                self.client.halt(id);
                return None;
            }
            let Some(robot) = frame.robot(id) else {
                return Some(Err(IoFailure::Disconnected(format!("robot {id} left the field"))));
            };
            let watch = watch.get_or_insert_with(|| CompletionWatcher::new(frame.timestamp, robot.pos(), robot.theta));
            let complete = is_complete(cmd, robot, &frame, &self.robot, &self.ball);
            if let Some(done) = watch.observe(frame.timestamp, robot.pos(), robot.theta, complete) {
                self.client.halt(id);
                return Some(Ok(done));
            }
            if frame.timestamp - last_sent >= KEEPALIVE {
                last_sent = frame.timestamp;
                match self.send(id, cmd, stop) {
                    Sent::Admitted(_) => {}
                    Sent::Failed(f) => return Some(Err(f)),
                    Sent::Stopped => {
                        self.client.halt(id);
                        return None;
                    }
                }
            }
            frame = match self.next_frame(Some(frame.frame_seq)) {
                Ok(f) => f,
                Err(e) => return Some(Err(e)),
            };
        }
    }
}

impl IoPort for NetPort {
    fn snapshot(&mut self) -> Option<Snapshot> {
        self.client.latest().map(|(world, at)| Snapshot { world, age: at.elapsed().as_secs_f64() })
    }

    fn dispatch(&mut self, request: IoRequest, stop: &StopHandle) -> Option<IoReply> {
        let id = request.robot_id;
        let result = match self.send(id, &request.command, stop) {
            Sent::Stopped => return None,
            Sent::Failed(f) => Err(f),
            Sent::Admitted(cmd) if cmd.skill.is_continuous() => self.wait_done(id, &cmd, stop)?,
            Sent::Admitted(_) => {
                // Let one frame pass so one-shot effects are visible.
                let seen = self.client.latest().map(|(w, _)| w.frame_seq);
                let _ = self.client.wait_frame(seen, Duration::from_millis(200));
                Ok(Completion::Done)
            }
        };
        Some(IoReply { request_id: request.request_id, result })
    }

    fn halt(&mut self, robot_id: u32) {
        self.client.halt(robot_id);
    }
}

/// Convenience for tests and tools: how long ago the last frame arrived.
pub fn frame_age(client: &Client) -> Option<Duration> {
    client.latest().map(|(_, at)| Instant::now() - at)
}
