//! The boundary between a running program and the robots. A program issues
//! at most one request at a time and is suspended until its reply arrives.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use robojs_core::{Command, WorldState};
use serde::{Deserialize, Serialize};

/// Shared flag used to stop a run from another thread.
#[derive(Debug, Clone, Default)]
pub struct StopHandle(Arc<AtomicBool>);

impl StopHandle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Requests termination; a no-op if nothing is running.
    pub fn stop(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_stopped(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }

    pub fn reset(&self) {
        self.0.store(false, Ordering::SeqCst);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Primitive {
    Number(f64),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IoRequest {
    pub request_id: u64,
    pub api_name: String,
    pub args: Vec<Primitive>,
    pub robot_id: u32,
    /// The skill command the call resolved to.
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Completion {
    /// The robot reached the goal of the command.
    Done,
    /// The per-command deadline passed, or the robot could make no further
    /// progress; the call still returns normally.
    GaveUp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum IoFailure {
    /// The safety guard refused the command.
    Rejected { code: String, message: String },
    /// No acknowledgement within the retry window.
    TransportTimeout,
    Disconnected(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IoReply {
    pub request_id: u64,
    pub result: Result<Completion, IoFailure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub world: WorldState,
    /// Seconds since the frame was produced.
    pub age: f64,
}

pub trait IoPort {
    /// Latest world state, if any has been received.
    fn snapshot(&mut self) -> Option<Snapshot>;

    /// Sends `request` and blocks until its reply. Returns `None` if `stop`
    /// was raised first.
    fn dispatch(&mut self, request: IoRequest, stop: &StopHandle) -> Option<IoReply>;

    /// Stops `robot_id` at once. Not a command for the timeout window.
    fn halt(&mut self, robot_id: u32);
}

/// Replies instantly and records every request, for programs that do not
/// need a simulator.
#[derive(Debug, Default)]
pub struct StubPort {
    pub requests: Vec<IoRequest>,
    pub halts: Vec<u32>,
    pub world: Option<WorldState>,
    /// Requests whose `api_name` matches get this failure instead of success.
    pub failures: Vec<(String, IoFailure)>,
}

impl StubPort {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_world(world: WorldState) -> Self {
        Self { world: Some(world), ..Self::default() }
    }
}

impl IoPort for StubPort {
    fn snapshot(&mut self) -> Option<Snapshot> {
        self.world.clone().map(|world| Snapshot { world, age: 0.0 })
    }

    fn dispatch(&mut self, request: IoRequest, stop: &StopHandle) -> Option<IoReply> {
        if stop.is_stopped() {
            return None;
        }
        let failure = self.failures.iter().find(|(name, _)| *name == request.api_name).map(|(_, f)| f.clone());
        let reply = IoReply { request_id: request.request_id, result: failure.map_or(Ok(Completion::Done), Err) };
        self.requests.push(request);
        Some(reply)
    }

    fn halt(&mut self, robot_id: u32) {
        self.halts.push(robot_id);
    }
}

enum Job {
    Snapshot(mpsc::Sender<Option<Snapshot>>),
    Dispatch(IoRequest, StopHandle, mpsc::Sender<Option<IoReply>>),
    Halt(u32),
}

/// Runs another port on its own I/O thread. The program thread posts a
/// request and sleeps on the reply queue, waking to poll for stop.
pub struct ThreadedPort {
    jobs: Option<mpsc::Sender<Job>>,
    worker: Option<thread::JoinHandle<()>>,
}

const POLL: Duration = Duration::from_millis(5);

impl ThreadedPort {
    pub fn spawn<P: IoPort + Send + 'static>(mut inner: P) -> Self {
        let (tx, rx) = mpsc::channel::<Job>();
        let worker = thread::Builder::new()
            .name("robojs-io".into())
            .spawn(move || {
                for job in rx {
                    match job {
                        Job::Snapshot(reply) => {
                            let _ = reply.send(inner.snapshot());
                        }
                        Job::Dispatch(req, stop, reply) => {
                            let _ = reply.send(inner.dispatch(req, &stop));
                        }
                        Job::Halt(id) => inner.halt(id),
                    }
                }
            })
            .expect("spawn I/O thread");
        Self { jobs: Some(tx), worker: Some(worker) }
    }

    fn post(&self, job: Job) -> bool {
        self.jobs.as_ref().is_some_and(|tx| tx.send(job).is_ok())
    }
}

impl IoPort for ThreadedPort {
    fn snapshot(&mut self) -> Option<Snapshot> {
        let (tx, rx) = mpsc::channel();
        if !self.post(Job::Snapshot(tx)) {
            return None;
        }
        rx.recv().ok().flatten()
    }

    fn dispatch(&mut self, request: IoRequest, stop: &StopHandle) -> Option<IoReply> {
        let (tx, rx) = mpsc::channel();
        let id = request.request_id;
        if !self.post(Job::Dispatch(request, stop.clone(), tx)) {
            return Some(IoReply { request_id: id, result: Err(IoFailure::Disconnected("I/O thread ended".into())) });
        }
        loop {
            match rx.recv_timeout(POLL) {
                Ok(reply) => return reply,
                Err(mpsc::RecvTimeoutError::Timeout) if stop.is_stopped() => return None,
                Err(mpsc::RecvTimeoutError::Timeout) => {}
                Err(mpsc::RecvTimeoutError::Disconnected) => {
                    return Some(IoReply {
                        request_id: id,
                        result: Err(IoFailure::Disconnected("I/O thread ended".into())),
                    })
                }
            }
        }
    }

    fn halt(&mut self, robot_id: u32) {
        self.post(Job::Halt(robot_id));
    }
}

impl Drop for ThreadedPort {
    fn drop(&mut self) {
        self.jobs.take();
        if let Some(w) = self.worker.take() {
            let _ = w.join();
        }
    }
}
