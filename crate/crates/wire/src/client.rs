//! The runtime's end of the protocol: acknowledged commands, fire-and-forget
//! halts, and a subscription to the state stream.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::sync::{Arc, Condvar, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use robojs_core::WorldState;
use thiserror::Error;

use crate::envelope::{encode, AckMsg, Body, CommandMsg, DecodeCounter, HaltMsg, RejectMsg, ScenarioMsg, Sender};
use crate::link::Link;

/// Resend interval for unacknowledged commands.
pub const RESEND_INTERVAL: Duration = Duration::from_millis(100);
/// Give up on a command after this long without a reply.
pub const REPLY_TIMEOUT: Duration = Duration::from_secs(2);
/// How often the state subscription is renewed.
pub const SUBSCRIBE_INTERVAL: Duration = Duration::from_secs(1);

#[derive(Debug, Clone, PartialEq)]
pub enum Reply {
    Ack(AckMsg),
    Reject(RejectMsg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no reply from the safety guard within {0:?}")]
pub struct TransportTimeout(pub Duration);

struct Inner {
    link: Arc<dyn Link>,
    guard: SocketAddr,
    state: SocketAddr,
    sender: Mutex<Sender>,
    pending: Mutex<HashMap<u64, mpsc::Sender<Reply>>>,
    latest: Mutex<Option<(WorldState, Instant)>>,
    frame: Condvar,
    next_id: AtomicU64,
    shutdown: AtomicBool,
    decode_errors: DecodeCounter,
    sent_commands: AtomicU64,
}

impl Inner {
    fn send(&self, to: SocketAddr, body: Body) {
        let env = self.sender.lock().unwrap().envelope(body);
        match encode(&env) {
            Ok(bytes) => {
                if let Err(e) = self.link.send_to(&bytes, to) {
                    log::debug!("send to {to} failed: {e}");
                }
            }
            Err(e) => log::warn!("not sending: {e}"),
        }
    }

    fn receive_loop(&self) {
        let mut last_subscribe: Option<Instant> = None;
        while !self.shutdown.load(Ordering::SeqCst) {
            if last_subscribe.is_none_or(|t| t.elapsed() >= SUBSCRIBE_INTERVAL) {
                self.send(self.state, Body::State(None));
                last_subscribe = Some(Instant::now());
            }
            let Some((bytes, _)) = self.link.recv_from(Duration::from_millis(20)) else { continue };
            let Some(env) = self.decode_errors.decode(&bytes) else { continue };
            let (id, reply) = match env.body {
                Body::Ack(a) => (a.request_id, Reply::Ack(a)),
                Body::Reject(r) => (r.request_id, Reply::Reject(r)),
                Body::State(Some(world)) => {
                    let mut latest = self.latest.lock().unwrap();
                    let newer = latest.as_ref().is_none_or(|(w, _)| world.frame_seq != w.frame_seq);
                    if newer {
                        *latest = Some((world, Instant::now()));
                        self.frame.notify_all();
                    }
                    continue;
                }
                _ => continue,
            };
            if let Some(tx) = self.pending.lock().unwrap().remove(&id) {
                let _ = tx.send(reply);
            }
        }
    }
}

/// A protocol client bound to one guard. Cheap to clone.
#[derive(Clone)]
pub struct Client {
    inner: Arc<Inner>,
    _receiver: Arc<ReceiverThread>,
}

struct ReceiverThread {
    inner: Arc<Inner>,
    handle: Mutex<Option<thread::JoinHandle<()>>>,
}

impl Drop for ReceiverThread {
    fn drop(&mut self) {
        self.inner.shutdown.store(true, Ordering::SeqCst);
        if let Some(h) = self.handle.lock().unwrap().take() {
            let _ = h.join();
        }
    }
}

impl Client {
    /// Starts a client talking to the guard's command port `guard` and
    /// subscribing to frames from its state port `state`.
    pub fn start(link: Arc<dyn Link>, guard: SocketAddr, state: SocketAddr, session: impl Into<String>) -> Self {
        let inner = Arc::new(Inner {
            link,
            guard,
            state,
            sender: Mutex::new(Sender::new(session)),
            pending: Mutex::default(),
            latest: Mutex::default(),
            frame: Condvar::new(),
            next_id: AtomicU64::new(1),
            shutdown: AtomicBool::new(false),
            decode_errors: DecodeCounter::default(),
            sent_commands: AtomicU64::new(0),
        });
        let worker = inner.clone();
        let handle = thread::Builder::new()
            .name("robojs-client".into())
            .spawn(move || worker.receive_loop())
            .expect("spawn client thread");
        let receiver = Arc::new(ReceiverThread { inner: inner.clone(), handle: Mutex::new(Some(handle)) });
        Self { inner, _receiver: receiver }
    }

    pub fn next_request_id(&self) -> u64 {
        self.inner.next_id.fetch_add(1, Ordering::SeqCst)
    }

    /// Total COMMAND datagrams sent, retransmissions included.
    pub fn commands_sent(&self) -> u64 {
        self.inner.sent_commands.load(Ordering::Relaxed)
    }

    pub fn decode_errors(&self) -> u64 {
        self.inner.decode_errors.count()
    }

    /// Latest frame and when it arrived.
    pub fn latest(&self) -> Option<(WorldState, Instant)> {
        self.inner.latest.lock().unwrap().clone()
    }

    /// Waits up to `timeout` for a frame newer than `after`.
    pub fn wait_frame(&self, after: Option<u64>, timeout: Duration) -> Option<(WorldState, Instant)> {
        let guard = self.inner.latest.lock().unwrap();
        let (guard, _) = self
            .inner
            .frame
            .wait_timeout_while(guard, timeout, |l| match (l, after) {
                (None, _) => true,
                (Some((w, _)), Some(seq)) => w.frame_seq == seq,
                (Some(_), None) => false,
            })
            .unwrap();
        guard.clone().filter(|(w, _)| Some(w.frame_seq) != after)
    }

    pub fn halt(&self, robot_id: u32) {
        // Unacknowledged; sent twice to ride out a single loss.
        for _ in 0..2 {
            self.inner.send(self.inner.guard, Body::Halt(HaltMsg { robot_id }));
        }
    }

    pub fn load_scenario(&self, name: &str, seed: u64) {
        for _ in 0..2 {
            self.inner.send(self.inner.guard, Body::Scenario(ScenarioMsg { name: name.into(), seed }));
        }
    }

    /// Sends `cmd` until the guard answers or the timeout passes. Stops
    /// early, returning `None`, if `cancel` says so.
    pub fn reliable_command_with(
        &self,
        cmd: CommandMsg,
        interval: Duration,
        timeout: Duration,
        cancel: &dyn Fn() -> bool,
    ) -> Option<Result<Reply, TransportTimeout>> {
        let (tx, rx) = mpsc::channel();
        let id = cmd.request_id;
        self.inner.pending.lock().unwrap().insert(id, tx);
        let started = Instant::now();
        let result = loop {
            if cancel() {
                break None;
            }
            self.inner.sent_commands.fetch_add(1, Ordering::Relaxed);
            self.inner.send(self.inner.guard, Body::Command(cmd.clone()));
            let left = timeout.saturating_sub(started.elapsed());
            if left.is_zero() {
                break Some(Err(TransportTimeout(timeout)));
            }
            match rx.recv_timeout(interval.min(left)) {
                Ok(reply) => break Some(Ok(reply)),
                Err(_) if started.elapsed() >= timeout => break Some(Err(TransportTimeout(timeout))),
                Err(_) => {}
            }
        };
        self.inner.pending.lock().unwrap().remove(&id);
        result
    }
}

/// Sends `cmd` every 100 ms until the matching ACK or REJECT arrives, or
/// reports a transport timeout after 2 s.
pub fn reliable_command(client: &Client, cmd: CommandMsg) -> Result<Reply, TransportTimeout> {
    client.reliable_command_with(cmd, RESEND_INTERVAL, REPLY_TIMEOUT, &|| false).expect("never cancelled")
}
