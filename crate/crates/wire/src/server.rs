//! The guard-and-simulator process: admits commands through the safety
//! guard, steps the simulation and publishes a frame every period.

use std::collections::{HashMap, VecDeque};
use std::net::SocketAddr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use robojs_core::scenario::load_scenario;
use robojs_core::{Command, SafetyConfig, ScenarioConfig, Stack};

use crate::envelope::{encode, AckMsg, Body, CommandMsg, DecodeCounter, Envelope, RejectMsg, Sender};
use crate::link::Link;

/// A subscriber that has not renewed within this window stops getting frames.
pub const SUBSCRIPTION_TTL: Duration = Duration::from_secs(5);
const DEDUP_CAPACITY: usize = 4096;

#[derive(Debug, Default, Clone)]
pub struct ServerStats {
    /// How many times each (session, request_id) took effect.
    pub applied: HashMap<(String, u64), u32>,
    /// Retransmitted commands answered from the reply cache.
    pub duplicates: u64,
    pub rejected: u64,
    pub frames: u64,
    pub decode_errors: u64,
}

pub struct ServerConfig {
    pub stack: Stack,
    pub safety: SafetyConfig,
    /// Run at wall-clock speed rather than as fast as possible.
    pub paced: bool,
}

struct Core {
    stack: Stack,
    safety: SafetyConfig,
    sender: Sender,
    replies: HashMap<(String, u64), Envelope>,
    order: VecDeque<(String, u64)>,
    subscribers: HashMap<SocketAddr, Instant>,
    stats: Arc<Mutex<ServerStats>>,
    decode: DecodeCounter,
}

impl Core {
    fn reply(&self, link: &dyn Link, to: SocketAddr, env: &Envelope) {
        if let Ok(bytes) = encode(env) {
            let _ = link.send_to(&bytes, to);
        }
    }

    fn command(&mut self, session: String, cmd: CommandMsg) -> Envelope {
        let key = (session, cmd.request_id);
        if let Some(cached) = self.replies.get(&key) {
            self.stats.lock().unwrap().duplicates += 1;
            return cached.clone();
        }
        let outcome = Command::new(cmd.skill, cmd.params.clone())
            .map_err(|m| ("invalid-command".to_string(), m))
            .and_then(|c| self.stack.submit(cmd.robot_id, &c).map_err(|r| (r.code().to_string(), r.to_string())));
        let body = match outcome {
            Ok(admitted) => {
                *self.stats.lock().unwrap().applied.entry(key.clone()).or_default() += 1;
                Body::Ack(AckMsg { request_id: cmd.request_id, params: admitted.params })
            }
            Err((code, message)) => {
                self.stats.lock().unwrap().rejected += 1;
                Body::Reject(RejectMsg { request_id: cmd.request_id, code, message })
            }
        };
        let env = self.sender.envelope(body);
        self.replies.insert(key.clone(), env.clone());
        self.order.push_back(key);
        if self.order.len() > DEDUP_CAPACITY {
            let old = self.order.pop_front().unwrap();
            self.replies.remove(&old);
        }
        env
    }

    fn handle(&mut self, env: Envelope, from: SocketAddr, link: &dyn Link) {
        match env.body {
            Body::Command(cmd) => {
                let reply = self.command(env.session, cmd);
                self.reply(link, from, &reply);
            }
            Body::Halt(h) => self.stack.halt(h.robot_id),
            Body::Scenario(s) => match ScenarioConfig::preset(&s.name, s.seed).and_then(|c| load_scenario::<f64>(&c, &self.safety)) {
                Ok(scenario) => {
                    log::info!("loading scenario {}", s.name);
                    self.stack = Stack::from_scenario(&scenario, self.safety.clone());
                }
                Err(e) => log::warn!("scenario request refused: {e}"),
            },
            Body::State(None) => {
                self.subscribers.insert(from, Instant::now());
            }
            _ => {}
        }
    }
}

/// A running server. Dropping it stops the loop.
pub struct GuardServer {
    shutdown: Arc<AtomicBool>,
    handle: Option<thread::JoinHandle<()>>,
    stats: Arc<Mutex<ServerStats>>,
    pub command_addr: SocketAddr,
    pub state_addr: SocketAddr,
}

impl GuardServer {
    /// Serves commands on `command` and frames from `state`.
    pub fn start(cfg: ServerConfig, command: Arc<dyn Link>, state: Arc<dyn Link>) -> std::io::Result<Self> {
        let command_addr = command.local_addr()?;
        let state_addr = state.local_addr()?;
        let stats = Arc::new(Mutex::new(ServerStats::default()));
        let shutdown = Arc::new(AtomicBool::new(false));
        let mut core = Core {
            stack: cfg.stack,
            safety: cfg.safety,
            sender: Sender::new(format!("guard-{}", command_addr.port())),
            replies: HashMap::new(),
            order: VecDeque::new(),
            subscribers: HashMap::new(),
            stats: stats.clone(),
            decode: DecodeCounter::default(),
        };
        let paced = cfg.paced;
        let stop = shutdown.clone();
        let handle = thread::Builder::new()
            .name("robojs-guard".into())
            .spawn(move || {
                let period = Duration::from_secs_f64(core.stack.cfg.control_period);
                let mut next = Instant::now();
                let poll = Duration::from_micros(500);
                while !stop.load(Ordering::SeqCst) {
                    while let Some((bytes, from)) = command.recv_from(poll) {
                        if let Some(env) = core.decode.decode(&bytes) {
                            core.handle(env, from, &*command);
                        }
                    }
                    while let Some((bytes, from)) = state.recv_from(poll) {
                        if let Some(env) = core.decode.decode(&bytes) {
                            core.handle(env, from, &*state);
                        }
                    }
                    let frame = core.stack.step().clone();
                    let env = core.sender.envelope(Body::State(Some(frame)));
                    core.subscribers.retain(|_, seen| seen.elapsed() < SUBSCRIPTION_TTL);
                    match encode(&env) {
                        Ok(bytes) => {
                            for to in core.subscribers.keys() {
                                let _ = state.send_to(&bytes, *to);
                            }
                        }
                        Err(e) => log::warn!("frame not published: {e}"),
                    }
                    {
                        let mut s = core.stats.lock().unwrap();
                        s.frames += 1;
                        s.decode_errors = core.decode.count();
                    }
                    if paced {
                        next += period;
                        let now = Instant::now();
                        if next > now {
                            thread::sleep(next - now);
                        } else {
                            next = now;
                        }
                    }
                }
            })?;
        Ok(Self { shutdown, handle: Some(handle), stats, command_addr, state_addr })
    }

    pub fn stats(&self) -> ServerStats {
        self.stats.lock().unwrap().clone()
    }

    /// Blocks until the server stops (it only stops when dropped elsewhere
    /// or the process exits).
    pub fn join(mut self) {
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

impl Drop for GuardServer {
    fn drop(&mut self) {
        self.shutdown.store(true, Ordering::SeqCst);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}
