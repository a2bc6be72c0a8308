//! The datagram schema. Every message is one line of JSON:
//! `{"seq":…,"session":…,"kind":…,"payload":…}\n`.

use robojs_core::{Skill, WorldState};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest datagram any endpoint sends or accepts.
pub const MAX_DATAGRAM: usize = 1400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    Command,
    State,
    Ack,
    Reject,
    Scenario,
    Halt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandMsg {
    pub robot_id: u32,
    pub skill: Skill,
    pub params: Vec<f64>,
    pub request_id: u64,
}

/// Positive reply to a command, carrying the command as admitted (targets
/// may have been moved inside the field).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AckMsg {
    pub request_id: u64,
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectMsg {
    pub request_id: u64,
    pub code: String,
    pub message: String,
}

/// Asks the simulator to load a scenario preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioMsg {
    pub name: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaltMsg {
    pub robot_id: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Body {
    Command(CommandMsg),
    /// A frame from the simulator, or with no payload, a subscription
    /// request sent to the state port.
    State(Option<WorldState>),
    Ack(AckMsg),
    Reject(RejectMsg),
    Scenario(ScenarioMsg),
    Halt(HaltMsg),
}

impl Body {
    pub fn kind(&self) -> Kind {
        match self {
            Body::Command(_) => Kind::Command,
            Body::State(_) => Kind::State,
            Body::Ack(_) => Kind::Ack,
            Body::Reject(_) => Kind::Reject,
            Body::Scenario(_) => Kind::Scenario,
            Body::Halt(_) => Kind::Halt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub seq: u64,
    pub session: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Error, PartialEq)]
pub enum WireError {
    #[error("message is {0} bytes, over the {MAX_DATAGRAM}-byte datagram limit")]
    TooLarge(usize),
    #[error("malformed datagram: {0}")]
    Malformed(String),
}

pub fn encode(env: &Envelope) -> Result<Vec<u8>, WireError> {
    let mut bytes = serde_json::to_vec(env).map_err(|e| WireError::Malformed(e.to_string()))?;
    bytes.push(b'\n');
    if bytes.len() > MAX_DATAGRAM {
        return Err(WireError::TooLarge(bytes.len()));
    }
    Ok(bytes)
}

pub fn decode(bytes: &[u8]) -> Result<Envelope, WireError> {
    if bytes.len() > MAX_DATAGRAM {
        return Err(WireError::TooLarge(bytes.len()));
    }
    let line = bytes.strip_suffix(b"\n").ok_or_else(|| WireError::Malformed("missing newline".into()))?;
    let env: Envelope = serde_json::from_slice(line).map_err(|e| WireError::Malformed(e.to_string()))?;
    if let Body::Command(c) = &env.body {
        if c.params.len() != c.skill.param_count() {
            return Err(WireError::Malformed(format!("{} takes {} parameters", c.skill, c.skill.param_count())));
        }
    }
    Ok(env)
}

/// Stamps outgoing envelopes with a per-kind sequence number.
#[derive(Debug, Clone)]
pub struct Sender {
    pub session: String,
    next: [u64; 6],
}

impl Sender {
    pub fn new(session: impl Into<String>) -> Self {
        Self { session: session.into(), next: [1; 6] }
    }

    pub fn envelope(&mut self, body: Body) -> Envelope {
        let slot = &mut self.next[body.kind() as usize];
        let seq = *slot;
        *slot += 1;
        Envelope { seq, session: self.session.clone(), body }
    }
}

/// Counts datagrams that could not be decoded.
#[derive(Debug, Default)]
pub struct DecodeCounter(std::sync::atomic::AtomicU64);

impl DecodeCounter {
    pub fn decode(&self, bytes: &[u8]) -> Option<Envelope> {
        match decode(bytes) {
            Ok(e) => Some(e),
            Err(err) => {
                self.0.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                log::debug!("dropping datagram: {err}");
                None
            }
        }
    }

    pub fn count(&self) -> u64 {
        self.0.load(std::sync::atomic::Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use robojs_core::{BallState, RobotState};

    fn cmd() -> Envelope {
        Sender::new("s1").envelope(Body::Command(CommandMsg {
            robot_id: 0,
            skill: Skill::MoveTo,
            params: vec![1.0, 0.5, 90.0],
            request_id: 7,
        }))
    }

    #[test]
    fn command_round_trips_as_one_line() {
        let e = cmd();
        let bytes = encode(&e).unwrap();
        assert_eq!(bytes.iter().filter(|b| **b == b'\n').count(), 1);
        let text = std::str::from_utf8(&bytes).unwrap();
        assert!(text.starts_with("{\"seq\":1,\"session\":\"s1\",\"kind\":\"COMMAND\",\"payload\":{"), "{text}");
        assert_eq!(decode(&bytes).unwrap(), e);
    }

    #[test]
    fn truncated_datagram_is_counted() {
        let bytes = encode(&cmd()).unwrap();
        let counter = DecodeCounter::default();
        assert!(counter.decode(&bytes[..bytes.len() / 2]).is_none());
        assert!(counter.decode(b"garbage\n").is_none());
        assert_eq!(counter.count(), 2);
    }

    #[test]
    fn four_robot_state_fits_a_datagram() {
        let world = WorldState {
            timestamp: 1234.5678901234,
            frame_seq: 987654321,
            robots: (0..4).map(|i| {
                let mut r = RobotState::at(i, -1.234567891234 * i as f64, 0.987654321987, -179.99999999);
                r.vx = 0.123456789123;
                r.vy = -0.98765432198;
                r.omega = 179.123456789;
                r
            }).collect(),
            ball: BallState { x: 1.1111111111111, y: -0.2222222222222, vx: 1.99999999999, vy: -0.00000123456789 },
            items: vec![],
        };
        let env = Sender::new("simulator-0001").envelope(Body::State(Some(world)));
        let bytes = encode(&env).unwrap();
        assert!(bytes.len() <= MAX_DATAGRAM, "{}", bytes.len());
        assert_eq!(decode(&bytes).unwrap(), env);
    }

    #[test]
    fn sequence_numbers_are_per_kind() {
        let mut s = Sender::new("a");
        assert_eq!(s.envelope(Body::Halt(HaltMsg { robot_id: 1 })).seq, 1);
        assert_eq!(s.envelope(Body::State(None)).seq, 1);
        assert_eq!(s.envelope(Body::Halt(HaltMsg { robot_id: 1 })).seq, 2);
    }
}
