//! The datagram protocol between the runtime and the safety guard, the
//! guard server itself, and the browser bridge.

pub mod bridge;
pub mod client;
pub mod envelope;
pub mod link;
pub mod netport;
pub mod server;

pub use client::{reliable_command, Client, Reply, TransportTimeout};
pub use envelope::{decode, encode, Body, Envelope, Kind, WireError, MAX_DATAGRAM};
pub use link::{Link, LossyLink, UdpLink};
pub use netport::NetPort;
pub use server::{GuardServer, ServerConfig, ServerStats};

/// Well-known ports, each overridable through the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ports {
    pub command: u16,
    pub state: u16,
    pub bridge: u16,
}

impl Default for Ports {
    fn default() -> Self {
        Self { command: 17001, state: 17002, bridge: 17080 }
    }
}

impl Ports {
    /// Defaults, overridden by `ROBOJS_COMMAND_PORT`, `ROBOJS_STATE_PORT`
    /// and `ROBOJS_BRIDGE_PORT` when set to a valid port number.
    pub fn from_env() -> Self {
        let get = |name: &str, fallback: u16| std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(fallback);
        let d = Self::default();
        Self {
            command: get("ROBOJS_COMMAND_PORT", d.command),
            state: get("ROBOJS_STATE_PORT", d.state),
            bridge: get("ROBOJS_BRIDGE_PORT", d.bridge),
        }
    }
}
