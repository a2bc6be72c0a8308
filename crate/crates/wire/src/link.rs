//! Datagram links: plain UDP, and a wrapper that drops datagrams on purpose.

use std::io;
use std::net::{SocketAddr, ToSocketAddrs, UdpSocket};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::envelope::{decode, Kind, MAX_DATAGRAM};

pub trait Link: Send + Sync {
    fn send_to(&self, bytes: &[u8], to: SocketAddr) -> io::Result<()>;
    /// Waits up to `timeout` for one datagram.
    fn recv_from(&self, timeout: Duration) -> Option<(Vec<u8>, SocketAddr)>;
    fn local_addr(&self) -> io::Result<SocketAddr>;
}

pub struct UdpLink {
    socket: UdpSocket,
}

impl UdpLink {
    pub fn bind(addr: impl ToSocketAddrs) -> io::Result<Self> {
        Ok(Self { socket: UdpSocket::bind(addr)? })
    }
}

impl Link for UdpLink {
    fn send_to(&self, bytes: &[u8], to: SocketAddr) -> io::Result<()> {
        self.socket.send_to(bytes, to).map(|_| ())
    }

    fn recv_from(&self, timeout: Duration) -> Option<(Vec<u8>, SocketAddr)> {
        self.socket.set_read_timeout(Some(timeout.max(Duration::from_micros(100)))).ok()?;
        let mut buf = [0u8; MAX_DATAGRAM + 1];
        // Errors include ICMP "port unreachable" echoes from an absent peer;
        // datagram semantics treat them as loss.
        let (n, from) = self.socket.recv_from(&mut buf).ok()?;
        Some((buf[..n].to_vec(), from))
    }

    fn local_addr(&self) -> io::Result<SocketAddr> {
        self.socket.local_addr()
    }
}

/// Drops a seeded random fraction of datagrams of the selected kinds, in
/// both directions.
pub struct LossyLink<L> {
    inner: L,
    loss: f64,
    kinds: Vec<Kind>,
    rng: Mutex<ChaCha8Rng>,
    dropped: AtomicU64,
}

impl<L: Link> LossyLink<L> {
    pub fn new(inner: L, loss: f64, kinds: &[Kind], seed: u64) -> Self {
        Self { inner, loss, kinds: kinds.to_vec(), rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)), dropped: AtomicU64::new(0) }
    }

    pub fn dropped(&self) -> u64 {
        self.dropped.load(Ordering::Relaxed)
    }

    fn lose(&self, bytes: &[u8]) -> bool {
        let subject = match decode(bytes) {
            Ok(env) => self.kinds.is_empty() || self.kinds.contains(&env.body.kind()),
            Err(_) => true,
        };
        if subject && self.rng.lock().unwrap().random_bool(self.loss) {
            self.dropped.fetch_add(1, Ordering::Relaxed);
            true
        } else {
            false
        }
    }
}

impl<L: Link> Link for LossyLink<L> {
    fn send_to(&self, bytes: &[u8], to: SocketAddr) -> io::Result<()> {
        if self.lose(bytes) {
            return Ok(());
        }
        self.inner.send_to(bytes, to)
    }

    fn recv_from(&self, timeout: Duration) -> Option<(Vec<u8>, SocketAddr)> {
        let got = self.inner.recv_from(timeout)?;
        if self.lose(&got.0) {
            None
        } else {
            Some(got)
        }
    }

    fn local_addr(&self) -> io::Result<SocketAddr> {
        self.inner.local_addr()
    }
}
