#![allow(dead_code)]

use std::sync::Arc;

use robojs_core::{BallState, RobotState, SafetyConfig, Stack, WorldState};
use robojs_wire::{GuardServer, Link, ServerConfig, UdpLink};

pub fn two_robots() -> Stack {
    let world = WorldState {
        timestamp: 0.0,
        frame_seq: 0,
        robots: vec![RobotState::at(0, 0.0, 0.0, 0.0), RobotState::at(1, -1.0, -0.6, 0.0)],
        ball: BallState::at_rest(1.0, 0.8),
        items: vec![],
    };
    Stack::new(world, SafetyConfig::default())
}

pub fn start_server(stack: Stack, paced: bool) -> GuardServer {
    let command: Arc<dyn Link> = Arc::new(UdpLink::bind("127.0.0.1:0").unwrap());
    let state: Arc<dyn Link> = Arc::new(UdpLink::bind("127.0.0.1:0").unwrap());
    GuardServer::start(ServerConfig { stack, safety: SafetyConfig::default(), paced }, command, state).unwrap()
}

pub fn udp() -> Arc<dyn Link> {
    Arc::new(UdpLink::bind("127.0.0.1:0").unwrap())
}
