use std::time::{Duration, Instant};

use proptest::prelude::*;
use robojs_core::geom::Vec2 as V;
use robojs_core::safety::{admit, clamp_velocity};
use robojs_core::soak::{random_world, Soak};
use robojs_core::{BallState, Command, RobotState, SafetyConfig, Stack, StackF32, WorldState};

fn lone_robot(x: f64, y: f64, theta: f64) -> WorldState {
    WorldState { timestamp: 0.0, frame_seq: 0, robots: vec![RobotState::at(0, x, y, theta)], ball: BallState::at_rest(-1.0, -1.0), items: vec![] }
}

struct Violations {
    speed: usize,
    separation: usize,
    containment: usize,
    timeout: usize,
    frames: usize,
}

/// Drives `robots` robots with random traffic for `seconds` of simulated
/// time and counts frames that break any guarantee.
fn soak(seconds: f64, robots: u32, seed: u64) -> Violations {
    let cfg = SafetyConfig::default();
    let mut stack = Stack::new(random_world(robots, seed, &cfg), cfg.clone());
    let mut driver = Soak::new(seed, robots as usize);
    let mut last_command = vec![0.0; robots as usize];
    let mut v = Violations { speed: 0, separation: 0, containment: 0, timeout: 0, frames: 0 };
    // The guarantees, written out from the configured geometry.
    let speed_cap = 1.0 + 1e-9;
    let min_gap = 2.0 * 0.09 + 0.05 - 1e-9;
    let (inset_x, inset_y) = (1.8 - 0.09 + 1e-9, 1.2 - 0.09 + 1e-9);
    let quiet = 5.0 + cfg.control_period;
    while stack.now() < seconds {
        for issued in driver.drive(&mut stack) {
            if issued.result.is_ok() {
                last_command[issued.robot_id as usize] = stack.now();
            }
        }
        let w = stack.step();
        v.frames += 1;
        for (i, r) in w.robots.iter().enumerate() {
            let speed = r.vx.hypot(r.vy);
            v.speed += usize::from(speed > speed_cap);
            v.containment += usize::from(r.x.abs() > inset_x || r.y.abs() > inset_y);
            if w.timestamp - last_command[i] > quiet {
                v.timeout += usize::from(r.vx != 0.0 || r.vy != 0.0);
            }
            for o in &w.robots[i + 1..] {
                v.separation += usize::from((r.x - o.x).hypot(r.y - o.y) < min_gap);
            }
        }
    }
    v
}

#[test]
fn ten_thousand_seconds_of_random_traffic() {
    let started = Instant::now();
    let v = soak(10_000.0, 4, 2024);
    let took = started.elapsed();
    assert!(v.frames >= 600_000);
    assert_eq!((v.speed, v.separation, v.containment, v.timeout), (0, 0, 0, 0));
    assert!(took < Duration::from_secs(120), "took {took:?}");
}

#[test]
fn other_seeds_hold_too() {
    for seed in 1..=4 {
        let v = soak(300.0, 4, seed);
        assert_eq!((v.speed, v.separation, v.containment, v.timeout), (0, 0, 0, 0), "seed {seed}");
    }
}

#[test]
fn far_corner_target_stops_at_the_inset_corner() {
    let cfg = SafetyConfig::default();
    let mut stack = Stack::new(lone_robot(0.0, 0.0, 0.0), cfg);
    let cmd = stack.submit(0, &Command::move_to(5.0, 5.0, 0.0)).unwrap();
    assert_eq!((cmd.params[0], cmd.params[1]), (1.8 - 0.09, 1.2 - 0.09));
    while !stack.is_complete(0, &cmd) && stack.now() < 20.0 {
        stack.step();
    }
    let r = stack.world().robot(0).unwrap();
    assert!((r.x - 1.71).hypot(r.y - 1.11) <= 0.02, "ended at ({}, {})", r.x, r.y);
}

#[test]
fn kick_needs_the_ball_at_the_front() {
    let mut world = lone_robot(0.0, 0.0, 0.0);
    world.ball = BallState::at_rest(1.5, 0.0);
    let mut stack = Stack::new(world.clone(), SafetyConfig::default());
    let err = stack.submit(0, &Command::kick(0.5)).unwrap_err();
    assert_eq!(err.code(), "kick-not-applicable");

    for power in [0.25, 0.5, 1.0] {
        let mut w = world.clone();
        // 0.15 m away, 20 degrees off the heading: inside the cone.
        let at = V::from_heading(20.0) * 0.15;
        w.ball = BallState::at_rest(at.x, at.y);
        let mut stack = Stack::new(w, SafetyConfig::default());
        stack.submit(0, &Command::kick(power)).unwrap();
        let ball = stack.step().ball.clone();
        assert!((ball.vx.hypot(ball.vy) - power * 2.0).abs() < 1e-12, "power {power}");
    }
}

#[test]
fn silent_robot_is_stopped_after_the_timeout() {
    // At half speed a target 3 m away takes longer than the timeout.
    let cfg = SafetyConfig { max_speed: 0.5, ..SafetyConfig::default() };
    let mut stack = Stack::new(lone_robot(-1.5, 0.0, 0.0), cfg);
    stack.submit(0, &Command::move_to(1.5, 0.0, 0.0)).unwrap();
    let mut stopped_at = None;
    while stack.now() < 7.0 {
        let w = stack.step();
        let r = &w.robots[0];
        if stopped_at.is_none() && w.timestamp > 1.0 && r.vx == 0.0 && r.vy == 0.0 {
            stopped_at = Some(w.timestamp);
        }
    }
    let t = stopped_at.expect("robot stopped");
    assert!(t > 5.0 && t <= 5.0 + 2.0 / 60.0 + 1e-9, "stopped at {t}");
}

#[test]
fn single_precision_stack_runs_the_same_guard() {
    let w32 = robojs_core::world::WorldState::<f32> {
        timestamp: 0.0,
        frame_seq: 0,
        robots: vec![robojs_core::world::RobotState::at(0, 0.0, 0.0, 0.0)],
        ball: robojs_core::world::BallState::at_rest(-1.0, -1.0),
        items: vec![],
    };
    let mut stack = StackF32::new(w32, robojs_core::safety::SafetyConfig::<f32>::default());
    let cmd = stack.submit(0, &robojs_core::skill::Command::<f32>::move_to(5.0, 5.0, 0.0)).unwrap();
    while !stack.is_complete(0, &cmd) && stack.now() < 20.0 {
        let w = stack.step();
        assert!(w.robots[0].vx.hypot(w.robots[0].vy) <= 1.0 + 1e-6);
    }
    let r = &stack.world().robots[0];
    assert!((r.x - 1.71).abs() < 0.02 && (r.y - 1.11).abs() < 0.02);
}

proptest! {
    #[test]
    fn clamped_velocity_never_exceeds_the_limit(vx in -50.0..50.0f64, vy in -50.0..50.0f64, w in -1e4..1e4f64) {
        let cfg = SafetyConfig::default();
        let (v, omega) = clamp_velocity(V::new(vx, vy), w, &cfg);
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        prop_assert!(omega.abs() <= 180.0);
        // Direction is kept.
        prop_assert!((v.x * vy - v.y * vx).abs() < 1e-9 * (1.0 + vx.abs() + vy.abs()));
    }

    #[test]
    fn admitted_targets_lie_in_the_inset_field(x in -100.0..100.0f64, y in -100.0..100.0f64, t in -1e3..1e3f64) {
        let cfg = SafetyConfig::default();
        let a = admit(0, &Command::move_to(x, y, t), &lone_robot(0.0, 0.0, 0.0), &cfg).unwrap();
        prop_assert!(a.params[0].abs() <= 1.71 + 1e-12 && a.params[1].abs() <= 1.11 + 1e-12);
        prop_assert!(a.params[2] > -180.0 - 1e-9 && a.params[2] <= 180.0 + 1e-9);
        if x.abs() <= 1.71 && y.abs() <= 1.11 {
            prop_assert_eq!((a.params[0], a.params[1]), (x, y));
        }
    }

    #[test]
    fn kick_power_is_clamped(p in -10.0..10.0f64) {
        let mut w = lone_robot(0.0, 0.0, 0.0);
        w.ball = BallState::at_rest(0.15, 0.0);
        let a = admit(0, &Command::kick(p), &w, &SafetyConfig::default()).unwrap();
        prop_assert_eq!(a.params[0], p.clamp(0.0, 1.0));
    }
}
