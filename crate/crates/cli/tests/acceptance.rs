//! One line per acceptance criterion. Each check runs end to end against the
//! public crates and the bundled fixtures; the test fails if any line does.

use std::collections::BTreeSet;
use std::fs;
use std::net::UdpSocket;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use robojs_core::geom::Vec2;
use robojs_core::num::angle_diff;
use robojs_core::skill::{HEADING_TOLERANCE, POSITION_TOLERANCE};
use robojs_core::soak::{random_world, Soak};
use robojs_core::{BallState, Command, RobotState, SafetyConfig, Skill, Stack, WorldState};
use robojs_corpus::{analyze_revision, estimate_errors, report, scan, Format, RevisionCorpus};
use robojs_lang::api::{api_catalog, LocalSimPort};
use robojs_lang::diagnostic::{Category, CheckCategory};
use robojs_lang::exec::{prepare, run_source, ExecStatus, Interpreter, Mode, Pipeline, StopHandle, StubPort};
use robojs_lang::gen::{generate, run_both_ways};
use robojs_wire::client::REPLY_TIMEOUT;
use robojs_wire::envelope::CommandMsg;
use robojs_wire::{reliable_command, Client, GuardServer, Kind, Link, LossyLink, Reply, ServerConfig, UdpLink};

type Check = Result<String, String>;

fn crate_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("..").join(name)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn joined(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn lone_robot(id: u32, x: f64, y: f64) -> WorldState {
    WorldState { timestamp: 0.0, frame_seq: 0, robots: vec![RobotState::at(id, x, y, 0.0)], ball: BallState::at_rest(-1.0, -1.0), items: vec![] }
}

fn pitfalls() -> Check {
    let dir = crate_dir("lang/tests/fixtures/pitfalls");
    let rows = [
        ("loose_comparison", CheckCategory::LooseComparison),
        ("uninitialized_variable", CheckCategory::UninitializedVariable),
        ("conditional_assignment", CheckCategory::ConditionalAssignment),
        ("op_type_mismatch", CheckCategory::OpTypeMismatch),
        ("arity_mismatch", CheckCategory::ArityMismatch),
    ];
    let mut reproduced = 0;
    for (name, category) in rows {
        let src = fs::read_to_string(dir.join(format!("{name}.js"))).map_err(|e| e.to_string())?;
        let expected = fs::read_to_string(dir.join(format!("{name}.out"))).map_err(|e| e.to_string())?;
        let plain = run_source(&src, Pipeline::Permissive, &mut StubPort::new(), StopHandle::new());
        ensure(plain.status == ExecStatus::Completed && joined(&plain.printed_output) == expected, || {
            format!("{name}: permissive run differs")
        })?;
        for pipeline in [Pipeline::Strict, Pipeline::Instrumented] {
            let out = run_source(&src, pipeline, &mut StubPort::new(), StopHandle::new());
            let got = out.diagnostic().map(|d| d.category);
            ensure(got == Some(Category::Check(category)), || format!("{name} under {pipeline:?}: {got:?}"))?;
        }
        reproduced += 1;
    }
    Ok(format!("{reproduced}/5 rows"))
}

fn equivalence() -> Check {
    let started = Instant::now();
    let (mut compared, mut aborted, mut seed) = (0, 0, 0u64);
    while compared < 1000 {
        seed += 1;
        let src = generate(seed);
        let Some((strict, plain)) = run_both_ways(&src) else { continue };
        compared += 1;
        ensure(strict.printed_output == plain.printed_output, || format!("seed {seed}: output differs"))?;
        match (&strict.status, &plain.status) {
            (ExecStatus::Aborted(a), ExecStatus::Aborted(b)) => {
                ensure((a.category, a.span) == (b.category, b.span), || format!("seed {seed}: {a} vs {b}"))?;
                aborted += 1;
            }
            (a, b) => ensure(a == b, || format!("seed {seed}: {a:?} vs {b:?}"))?,
        }
    }
    let took = started.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("{compared} programs, {aborted} aborted, 0 mismatches in {:.1}s", took.as_secs_f64()))
}

fn node_oracle() -> Check {
    let dir = crate_dir("lang/tests/fixtures/oracle");
    let mut programs: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "js"))
        .collect();
    programs.sort();
    ensure(programs.len() >= 50, || format!("only {} programs", programs.len()))?;
    for p in &programs {
        let src = fs::read_to_string(p).map_err(|e| e.to_string())?;
        let expected = fs::read_to_string(p.with_extension("out")).map_err(|e| e.to_string())?;
        let out = run_source(&src, Pipeline::Permissive, &mut StubPort::new(), StopHandle::new());
        ensure(out.status == ExecStatus::Completed && joined(&out.printed_output) == expected, || {
            format!("{} differs from node", p.display())
        })?;
    }
    Ok(format!("{} programs byte-identical", programs.len()))
}

fn safety_fuzz() -> Check {
    let started = Instant::now();
    let cfg = SafetyConfig::default();
    let robots = 4;
    let mut stack = Stack::new(random_world(robots, 2024, &cfg), cfg.clone());
    let mut driver = Soak::new(2024, robots as usize);
    let mut last_command = vec![0.0; robots as usize];
    let speed_cap = 1.0 + 1e-9;
    let min_gap = 2.0 * 0.09 + 0.05 - 1e-9;
    let (inset_x, inset_y) = (1.8 - 0.09 + 1e-9, 1.2 - 0.09 + 1e-9);
    let quiet = 5.0 + cfg.control_period;
    let (mut frames, mut violations) = (0u64, [0u64; 4]);
    while stack.now() < 10_000.0 {
        for issued in driver.drive(&mut stack) {
            if issued.result.is_ok() {
                last_command[issued.robot_id as usize] = stack.now();
            }
        }
        let w = stack.step();
        frames += 1;
        for (i, r) in w.robots.iter().enumerate() {
            violations[0] += u64::from(r.vx.hypot(r.vy) > speed_cap);
            violations[2] += u64::from(r.x.abs() > inset_x || r.y.abs() > inset_y);
            if w.timestamp - last_command[i] > quiet {
                violations[3] += u64::from(r.vx != 0.0 || r.vy != 0.0);
            }
            for o in &w.robots[i + 1..] {
                violations[1] += u64::from((r.x - o.x).hypot(r.y - o.y) < min_gap);
            }
        }
    }
    let took = started.elapsed();
    ensure(violations == [0; 4], || format!("violations speed/separation/containment/timeout = {violations:?}"))?;
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("{frames} frames, 4 robots, 0 violations in {:.1}s", took.as_secs_f64()))
}

fn boundary() -> Check {
    let mut stack = Stack::new(lone_robot(0, 0.0, 0.0), SafetyConfig::default());
    let cmd = stack.submit(0, &Command::move_to(5.0, 5.0, 0.0)).map_err(|e| e.to_string())?;
    while !stack.is_complete(0, &cmd) && stack.now() < 20.0 {
        stack.step();
    }
    let r = stack.world().robot(0).unwrap().clone();
    let miss = (r.x - 1.71).hypot(r.y - 1.11);
    ensure(miss <= 0.02, || format!("ended at ({:.3}, {:.3})", r.x, r.y))?;
    Ok(format!("ended at ({:.3}, {:.3}), {miss:.4} m from (1.71, 1.11)", r.x, r.y))
}

fn kick() -> Check {
    let mut far = lone_robot(0, 0.0, 0.0);
    far.ball = BallState::at_rest(1.5, 0.0);
    let err = Stack::new(far, SafetyConfig::default()).submit(0, &Command::kick(0.5));
    ensure(err.as_ref().is_err_and(|e| e.code() == "kick-not-applicable"), || format!("ball at 1.5 m: {err:?}"))?;
    for power in [0.25, 0.5, 1.0] {
        let mut near = lone_robot(0, 0.0, 0.0);
        let at = Vec2::from_heading(20.0) * 0.15;
        near.ball = BallState::at_rest(at.x, at.y);
        let mut stack = Stack::new(near, SafetyConfig::default());
        stack.submit(0, &Command::kick(power)).map_err(|e| e.to_string())?;
        let b = stack.step().ball.clone();
        let speed = b.vx.hypot(b.vy);
        ensure((speed - power * 2.0).abs() < 1e-9, || format!("power {power}: ball speed {speed}"))?;
    }
    Ok("far ball rejected; ball speed = 2.0 x power after one step".into())
}

fn protocol() -> Check {
    let world = WorldState {
        timestamp: 0.0,
        frame_seq: 0,
        robots: vec![RobotState::at(0, 0.0, 0.0, 0.0), RobotState::at(1, -1.0, -0.6, 0.0)],
        ball: BallState::at_rest(1.0, 0.8),
        items: vec![],
    };
    let bind = || -> Arc<dyn Link> { Arc::new(UdpLink::bind("127.0.0.1:0").unwrap()) };
    let server = GuardServer::start(
        ServerConfig { stack: Stack::new(world, SafetyConfig::default()), safety: SafetyConfig::default(), paced: false },
        bind(),
        bind(),
    )
    .map_err(|e| e.to_string())?;
    let lossy: Arc<dyn Link> =
        Arc::new(LossyLink::new(UdpLink::bind("127.0.0.1:0").unwrap(), 0.2, &[Kind::Command, Kind::Ack], 11));
    let client = Client::start(lossy, server.command_addr, server.state_addr, "acceptance");
    let mut ids = Vec::new();
    for i in 0..50 {
        let request_id = client.next_request_id();
        ids.push(request_id);
        let cmd = CommandMsg { robot_id: 0, skill: Skill::TurnTo, params: vec![f64::from(i) * 7.0], request_id };
        match reliable_command(&client, cmd) {
            Ok(Reply::Ack(_)) => {}
            other => return Err(format!("command {i}: {other:?}")),
        }
    }
    let stats = server.stats();
    let once = ids.iter().all(|id| stats.applied.get(&("acceptance".to_string(), *id)) == Some(&1));
    ensure(once && stats.applied.len() == 50, || format!("applied counts {:?}", stats.applied))?;

    let dead = UdpSocket::bind("127.0.0.1:0").map_err(|e| e.to_string())?;
    let addr = dead.local_addr().map_err(|e| e.to_string())?;
    let offline = Client::start(bind(), addr, addr, "offline");
    let started = Instant::now();
    let cmd = CommandMsg { robot_id: 0, skill: Skill::Halt, params: vec![], request_id: offline.next_request_id() };
    let result = reliable_command(&offline, cmd);
    let waited = started.elapsed().as_secs_f64();
    ensure(result.is_err() && (waited - 2.0).abs() <= 0.2 && REPLY_TIMEOUT == Duration::from_secs(2), || {
        format!("offline guard: {result:?} after {waited:.3}s")
    })?;
    Ok(format!(
        "50/50 applied once ({} sends, {} duplicates); offline timeout after {waited:.2}s",
        client.commands_sent(),
        stats.duplicates
    ))
}

fn corpus() -> Check {
    let root = crate_dir("corpus/fixtures");
    let corpus = RevisionCorpus::load(&root.join("corpus")).map_err(|e| e.to_string())?;
    let truth: toml::Table = toml::from_str(&fs::read_to_string(root.join("ground_truth.toml")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let labels = truth["revision"].as_array().ok_or("no revisions")?;
    ensure(labels.len() == corpus.revisions.len(), || "label count differs from corpus".into())?;
    let manifest = api_catalog();
    let (mut syntax, mut robojs) = (0u64, 0u64);
    for label in labels {
        let path = label["path"].as_str().unwrap();
        let rev = corpus.revisions.iter().find(|r| r.path.ends_with(path)).ok_or(format!("missing {path}"))?;
        let found = analyze_revision(&rev.source, &manifest);
        let want_syntax = label["syntax_error"].as_bool().unwrap();
        let want: BTreeSet<&str> = label["categories"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        let got: BTreeSet<&str> = found.categories.iter().map(|c| c.name()).collect();
        ensure(found.has_syntax_error() == want_syntax && got == want, || format!("{path}: got {got:?}"))?;
        syntax += u64::from(want_syntax);
        robojs += u64::from(!want.is_empty());
    }
    let est = estimate_errors(&corpus, &manifest);
    ensure((est.total.syntax, est.total.robojs) == (syntax, robojs), || "totals differ".into())?;
    let stats = scan(&corpus);
    let table = report(&stats, &est, Format::Table);
    let header: Vec<&str> = table.lines().next().unwrap_or_default().split_whitespace().collect();
    let columns = ["Account", "L", "R", "F", "L/R", "R/F", "Syntax", "RoboJS", "Revisions"];
    ensure(header == columns, || format!("report header {header:?}"))?;
    let shares = [format!("({:.1}%)", 100.0 * syntax as f64 / labels.len() as f64), format!("({:.1}%)", 100.0 * robojs as f64 / labels.len() as f64)];
    ensure(shares.iter().all(|p| table.contains(p.as_str())), || format!("report lacks {shares:?}"))?;
    let csv = report(&stats, &est, Format::Csv);
    ensure(csv.starts_with("account,l,r,f,l/r,r/f,syntax,robojs,revisions"), || "csv header".into())?;
    Ok(format!("{} revisions match labels; {syntax} syntax, {robojs} robojs", labels.len()))
}

fn blocking() -> Check {
    #[derive(Clone, Copy)]
    struct Frame {
        t: f64,
        x: f64,
        y: f64,
        theta: f64,
    }
    let frames: Arc<Mutex<Vec<Frame>>> = Arc::default();
    let log = frames.clone();
    let mut port = LocalSimPort::new(Stack::new(lone_robot(1, 0.0, 0.0), SafetyConfig::default())).on_frame(move |w| {
        let r = w.robot(1).unwrap();
        log.lock().unwrap().push(Frame { t: w.timestamp, x: r.x, y: r.y, theta: r.theta });
    });
    let src = "robot.setRobotId(1);\nrobot.moveToXY(1.0, 1.0);\nrobot.turnTo(180);\nconsole.log('Done');\n";
    let ast = prepare(src, 0, Pipeline::Strict).map_err(|d| d.to_string())?;
    let printed: Arc<Mutex<Vec<(String, usize)>>> = Arc::default();
    let (sink_frames, sink) = (frames.clone(), printed.clone());
    let mut interp = Interpreter::new(Mode::Strict, &mut port)
        .on_output(move |line| sink.lock().unwrap().push((line.to_string(), sink_frames.lock().unwrap().len())));
    let out = interp.run(&ast);
    drop(interp);
    ensure(out.status == ExecStatus::Completed, || format!("{:?}", out.status))?;
    let frames = frames.lock().unwrap();
    let printed = printed.lock().unwrap();
    ensure(printed.len() == 1 && printed[0].0 == "Done" && printed[0].1 > 0, || format!("{printed:?}"))?;
    let at_print = frames[printed[0].1 - 1];
    let arrived = |f: &Frame| (f.x - 1.0).hypot(f.y - 1.0) <= POSITION_TOLERANCE;
    let turned = |f: &Frame| angle_diff(f.theta, 180.0).abs() <= HEADING_TOLERANCE;
    let moved = frames.iter().position(arrived).ok_or("never reached (1, 1)")?;
    let done = frames.iter().position(|f| arrived(f) && turned(f)).ok_or("never turned")?;
    ensure(moved < done && frames[done].t <= at_print.t && arrived(&at_print) && turned(&at_print), || {
        format!("printed at t={:.3}, arrived {:.3}, turned {:.3}", at_print.t, frames[moved].t, frames[done].t)
    })?;
    Ok(format!("arrived t={:.3}s, turned t={:.3}s, Done at t={:.3}s", frames[moved].t, frames[done].t, at_print.t))
}

#[test]
fn acceptance() {
    let checks: [(&str, fn() -> Check); 9] = [
        ("pitfall table", pitfalls),
        ("checked vs instrumented equivalence", equivalence),
        ("permissive mode vs node", node_oracle),
        ("safety fuzz", safety_fuzz),
        ("boundary truncation", boundary),
        ("kick applicability", kick),
        ("protocol loss and timeout", protocol),
        ("corpus analyzer", corpus),
        ("blocking calls", blocking),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} criteria failed");
}
