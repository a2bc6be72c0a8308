use std::fs;
use std::process::{Command, Output, Stdio};
use std::io::Write;

fn robojs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robojs")).args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn program(dir: &tempfile::TempDir, name: &str, src: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, src).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn run_blocks_until_motion_finishes_then_prints() {
    let dir = tempfile::tempdir().unwrap();
    let p = program(&dir, "b.js", "robot.setRobotId(0);\nrobot.moveToXY(0.5, 0.3);\nrobot.turnTo(180);\nconsole.log('Done');\n");
    let out = robojs(&["run", &p]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert_eq!(text(&out.stdout), "Done\n");
}

#[test]
fn strict_run_reports_the_location_and_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let p = program(&dir, "u.js", "let x;\nconsole.log(x + 1);\n");
    let out = robojs(&["run", "--stub", &p]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("u.js:2:13") && err.contains("UninitializedVariable"), "{err}");

    let out = robojs(&["run", "--mode", "permissive", "--stub", &p]);
    assert!(out.status.success());
    assert_eq!(text(&out.stdout), "NaN\n");
}

#[test]
fn check_flags_static_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = program(&dir, "bad.js", "robot.setRobotId(0);\nrobot.kick();\n");
    let out = robojs(&["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("bad.js:2:"), "{}", text(&out.stdout));

    let broken = program(&dir, "broken.js", "let = ;\n");
    assert_eq!(robojs(&["check", &broken]).status.code(), Some(1));

    let good = program(&dir, "good.js", "let a = 1;\nconsole.log(a);\n");
    let out = robojs(&["check", &good]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn compile_writes_instrumented_source() {
    let dir = tempfile::tempdir().unwrap();
    let p = program(&dir, "c.js", "robot.setRobotId(0);\nrobot.turnTo(90);\n");
    let out_path = dir.path().join("c.out.js");
    let out = robojs(&["compile", &p, "-o", out_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let compiled = fs::read_to_string(out_path).unwrap();
    assert!(compiled.contains("robot.turnTo"));
    assert_ne!(compiled, "robot.setRobotId(0);\nrobot.turnTo(90);\n");
}

#[test]
fn manifest_is_json() {
    let out = robojs(&["manifest"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["namespace"], "robot");
    assert!(v["entries"].as_array().is_some_and(|e| !e.is_empty()));
}

#[test]
fn repl_keeps_bindings_between_lines() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_robojs"))
        .args(["repl"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"let n = 4\nn * 2\nconsole.log(m)\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let s = text(&out.stdout);
    assert!(s.contains("8\n"), "{s}");
    assert!(s.contains("m"), "{s}");
}

#[test]
fn unknown_scenario_and_missing_file_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = program(&dir, "a.js", "console.log(1);\n");
    assert_eq!(robojs(&["run", "--scenario", "nowhere", &p]).status.code(), Some(2));
    assert_eq!(robojs(&["run", "/no/such/file.js"]).status.code(), Some(2));
}

#[test]
fn robosim_serves_a_remote_run() {
    // Private ports so parallel test runs do not collide.
    let base = 27000 + (std::process::id() % 1000) as u16 * 3;
    let ports = [("ROBOJS_COMMAND_PORT", base), ("ROBOJS_STATE_PORT", base + 1)];
    let mut sim = Command::new(env!("CARGO_BIN_EXE_robosim"))
        .args(["--scenario", "soccer-2v2", "--listen", "127.0.0.1"])
        .envs(ports.map(|(k, v)| (k, v.to_string())))
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = program(&dir, "r.js", "robot.setRobotId(0);\nrobot.turnTo(45);\nconsole.log('turned');\n");
    let out = Command::new(env!("CARGO_BIN_EXE_robojs"))
        .args(["run", "--guard", "127.0.0.1", &p])
        .envs(ports.map(|(k, v)| (k, v.to_string())))
        .output()
        .unwrap();
    let _ = sim.kill();
    let _ = sim.wait();
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert_eq!(text(&out.stdout), "turned\n");
}
