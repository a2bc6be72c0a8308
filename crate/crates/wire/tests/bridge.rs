mod common;

use std::time::Duration;

use common::{start_server, two_robots, udp};
use futures::{SinkExt, StreamExt};
use robojs_wire::bridge::{Bridge, BridgeConfig, DropOldest, RevisionStore, ServerMsg, FRAME_QUEUE};
use robojs_wire::Client;
use tokio_tungstenite::tungstenite::Message;

struct Running {
    _server: robojs_wire::GuardServer,
    addr: std::net::SocketAddr,
    dir: tempfile::TempDir,
}

async fn start() -> Running {
    let server = start_server(two_robots(), true);
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir_all(dir.path().join("www")).unwrap();
    std::fs::write(dir.path().join("www/index.html"), "<h1>ide</h1>").unwrap();
    let client = Client::start(udp(), server.command_addr, server.state_addr, "bridge");
    let bridge = Bridge::new(client, BridgeConfig { static_dir: dir.path().join("www"), revisions: dir.path().join("rev") });
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(robojs_wire::bridge::serve(listener, bridge));
    Running { _server: server, addr, dir }
}

async fn http_get(addr: std::net::SocketAddr, path: &str) -> String {
    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    let mut s = tokio::net::TcpStream::connect(addr).await.unwrap();
    s.write_all(format!("GET {path} HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").as_bytes()).await.unwrap();
    let mut out = String::new();
    s.read_to_string(&mut out).await.unwrap();
    out
}

#[tokio::test(flavor = "multi_thread")]
async fn serves_scenarios_and_static_files() {
    let r = start().await;
    let list = http_get(r.addr, "/scenarios").await;
    assert!(list.starts_with("HTTP/1.1 200"));
    let body = list.split("\r\n\r\n").nth(1).unwrap();
    let names: Vec<String> = serde_json::from_str(body).unwrap();
    assert_eq!(names, robojs_core::PRESETS.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    let page = http_get(r.addr, "/index.html").await;
    assert!(page.starts_with("HTTP/1.1 200") && page.ends_with("<h1>ide</h1>"));
    assert!(http_get(r.addr, "/missing.js").await.starts_with("HTTP/1.1 404"));
    drop(r.dir);
}

type Socket = tokio_tungstenite::WebSocketStream<tokio_tungstenite::MaybeTlsStream<tokio::net::TcpStream>>;

async fn recv(ws: &mut Socket) -> ServerMsg {
    loop {
        let msg = tokio::time::timeout(Duration::from_secs(10), ws.next()).await.unwrap().unwrap().unwrap();
        if let Message::Text(t) = msg {
            return serde_json::from_str(&t).unwrap();
        }
    }
}

async fn run(ws: &mut Socket, msg: &str) -> (Vec<String>, ServerMsg) {
    ws.send(Message::Text(msg.into())).await.unwrap();
    let mut lines = Vec::new();
    loop {
        match recv(ws).await {
            ServerMsg::Output { line } => lines.push(line),
            done @ ServerMsg::Finished { .. } => return (lines, done),
            _ => {}
        }
    }
}

#[tokio::test(flavor = "multi_thread")]
async fn socket_streams_state_and_runs_programs() {
    let r = start().await;
    let (mut ws, _) = tokio_tungstenite::connect_async(format!("ws://{}/ws", r.addr)).await.unwrap();
    assert!(matches!(recv(&mut ws).await, ServerMsg::State { .. }));

    let program = serde_json::json!({
        "type": "run",
        "source": "robot.setRobotId(1);\nrobot.turnTo(90);\nconsole.log('Done');\nfunction f(a) { if (a > 5) { return 1; } }\nconsole.log(f(1) + 1);\n",
    });
    let (lines, finished) = run(&mut ws, &program.to_string()).await;
    assert_eq!(lines, vec!["Done"], "{finished:?}");
    let ServerMsg::Finished { status, diagnostic, rendered } = finished else { unreachable!() };
    assert_eq!(status, "aborted");
    assert_eq!(diagnostic.unwrap().span.start_line, 5);
    assert!(rendered.unwrap().starts_with("program.js:5:"));

    let (lines, _) = run(&mut ws, r#"{"type":"repl","line":"let n = 4"}"#).await;
    assert!(lines.is_empty() || lines == vec!["undefined"], "{lines:?}");
    let (lines, _) = run(&mut ws, r#"{"type":"repl","line":"n * 2"}"#).await;
    assert_eq!(lines, vec!["8"]);

    let spin = serde_json::json!({"type": "run", "source": "let i = 0;\nwhile (true) { i = i + 1; }\n", "mode": "permissive"});
    ws.send(Message::Text(spin.to_string().into())).await.unwrap();
    tokio::time::sleep(Duration::from_millis(50)).await;
    let (_, finished) = run(&mut ws, r#"{"type":"stop"}"#).await;
    let ServerMsg::Finished { status, .. } = finished else { unreachable!() };
    assert!(status == "stopped" || status == "budget-exhausted", "{status}");
}

#[test]
fn stalled_page_loses_oldest_frames() {
    // One second of frames at 60 Hz while the page reads nothing.
    let q = DropOldest::new(FRAME_QUEUE);
    for i in 0..60 {
        q.push(i);
    }
    assert_eq!(q.dropped(), 50);
    assert_eq!(q.len(), FRAME_QUEUE);
    assert_eq!(q.try_pop(), Some(50));
}

#[test]
fn revisions_are_numbered_and_deduplicated() {
    let dir = tempfile::tempdir().unwrap();
    let store = RevisionStore::new(dir.path());
    assert_eq!(store.save_if_changed("ana", "maze.js", "a();").unwrap(), Some(1));
    assert_eq!(store.save_if_changed("ana", "maze.js", "a();").unwrap(), None);
    assert_eq!(store.save_if_changed("ana", "maze.js", "b();").unwrap(), Some(2));
    assert_eq!(store.save_if_changed("bo", "maze.js", "a();").unwrap(), Some(1));
    assert!(dir.path().join("ana/maze.js/001.js").is_file());
    assert_eq!(std::fs::read_to_string(dir.path().join("ana/maze.js/002.js")).unwrap(), "b();");
    assert_eq!(store.latest("ana", "maze.js").unwrap().as_deref(), Some("b();"));
    assert!(store.save_if_changed("../etc", "x", "").is_err());
}
