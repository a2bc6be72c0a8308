//! HTTP and WebSocket front end for the browser IDE. Programs submitted
//! over the socket run here, against the guard, and the state stream is
//! relayed back to the page.

mod queue;
mod revisions;

pub use queue::DropOldest;
pub use revisions::RevisionStore;

use std::path::PathBuf;
use std::sync::{mpsc, Arc, Mutex, Weak};
use std::thread;
use std::time::Duration;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use robojs_core::{WorldState, PRESETS};
use robojs_lang::diagnostic::Diagnostic;
use robojs_lang::exec::{prepare, ExecStatus, Interpreter, Mode, Pipeline, StopHandle};
use serde::{Deserialize, Serialize};
use tokio::sync::mpsc as tmpsc;
use tower_http::services::ServeDir;

use crate::client::Client;
use crate::netport::NetPort;

/// Frames waiting for one browser; older ones are dropped first.
pub const FRAME_QUEUE: usize = 10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    #[default]
    Strict,
    Permissive,
    Instrumented,
}

impl From<RunMode> for Pipeline {
    fn from(m: RunMode) -> Self {
        match m {
            RunMode::Strict => Pipeline::Strict,
            RunMode::Permissive => Pipeline::Permissive,
            RunMode::Instrumented => Pipeline::Instrumented,
        }
    }
}

/// Messages from the page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ClientMsg {
    Run {
        source: String,
        #[serde(default)]
        mode: RunMode,
    },
    Stop,
    Repl {
        line: String,
    },
    Scenario {
        name: String,
        #[serde(default)]
        seed: u64,
    },
}

/// Messages to the page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ServerMsg {
    State {
        world: WorldState,
        /// Frames this connection has skipped so far.
        dropped: u64,
    },
    Output {
        line: String,
    },
    Finished {
        status: String,
        diagnostic: Option<Diagnostic>,
        rendered: Option<String>,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, Deserialize)]
pub struct SaveRequest {
    pub account: String,
    pub file: String,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaveResponse {
    /// The new revision, or `None` when the source was unchanged.
    pub revision: Option<u32>,
}

pub struct BridgeConfig {
    pub static_dir: PathBuf,
    pub revisions: PathBuf,
}

#[derive(Clone)]
pub struct Bridge {
    client: Client,
    store: RevisionStore,
    static_dir: PathBuf,
    viewers: Arc<Viewers>,
}

impl Bridge {
    /// Starts relaying frames from `client` to every connected page.
    pub fn new(client: Client, cfg: BridgeConfig) -> Self {
        let bridge = Self {
            client,
            store: RevisionStore::new(cfg.revisions),
            static_dir: cfg.static_dir,
            viewers: Arc::default(),
        };
        let client = bridge.client.clone();
        let viewers = Arc::downgrade(&bridge.viewers);
        thread::Builder::new()
            .name("robojs-relay".into())
            .spawn(move || relay_frames(client, viewers))
            .expect("spawn relay thread");
        bridge
    }

    pub fn router(&self) -> Router {
        Router::new()
            .route("/ws", get(ws_handler))
            .route("/scenarios", get(scenarios))
            .route("/revisions", post(save_revision))
            .fallback_service(ServeDir::new(&self.static_dir))
            .with_state(self.clone())
    }

    pub fn store(&self) -> &RevisionStore {
        &self.store
    }
}

type Viewers = Mutex<Vec<Weak<DropOldest<WorldState>>>>;

/// Copies every new frame into each page's queue. Ends once the bridge is
/// gone.
fn relay_frames(client: Client, viewers: Weak<Viewers>) {
    let mut last = None;
    loop {
        let frame = client.wait_frame(last, Duration::from_millis(250));
        let Some(viewers) = viewers.upgrade() else { return };
        if let Some((world, _)) = frame {
            last = Some(world.frame_seq);
            let mut list = viewers.lock().unwrap();
            list.retain(|w| w.strong_count() > 0);
            for q in list.iter().filter_map(Weak::upgrade) {
                q.push(world.clone());
            }
        }
    }
}

/// Serves `bridge` on `listener` until the task is dropped.
pub async fn serve(listener: tokio::net::TcpListener, bridge: Bridge) -> std::io::Result<()> {
    axum::serve(listener, bridge.router()).await
}

async fn scenarios() -> Json<Vec<&'static str>> {
    Json(PRESETS.to_vec())
}

async fn save_revision(State(bridge): State<Bridge>, Json(req): Json<SaveRequest>) -> Response {
    match bridge.store.save_if_changed(&req.account, &req.file, &req.source) {
        Ok(revision) => Json(SaveResponse { revision }).into_response(),
        Err(e) if e.kind() == std::io::ErrorKind::InvalidInput => (StatusCode::BAD_REQUEST, e.to_string()).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

async fn ws_handler(State(bridge): State<Bridge>, ws: WebSocketUpgrade) -> Response {
    ws.on_upgrade(move |socket| session(bridge, socket))
}

enum Job {
    Run(String, RunMode),
    Repl(String),
}

async fn session(bridge: Bridge, socket: WebSocket) {
    use futures::{SinkExt, StreamExt};

    let frames = Arc::new(DropOldest::new(FRAME_QUEUE));
    bridge.viewers.lock().unwrap().push(Arc::downgrade(&frames));
    let (events_tx, mut events) = tmpsc::unbounded_channel::<ServerMsg>();
    let (jobs_tx, jobs) = mpsc::channel::<Job>();
    let stop = StopHandle::new();
    {
        let client = bridge.client.clone();
        let stop = stop.clone();
        let events = events_tx.clone();
        thread::Builder::new()
            .name("robojs-program".into())
            .spawn(move || program_worker(client, jobs, stop, events))
            .expect("spawn program thread");
    }

    let (mut sink, mut stream) = socket.split();
    let writer_frames = frames.clone();
    let writer = tokio::spawn(async move {
        loop {
            let msg = tokio::select! {
                biased;
                ev = events.recv() => match ev {
                    Some(ev) => ev,
                    None => break,
                },
                world = writer_frames.pop() => ServerMsg::State { world, dropped: writer_frames.dropped() },
            };
            let text = serde_json::to_string(&msg).expect("messages serialize");
            if sink.send(Message::Text(text.into())).await.is_err() {
                break;
            }
        }
    });

    while let Some(Ok(msg)) = stream.next().await {
        let text = match msg {
            Message::Text(t) => t.to_string(),
            Message::Close(_) => break,
            _ => continue,
        };
        match serde_json::from_str::<ClientMsg>(&text) {
            Ok(ClientMsg::Run { source, mode }) => {
                stop.reset();
                let _ = jobs_tx.send(Job::Run(source, mode));
            }
            Ok(ClientMsg::Repl { line }) => {
                let _ = jobs_tx.send(Job::Repl(line));
            }
            Ok(ClientMsg::Stop) => stop.stop(),
            Ok(ClientMsg::Scenario { name, seed }) => {
                if PRESETS.contains(&name.as_str()) {
                    bridge.client.load_scenario(&name, seed);
                } else {
                    let _ = events_tx.send(ServerMsg::Error { message: format!("unknown scenario '{name}'") });
                }
            }
            Err(e) => {
                let _ = events_tx.send(ServerMsg::Error { message: format!("bad message: {e}") });
            }
        }
    }
    stop.stop();
    drop(jobs_tx);
    writer.abort();
}

fn status_name(status: &ExecStatus) -> &'static str {
    match status {
        ExecStatus::Completed => "completed",
        ExecStatus::Aborted(_) => "aborted",
        ExecStatus::Stopped => "stopped",
        ExecStatus::BudgetExhausted => "budget-exhausted",
    }
}

fn program_worker(client: Client, jobs: mpsc::Receiver<Job>, stop: StopHandle, events: tmpsc::UnboundedSender<ServerMsg>) {
    let mut repl_port = NetPort::new(client.clone());
    let repl_events = events.clone();
    let mut repl = Interpreter::new(Mode::Strict, &mut repl_port)
        .with_stop(stop.clone())
        .on_output(move |line| {
            let _ = repl_events.send(ServerMsg::Output { line: line.to_string() });
        });
    for job in jobs {
        let outcome = match job {
            Job::Run(source, mode) => {
                let ast = match prepare(&source, 0, mode.into()) {
                    Ok(ast) => ast,
                    Err(d) => {
                        let rendered = Some(d.render("program.js"));
                        let _ = events.send(ServerMsg::Finished { status: "aborted".into(), diagnostic: Some(d), rendered });
                        continue;
                    }
                };
                let mut port = NetPort::new(client.clone());
                let out = events.clone();
                let interp_mode = if mode == RunMode::Strict { Mode::Strict } else { Mode::Permissive };
                let mut interp = Interpreter::new(interp_mode, &mut port)
                    .with_stop(stop.clone())
                    .with_source(&source)
                    .on_output(move |line| {
                        let _ = out.send(ServerMsg::Output { line: line.to_string() });
                    });
                let outcome = interp.run(&ast);
                outcome
            }
            Job::Repl(line) => {
                stop.reset();
                repl.repl_eval(&line)
            }
        };
        let diagnostic = outcome.diagnostic().cloned();
        let rendered = diagnostic.as_ref().map(|d| d.render("program.js"));
        let _ = events.send(ServerMsg::Finished { status: status_name(&outcome.status).into(), diagnostic, rendered });
    }
}
