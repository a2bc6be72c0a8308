use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use robojs::{safety_config, scenario};
use robojs_core::Stack;
use robojs_lang::api::{api_catalog, LocalSimPort, RobotSession};
use robojs_lang::check::{instrument, static_check, ArityTable};
use robojs_lang::exec::{prepare, ExecStatus, Interpreter, IoPort, Mode, Pipeline, StopHandle, StubPort};
use robojs_lang::syntax::parse_source;
use robojs_wire::bridge::{Bridge, BridgeConfig};
use robojs_wire::{Client, NetPort, Ports, UdpLink};

/// Check, compile and run RoboJS programs.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunMode {
    Strict,
    Permissive,
    Instrumented,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report syntax and static errors.
    Check { file: PathBuf },
    /// Write the instrumented program, runnable by any JavaScript engine
    /// that provides the check functions.
    Compile {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a program.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "strict")]
        mode: RunMode,
        /// Scenario preset or file for the built-in simulator.
        #[arg(long, default_value = "soccer-2v2")]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Answer robot calls instantly without simulating.
        #[arg(long, conflicts_with = "guard")]
        stub: bool,
        /// Talk to a running robosim (or real guard) at this host instead.
        #[arg(long, visible_alias = "sim")]
        guard: Option<String>,
        /// Play simulated motion at wall-clock speed.
        #[arg(long)]
        realtime: bool,
        /// Safety settings for the built-in simulator (TOML).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Interactive prompt with checked evaluation.
    Repl {
        #[arg(long, default_value = "soccer-2v2")]
        scenario: String,
    },
    /// Print the robot API as JSON.
    Manifest,
    /// Serve the browser IDE and relay programs to a guard.
    Bridge {
        /// Directory with the IDE's static files.
        #[arg(long, default_value = "web")]
        r#static: PathBuf,
        /// Where saved revisions go.
        #[arg(long, default_value = "revisions")]
        revisions: PathBuf,
        /// Guard host; ports come from the environment or defaults.
        #[arg(long, default_value = "127.0.0.1")]
        guard: String,
    },
}

fn read(file: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))
}

fn check(file: &PathBuf) -> Result<ExitCode, String> {
    let source = read(file)?;
    let name = file.display().to_string();
    let diags = match parse_source(&source, 0) {
        Err(d) => d,
        Ok(ast) => static_check(&ast, &ArityTable::standard().with_program(&ast)),
    };
    for d in &diags {
        println!("{}", d.render(&name));
    }
    Ok(if diags.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn compile(file: &PathBuf, output: Option<&PathBuf>) -> Result<ExitCode, String> {
    let source = read(file)?;
    let name = file.display().to_string();
    let ast = match prepare(&source, 0, Pipeline::Strict) {
        Ok(ast) => ast,
        Err(d) => {
            eprintln!("{}", d.render(&name));
            return Ok(ExitCode::from(1));
        }
    };
    let text = instrument(&ast, &ArityTable::standard().with_program(&ast)).map_err(|e| e.to_string())?;
    match output {
        Some(out) => std::fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn guard_port(host: &str) -> Result<NetPort, String> {
    let ports = Ports::from_env();
    let resolve = |port| {
        use std::net::ToSocketAddrs;
        (host, port).to_socket_addrs().map_err(|e| e.to_string())?.next().ok_or_else(|| format!("cannot resolve {host}"))
    };
    let link = UdpLink::bind("0.0.0.0:0").map_err(|e| e.to_string())?;
    let client = Client::start(Arc::new(link), resolve(ports.command)?, resolve(ports.state)?, format!("cli-{}", std::process::id()));
    if client.wait_frame(None, std::time::Duration::from_secs(2)).is_none() {
        return Err(format!("no state frames from {host}:{}; is robosim running?", ports.state));
    }
    Ok(NetPort::new(client))
}

#[allow(clippy::too_many_arguments)]
fn run(
    file: &PathBuf,
    mode: RunMode,
    scenario_name: &str,
    seed: u64,
    stub: bool,
    guard: Option<&str>,
    realtime: bool,
    config: Option<&PathBuf>,
) -> Result<ExitCode, String> {
    let source = read(file)?;
    let name = file.display().to_string();
    let pipeline = match mode {
        RunMode::Strict => Pipeline::Strict,
        RunMode::Permissive => Pipeline::Permissive,
        RunMode::Instrumented => Pipeline::Instrumented,
    };
    let ast = match prepare(&source, 0, pipeline) {
        Ok(ast) => ast,
        Err(d) => {
            eprintln!("{}", d.render(&name));
            return Ok(ExitCode::from(1));
        }
    };
    let safety = safety_config(config.map(|p| p.as_path()))?;
    let loaded = scenario(scenario_name, seed, &safety)?;
    let session = RobotSession::with_grid(loaded.grid.clone());
    let mut port: Box<dyn IoPort> = match (stub, guard) {
        (true, _) => Box::new(StubPort::with_world(loaded.world.clone())),
        (false, Some(host)) => Box::new(guard_port(host)?),
        (false, None) => Box::new(LocalSimPort::new(Stack::from_scenario(&loaded, safety)).realtime(realtime)),
    };
    let interp_mode = if matches!(mode, RunMode::Strict) { Mode::Strict } else { Mode::Permissive };
    let stdout = std::io::stdout();
    let mut interp = Interpreter::new(interp_mode, port.as_mut())
        .with_source(&source)
        .with_session(session)
        .with_stop(StopHandle::new())
        .on_output(move |line| {
            let mut out = stdout.lock();
            let _ = writeln!(out, "{line}");
            let _ = out.flush();
        });
    let outcome = interp.run(&ast);
    Ok(match outcome.status {
        ExecStatus::Completed => ExitCode::SUCCESS,
        ExecStatus::Aborted(d) => {
            eprintln!("{}", d.render(&name));
            ExitCode::from(1)
        }
        ExecStatus::Stopped => ExitCode::from(130),
        ExecStatus::BudgetExhausted => {
            eprintln!("{name}: stopped after {} steps", outcome.steps);
            ExitCode::from(1)
        }
    })
}

fn repl(scenario_name: &str) -> Result<ExitCode, String> {
    let safety = safety_config(None)?;
    let loaded = scenario(scenario_name, 0, &safety)?;
    let mut port = LocalSimPort::new(Stack::from_scenario(&loaded, safety));
    let mut interp = Interpreter::new(Mode::Strict, &mut port).with_session(RobotSession::with_grid(loaded.grid.clone()));
    let stdin = std::io::stdin();
    let mut out = std::io::stdout();
    loop {
        let _ = write!(out, "> ");
        let _ = out.flush();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(|e| e.to_string())? == 0 {
            return Ok(ExitCode::SUCCESS);
        }
        if line.trim().is_empty() {
            continue;
        }
        let result = interp.repl_eval(&line);
        for l in &result.printed_output {
            let _ = writeln!(out, "{l}");
        }
        if let Some(d) = result.diagnostic() {
            let _ = writeln!(out, "{d}");
        }
    }
}

fn bridge(static_dir: PathBuf, revisions: PathBuf, host: &str) -> Result<ExitCode, String> {
    let ports = Ports::from_env();
    let port = guard_port(host)?;
    let client = port.client().clone();
    let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(("0.0.0.0", ports.bridge)).await.map_err(|e| e.to_string())?;
        log::info!("bridge listening on port {}", ports.bridge);
        let bridge = Bridge::new(client, BridgeConfig { static_dir, revisions });
        robojs_wire::bridge::serve(listener, bridge).await.map_err(|e| e.to_string())
    })?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Check { file } => check(file),
        Cmd::Compile { file, output } => compile(file, output.as_ref()),
        Cmd::Run { file, mode, scenario, seed, stub, guard, realtime, config } => {
            run(file, *mode, scenario, *seed, *stub, guard.as_deref(), *realtime, config.as_ref())
        }
        Cmd::Repl { scenario } => repl(scenario),
        Cmd::Manifest => {
            let text = serde_json::to_string_pretty(&api_catalog()).expect("manifest serializes");
            // A closed pipe (`robojs manifest | head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bridge { r#static, revisions, guard } => bridge(r#static.clone(), revisions.clone(), guard),
    };
    result.unwrap_or_else(|e| {
        eprintln!("robojs: {e}");
        ExitCode::from(2)
    })
}
