use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use robojs::{safety_config, scenario};
use robojs_core::Stack;
use robojs_wire::{GuardServer, Ports, ServerConfig, UdpLink};

/// Simulated field behind the safety guard, speaking the datagram protocol.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Scenario preset or scenario file.
    #[arg(long, default_value = "soccer-2v2")]
    scenario: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Step as fast as possible instead of at the control rate.
    #[arg(long)]
    fast: bool,
    /// Address to bind; ports come from the environment or defaults.
    #[arg(long, default_value = "0.0.0.0")]
    listen: String,
    /// Safety settings (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    let run = || -> Result<(), String> {
        let safety = safety_config(args.config.as_deref())?;
        let loaded = scenario(&args.scenario, args.seed, &safety)?;
        let ports = Ports::from_env();
        let bind = |port| UdpLink::bind((args.listen.as_str(), port)).map_err(|e| format!("{}:{port}: {e}", args.listen));
        let command = Arc::new(bind(ports.command)?);
        let state = Arc::new(bind(ports.state)?);
        let stack = Stack::from_scenario(&loaded, safety.clone());
        let server = GuardServer::start(ServerConfig { stack, safety, paced: !args.fast }, command, state).map_err(|e| e.to_string())?;
        log::info!("scenario {} on command port {}, state port {}", args.scenario, ports.command, ports.state);
        server.join();
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("robosim: {e}");
            ExitCode::from(2)
        }
    }
}
