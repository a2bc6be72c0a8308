//! Shared setup for the `robojs` and `robosim` command-line tools.

use std::path::Path;

use robojs_core::scenario::load_scenario;
use robojs_core::{SafetyConfig, Scenario, ScenarioConfig};

/// Guard settings from a TOML file, or the defaults.
pub fn safety_config(path: Option<&Path>) -> Result<SafetyConfig, String> {
    match path {
        None => Ok(SafetyConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            SafetyConfig::from_toml(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

/// A preset by name, or a scenario file when `name` ends in `.toml`.
pub fn scenario(name: &str, seed: u64, safety: &SafetyConfig) -> Result<Scenario, String> {
    let cfg = if name.ends_with(".toml") {
        let text = std::fs::read_to_string(name).map_err(|e| format!("{name}: {e}"))?;
        ScenarioConfig::from_toml(&text).map_err(|e| e.to_string())?
    } else {
        ScenarioConfig::preset(name, seed).map_err(|e| e.to_string())?
    };
    load_scenario(&cfg, safety).map_err(|e| e.to_string())
}

