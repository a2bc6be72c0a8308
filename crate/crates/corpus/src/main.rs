use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use robojs_corpus::{estimate_errors, report, scan, Format, RevisionCorpus};
use robojs_lang::api::{api_catalog, ApiManifest};

/// Summarise a tree of saved program revisions (`<account>/<file>/NNN.js`).
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Root of the revision tree.
    dir: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// API manifest (JSON) giving the robot functions and their arities.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let manifest: ApiManifest = match &args.manifest {
        None => api_catalog(),
        Some(path) => match std::fs::read_to_string(path).map_err(|e| e.to_string()).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("robojs-corpus: cannot read manifest {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
    };
    let corpus = match RevisionCorpus::load(&args.dir) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("robojs-corpus: cannot read {}: {e}", args.dir.display());
            return ExitCode::from(2);
        }
    };
    for w in &corpus.warnings {
        eprintln!("warning: {w}");
    }
    let stats = scan(&corpus);
    let est = estimate_errors(&corpus, &manifest);
    print!("{}", report(&stats, &est, args.format));
    ExitCode::SUCCESS
}
