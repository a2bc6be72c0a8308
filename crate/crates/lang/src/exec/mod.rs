//! Running programs: values, the interpreter and the I/O boundary.

pub mod checks;
pub mod interp;
pub mod io;
pub mod ops;
pub mod value;

pub use interp::{ExecOutcome, ExecStatus, Interpreter, Mode, DEFAULT_STEP_BUDGET, MAX_CALL_DEPTH};
pub use io::{Completion, IoFailure, IoPort, IoReply, IoRequest, Primitive, Snapshot, StopHandle, StubPort, ThreadedPort};
pub use value::Value;

use crate::check::{instrument, static_check, ArityTable};
use crate::diagnostic::Diagnostic;
use crate::syntax::{parse_source, FileId};

/// How a source file is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    /// Run as plain JavaScript.
    Permissive,
    /// Static checks, then checked evaluation.
    Strict,
    /// Static checks, then the instrumented program run as plain JavaScript.
    Instrumented,
}

/// Parses and, for the checked pipelines, statically checks `source`.
/// Returns the first problem found.
pub fn prepare(source: &str, file: FileId, pipeline: Pipeline) -> Result<crate::syntax::Ast, Diagnostic> {
    let ast = parse_source(source, file).map_err(|d| d[0].clone())?;
    if pipeline == Pipeline::Permissive || ast.instrumented {
        return Ok(ast);
    }
    let arities = ArityTable::standard().with_program(&ast);
    if let Some(d) = static_check(&ast, &arities).into_iter().next() {
        return Err(d);
    }
    if pipeline == Pipeline::Strict {
        return Ok(ast);
    }
    let text = instrument(&ast, &arities).expect("fresh program");
    parse_source(&text, file).map_err(|d| d[0].clone())
}

/// Runs `source` to completion against `port`.
pub fn run_source(source: &str, pipeline: Pipeline, port: &mut dyn IoPort, stop: StopHandle) -> ExecOutcome {
    let ast = match prepare(source, 0, pipeline) {
        Ok(ast) => ast,
        Err(d) => return ExecOutcome { status: ExecStatus::Aborted(d), printed_output: Vec::new(), steps: 0 },
    };
    let mode = if pipeline == Pipeline::Strict { Mode::Strict } else { Mode::Permissive };
    Interpreter::new(mode, port).with_stop(stop).with_source(source).run(&ast)
}
