//! Random programs from the RoboJS grammar, for differential testing.
//!
//! Programs always terminate: loops are bounded by counters the body cannot
//! touch and functions only call functions declared before them. They are
//! meant to hit the checked pitfalls often, so values of every type flow
//! into every operator.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

const BINARY: &[&str] = &["+", "-", "*", "/", "%", "<", "<=", ">", ">=", "===", "!==", "&&", "||"];
const COMPOUND: &[&str] = &["=", "+=", "-=", "*=", "/=", "%="];
const STRINGS: &[&str] = &["\"a\"", "\"1\"", "\"\"", "\" 2 \"", "\"robot\""];

#[derive(Clone)]
struct Func {
    name: String,
    arity: usize,
}

struct Gen {
    rng: ChaCha8Rng,
    out: String,
    indent: usize,
    fresh: usize,
    /// Assignable variables visible at this point.
    vars: Vec<String>,
    /// Loop counters and parameters: readable, never written.
    readonly: Vec<String>,
    funcs: Vec<Func>,
    stmt_budget: usize,
    /// Chance that any one choice introduces a type or initialization slip.
    chaos: f64,
    opts: GenOptions,
}

#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    /// Allow calls to robot sensors.
    pub robot: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self { robot: true }
    }
}

/// Generates one program from `seed`.
pub fn generate(seed: u64) -> String {
    generate_with(seed, GenOptions::default())
}

pub fn generate_with(seed: u64, opts: GenOptions) -> String {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        out: String::new(),
        indent: 0,
        fresh: 0,
        vars: Vec::new(),
        readonly: Vec::new(),
        funcs: Vec::new(),
        stmt_budget: 40,
        chaos: 0.0,
        opts,
    };
    g.chaos = if g.rng.random_bool(0.3) { 0.0 } else { g.rng.random_range(0.0..0.25) };
    g.program();
    g.out
}

impl Gen {
    fn name(&mut self, prefix: &str) -> String {
        self.fresh += 1;
        format!("{prefix}{}", self.fresh)
    }

    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn program(&mut self) {
        let globals: Vec<String> = (0..self.rng.random_range(2..5)).map(|_| self.name("g")).collect();
        // Functions may refer to globals declared later in the file.
        if self.sloppy() {
            self.vars = globals.clone();
        }
        for _ in 0..self.rng.random_range(0..3) {
            self.function();
        }
        self.vars.clear();
        for g in &globals {
            let decl = if self.sloppy() {
                format!("let {g};")
            } else {
                format!("let {g} = {};", self.expr(2))
            };
            self.line(&decl);
            self.vars.push(g.clone());
            if self.rng.random_bool(0.3) {
                self.statement(2);
            }
        }
        for _ in 0..self.rng.random_range(3..9) {
            self.statement(2);
        }
    }

    fn function(&mut self) {
        let name = self.name("f");
        let arity = self.rng.random_range(0..3);
        let params: Vec<String> = (0..arity).map(|_| self.name("p")).collect();
        self.line(&format!("function {name}({}) {{", params.join(", ")));
        self.indent += 1;
        let saved = self.readonly.len();
        self.readonly.extend(params);
        for _ in 0..self.rng.random_range(0..3) {
            self.statement(1);
        }
        let ret = if !self.sloppy() { format!("return {};", self.expr(2)) } else { "return;".into() };
        self.line(&ret);
        self.readonly.truncate(saved);
        self.indent -= 1;
        self.line("}");
        self.funcs.push(Func { name, arity });
    }

    fn block(&mut self, depth: u32) {
        self.indent += 1;
        let saved = self.vars.len();
        for _ in 0..self.rng.random_range(0..3) {
            self.statement(depth);
        }
        self.vars.truncate(saved);
        self.indent -= 1;
    }

    fn statement(&mut self, depth: u32) {
        if self.stmt_budget == 0 {
            return;
        }
        self.stmt_budget -= 1;
        let choice = self.rng.random_range(0..11);
        match choice {
            0 | 1 => {
                let v = self.name("v");
                let text = if self.sloppy() { format!("let {v};") } else { format!("let {v} = {};", self.expr(2)) };
                self.line(&text);
                self.vars.push(v);
            }
            2 | 3 if !self.vars.is_empty() => {
                let v = self.vars.choose(&mut self.rng).unwrap().clone();
                let op = *COMPOUND.choose(&mut self.rng).unwrap();
                let text = format!("{v} {op} {};", self.expr(2));
                self.line(&text);
            }
            4 if !self.vars.is_empty() => {
                let v = self.vars.choose(&mut self.rng).unwrap().clone();
                let op = if self.rng.random_bool(0.5) { "++" } else { "--" };
                self.line(&format!("{v}{op};"));
            }
            5 | 6 => {
                let n = self.rng.random_range(1..3);
                let args: Vec<String> = (0..n).map(|_| self.expr(2)).collect();
                self.line(&format!("console.log({});", args.join(", ")));
            }
            7 if depth > 0 => {
                let cond = self.condition();
                self.line(&format!("if ({cond}) {{"));
                self.block(depth - 1);
                if self.rng.random_bool(0.5) {
                    self.line("} else {");
                    self.block(depth - 1);
                }
                self.line("}");
            }
            8 if depth > 0 => {
                let i = self.name("i");
                let k = self.rng.random_range(0..4);
                self.line(&format!("for (let {i} = 0; {i} < {k}; {i}++) {{"));
                self.readonly.push(i);
                self.block(depth - 1);
                self.readonly.pop();
                self.line("}");
            }
            9 if depth > 0 => {
                let w = self.name("w");
                let k = self.rng.random_range(0..4);
                self.line(&format!("let {w} = 0;"));
                self.line(&format!("while ({w} < {k}) {{"));
                self.readonly.push(w.clone());
                self.block(depth - 1);
                self.readonly.pop();
                self.indent += 1;
                self.line(&format!("{w}++;"));
                self.indent -= 1;
                self.line("}");
            }
            _ => {
                let call = self.call(2);
                self.line(&format!("{call};"));
            }
        }
    }

    fn condition(&mut self) -> String {
        match self.rng.random_range(0..10) {
            0 if !self.vars.is_empty() && self.sloppy() => {
                let v = self.vars.choose(&mut self.rng).unwrap().clone();
                format!("{v} = {}", self.expr(1))
            }
            1..=3 if self.sloppy() => self.expr(2),
            1 => {
                let op = *["&&", "||"].choose(&mut self.rng).unwrap();
                format!("({} < {}) {op} !({} === {})", self.operand(1), self.operand(1), self.operand(1), self.operand(1))
            }
            _ => {
                let op = *["<", "<=", ">", ">=", "===", "!=="].choose(&mut self.rng).unwrap();
                format!("{} {op} {}", self.operand(1), self.operand(1))
            }
        }
    }

    fn readable(&mut self) -> Option<String> {
        let total = self.vars.len() + self.readonly.len();
        if total == 0 {
            return None;
        }
        let i = self.rng.random_range(0..total);
        Some(if i < self.vars.len() { self.vars[i].clone() } else { self.readonly[i - self.vars.len()].clone() })
    }

    fn sloppy(&mut self) -> bool {
        self.chaos > 0.0 && self.rng.random_bool(self.chaos)
    }

    fn literal(&mut self) -> String {
        if !self.sloppy() {
            return match self.rng.random_range(0..3) {
                0 | 1 => self.rng.random_range(0..10).to_string(),
                _ => ["0.5", "2.25", "100", "1e3"].choose(&mut self.rng).unwrap().to_string(),
            };
        }
        match self.rng.random_range(0..6) {
            0 | 1 => self.rng.random_range(0..10).to_string(),
            2 => ["0.5", "2.25", "100", "1e3"].choose(&mut self.rng).unwrap().to_string(),
            3 | 4 => STRINGS.choose(&mut self.rng).unwrap().to_string(),
            _ => if self.rng.random_bool(0.5) { "true" } else { "false" }.to_string(),
        }
    }

    /// An operand that is never a bare string or boolean literal, so that
    /// ordering comparisons pass the static check.
    fn operand(&mut self, depth: u32) -> String {
        match self.rng.random_range(0..4) {
            0 => self.rng.random_range(0..10).to_string(),
            1 if depth > 0 => format!("({})", self.expr(depth - 1)),
            2 if depth > 0 => self.call(depth - 1),
            _ => self.readable().unwrap_or_else(|| "1".into()),
        }
    }

    fn call(&mut self, depth: u32) -> String {
        if self.funcs.is_empty() && !self.opts.robot {
            return self.literal();
        }
        if self.opts.robot && (self.funcs.is_empty() || self.rng.random_bool(0.1)) {
            let sensor = if self.sloppy() { "getPosX" } else { *["getBallPosX", "getBallPosY", "getBallVelX"].choose(&mut self.rng).unwrap() };
            return format!("robot.{sensor}()");
        }
        if self.sloppy() {
            if let Some(v) = self.readable() {
                let n = self.rng.random_range(0..3);
                let args: Vec<String> = (0..n).map(|_| self.expr(0)).collect();
                return format!("{v}({})", args.join(", "));
            }
        }
        let f = self.funcs.choose(&mut self.rng).unwrap().clone();
        let args: Vec<String> = (0..f.arity).map(|_| self.expr(depth.saturating_sub(1))).collect();
        format!("{}({})", f.name, args.join(", "))
    }

    fn expr(&mut self, depth: u32) -> String {
        let pick = if depth == 0 { self.rng.random_range(0..3) } else { self.rng.random_range(0..10) };
        match pick {
            0 => self.literal(),
            1 | 2 => self.readable().unwrap_or_else(|| self.literal()),
            3 | 4 | 5 => {
                let op = if self.sloppy() {
                    *BINARY.choose(&mut self.rng).unwrap()
                } else {
                    *BINARY[..5].choose(&mut self.rng).unwrap()
                };
                if matches!(op, "<" | "<=" | ">" | ">=") {
                    format!("{} {op} {}", self.operand(depth - 1), self.operand(depth - 1))
                } else {
                    format!("{} {op} {}", self.sub(depth - 1), self.sub(depth - 1))
                }
            }
            6 => {
                let op = if self.sloppy() { "!" } else { "-" };
                format!("{op}{}", self.sub(depth - 1))
            }
            7 => self.call(depth - 1),
            8 if !self.funcs.is_empty() && self.sloppy() => self.funcs.choose(&mut self.rng).unwrap().name.clone(),
            _ => format!("({})", self.expr(depth - 1)),
        }
    }

    /// An operand of a binary or unary operator, parenthesized if compound.
    fn sub(&mut self, depth: u32) -> String {
        let e = self.expr(depth);
        if e.contains(' ') && !e.starts_with('(') {
            format!("({e})")
        } else if e.starts_with('-') {
            format!("({e})")
        } else {
            e
        }
    }
}


/// Runs a statically clean program twice: checked evaluation of the source,
/// and plain evaluation of its instrumented form. `None` if the static check
/// rejects it.
pub fn run_both_ways(source: &str) -> Option<(crate::exec::ExecOutcome, crate::exec::ExecOutcome)> {
    use crate::check::{instrument, static_check, ArityTable};
    use crate::exec::{Interpreter, Mode, StubPort};
    use crate::syntax::parse_source;

    let ast = parse_source(source, 0).ok()?;
    let arities = ArityTable::standard().with_program(&ast);
    if !static_check(&ast, &arities).is_empty() {
        return None;
    }
    let instrumented = parse_source(&instrument(&ast, &arities).ok()?, 0).ok()?;
    let mut port = StubPort::with_world(sample_world());
    let strict = Interpreter::new(Mode::Strict, &mut port).with_source(source).run(&ast);
    let mut port = StubPort::with_world(sample_world());
    let plain = Interpreter::new(Mode::Permissive, &mut port).run(&instrumented);
    Some((strict, plain))
}

fn sample_world() -> robojs_core::WorldState {
    robojs_core::WorldState {
        timestamp: 0.0,
        frame_seq: 1,
        robots: vec![robojs_core::RobotState::at(0, -0.5, 0.25, 90.0)],
        ball: robojs_core::BallState::at_rest(0.75, -0.5),
        items: vec![],
    }
}
