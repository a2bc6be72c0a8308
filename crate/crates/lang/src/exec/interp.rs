use std::rc::Rc;

use super::checks::{self, CheckFailure};
use super::io::{Completion, IoFailure, IoPort, StopHandle};
use super::ops;
use super::value::{Builtin, Closure, Function, Scope, Slot, Value};
use crate::api::manifest::{catalog_index, CATALOG};
use crate::api::request::{self, ApiError, RobotSession};
use crate::check::Intrinsic;
use crate::diagnostic::{Category, Diagnostic, RuntimeKind};
use crate::syntax::printer::print_function;
use crate::syntax::*;

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;
/// Deepest chain of user function calls before a stack overflow is reported.
pub const MAX_CALL_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Plain JavaScript semantics, as a browser would run the program.
    Permissive,
    /// Every pitfall check is applied while evaluating.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExecStatus {
    Completed,
    Aborted(Diagnostic),
    Stopped,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExecOutcome {
    pub status: ExecStatus,
    pub printed_output: Vec<String>,
    pub steps: u64,
}

impl ExecOutcome {
    pub fn diagnostic(&self) -> Option<&Diagnostic> {
        match &self.status {
            ExecStatus::Aborted(d) => Some(d),
            _ => None,
        }
    }
}

/// Why evaluation unwound.
enum Halt {
    Error(Diagnostic),
    Stopped,
    Budget,
}

type Eval<T> = Result<T, Halt>;

enum Flow {
    Normal,
    Return(Value),
}

struct Frame {
    argc: usize,
    call_span: SourceSpan,
}

fn check_error(f: CheckFailure, span: SourceSpan) -> Halt {
    Halt::Error(Diagnostic::dynamic(f.category, span, f.message))
}

fn runtime(kind: RuntimeKind, span: SourceSpan, message: impl Into<String>) -> Halt {
    Halt::Error(Diagnostic::runtime(kind, span, message))
}

fn api_error(e: ApiError, span: SourceSpan) -> Halt {
    Halt::Error(match e.category {
        Category::Check(c) => Diagnostic::dynamic(c, span, e.message),
        Category::Runtime(k) => Diagnostic::runtime(k, span, e.message),
        other => Diagnostic { phase: Phase::Dynamic, category: other, message: e.message, span },
    })
}

use crate::diagnostic::Phase;

fn not_callable(value: &Value, span: SourceSpan) -> Halt {
    runtime(
        RuntimeKind::NotCallable,
        span,
        format!("Only functions can be called, but this value is {}.", value.describe()),
    )
}

/// A tree-walking interpreter over one program's globals.
pub struct Interpreter<'p> {
    mode: Mode,
    port: &'p mut dyn IoPort,
    stop: StopHandle,
    budget: u64,
    steps: u64,
    output: Vec<String>,
    sink: Option<Box<dyn FnMut(&str) + 'p>>,
    globals: Rc<Scope>,
    session: RobotSession,
    frames: Vec<Frame>,
    source: Option<Vec<Vec<char>>>,
    file_id: FileId,
}

impl<'p> Interpreter<'p> {
    pub fn new(mode: Mode, port: &'p mut dyn IoPort) -> Self {
        Self {
            mode,
            port,
            stop: StopHandle::new(),
            budget: DEFAULT_STEP_BUDGET,
            steps: 0,
            output: Vec::new(),
            sink: None,
            globals: Scope::root(),
            session: RobotSession::default(),
            frames: Vec::new(),
            source: None,
            file_id: 0,
        }
    }

    pub fn with_budget(mut self, steps: u64) -> Self {
        self.budget = steps;
        self
    }

    pub fn with_stop(mut self, stop: StopHandle) -> Self {
        self.stop = stop;
        self
    }

    pub fn with_session(mut self, session: RobotSession) -> Self {
        self.session = session;
        self
    }

    /// The program text, used when a function has to be turned into a string.
    pub fn with_source(mut self, source: &str) -> Self {
        self.source = Some(source.split('\n').map(|l| l.chars().collect()).collect());
        self
    }

    /// Called with every printed line as soon as it is produced.
    pub fn on_output(mut self, sink: impl FnMut(&str) + 'p) -> Self {
        self.sink = Some(Box::new(sink));
        self
    }

    pub fn session(&self) -> &RobotSession {
        &self.session
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Runs a whole program. Instrumented programs get the check functions
    /// they call installed as globals.
    pub fn run(&mut self, ast: &Ast) -> ExecOutcome {
        self.file_id = ast.span.file_id;
        if ast.instrumented {
            for i in Intrinsic::ALL {
                self.globals.declare(Rc::from(i.name()), Some(Value::Function(Function::Builtin(Builtin::Intrinsic(i)))));
            }
        }
        let globals = self.globals.clone();
        let result = self.exec_body(&ast.body, &globals);
        self.finish(result.map(|_| ()))
    }

    /// Evaluates one line of input against the retained globals, printing
    /// the value of a trailing expression statement.
    pub fn repl_eval(&mut self, text: &str) -> ExecOutcome {
        let mut text = text.trim_end().to_string();
        if !text.ends_with(';') && !text.ends_with('}') {
            text.push(';');
        }
        let ast = match parse_source(&text, self.file_id) {
            Ok(ast) => ast,
            Err(diags) => {
                return ExecOutcome {
                    status: ExecStatus::Aborted(diags[0].clone()),
                    printed_output: Vec::new(),
                    steps: 0,
                }
            }
        };
        let before = self.output.len();
        let globals = self.globals.clone();
        let result = (|| -> Eval<Option<Value>> {
            self.hoist(&ast.body, &globals);
            let mut last = None;
            for s in &ast.body {
                last = None;
                match &s.kind {
                    StmtKind::Expr(e) => {
                        self.tick()?;
                        last = Some(self.eval(e, &globals)?);
                    }
                    _ => {
                        self.exec(s, &globals)?;
                    }
                }
            }
            Ok(last)
        })();
        let result = result.map(|last| {
            if let Some(v) = last {
                self.print(v.log_format());
            }
        });
        let mut out = self.finish(result);
        out.printed_output = self.output[before..].to_vec();
        out
    }

    fn finish(&mut self, result: Eval<()>) -> ExecOutcome {
        let status = match result {
            Ok(()) => ExecStatus::Completed,
            Err(halt) => {
                if let Some(id) = self.session.robot_id {
                    self.port.halt(id);
                }
                match halt {
                    Halt::Error(d) => ExecStatus::Aborted(d),
                    Halt::Stopped => ExecStatus::Stopped,
                    Halt::Budget => ExecStatus::BudgetExhausted,
                }
            }
        };
        self.frames.clear();
        ExecOutcome { status, printed_output: self.output.clone(), steps: self.steps }
    }

    fn print(&mut self, line: String) {
        if let Some(sink) = self.sink.as_mut() {
            sink(&line);
        }
        self.output.push(line);
    }

    fn tick(&mut self) -> Eval<()> {
        if self.stop.is_stopped() {
            return Err(Halt::Stopped);
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Halt::Budget);
        }
        Ok(())
    }

    fn strict(&self) -> bool {
        self.mode == Mode::Strict
    }

    // ---- statements ----

    /// Declares the functions and `let` bindings of a statement list.
    fn hoist(&mut self, body: &[Stmt], env: &Rc<Scope>) {
        for s in body {
            match &s.kind {
                StmtKind::Function(decl) => {
                    let closure = Closure { decl: decl.clone(), env: env.clone() };
                    env.declare(decl.name.name.clone(), Some(Value::Function(Function::User(Rc::new(closure)))));
                }
                StmtKind::Let { name, .. } => env.declare(name.name.clone(), None),
                _ => {}
            }
        }
    }

    fn exec_body(&mut self, body: &[Stmt], env: &Rc<Scope>) -> Eval<Flow> {
        self.hoist(body, env);
        for s in body {
            if let Flow::Return(v) = self.exec(s, env)? {
                return Ok(Flow::Return(v));
            }
        }
        Ok(Flow::Normal)
    }

    fn exec(&mut self, s: &Stmt, env: &Rc<Scope>) -> Eval<Flow> {
        self.tick()?;
        match &s.kind {
            StmtKind::Let { name, init } => {
                let v = match init {
                    Some(e) => self.eval(e, env)?,
                    None => Value::Undefined,
                };
                env.declare(name.name.clone(), Some(v));
            }
            StmtKind::Expr(e) => {
                self.eval(e, env)?;
            }
            StmtKind::If { cond, then_branch, else_branch } => {
                if self.condition(cond, env)? {
                    return self.exec(then_branch, env);
                } else if let Some(e) = else_branch {
                    return self.exec(e, env);
                }
            }
            StmtKind::While { cond, body } => {
                while self.condition(cond, env)? {
                    if let Flow::Return(v) = self.exec(body, env)? {
                        return Ok(Flow::Return(v));
                    }
                }
            }
            StmtKind::For { init, test, update, body } => {
                let mut scope = Scope::child(env);
                if let Some(init) = init {
                    if let StmtKind::Let { name, .. } = &init.kind {
                        scope.declare(name.name.clone(), None);
                    }
                    self.exec(init, &scope)?;
                }
                scope = scope.copy();
                loop {
                    if let Some(t) = test {
                        if !self.condition(t, &scope)? {
                            break;
                        }
                    }
                    if let Flow::Return(v) = self.exec(body, &scope)? {
                        return Ok(Flow::Return(v));
                    }
                    scope = scope.copy();
                    if let Some(u) = update {
                        self.eval(u, &scope)?;
                    }
                }
            }
            StmtKind::Function(_) => {}
            StmtKind::Return(e) => {
                let v = match e {
                    Some(e) => self.eval(e, env)?,
                    None => Value::Undefined,
                };
                return Ok(Flow::Return(v));
            }
            StmtKind::Block(body) => {
                let scope = Scope::child(env);
                return self.exec_body(body, &scope);
            }
            StmtKind::Empty => {}
        }
        Ok(Flow::Normal)
    }

    fn condition(&mut self, cond: &Expr, env: &Rc<Scope>) -> Eval<bool> {
        let v = self.eval(cond, env)?;
        if self.strict() {
            let assigns = matches!(cond.peel().kind, ExprKind::Assign { .. });
            checks::condition(&v, assigns).map_err(|f| check_error(f, cond.span))
        } else {
            Ok(v.to_boolean())
        }
    }

    // ---- expressions ----

    fn read(&mut self, name: &str, span: SourceSpan, env: &Rc<Scope>) -> Eval<Value> {
        match env.lookup(name) {
            Slot::Value(v) => {
                if self.strict() {
                    checks::read(&v, name).map_err(|f| check_error(f, span))?;
                }
                Ok(v)
            }
            Slot::Uninitialized => Err(runtime(
                RuntimeKind::ReferenceError,
                span,
                format!("Cannot access '{name}' before initialization"),
            )),
            Slot::Undeclared => Err(runtime(RuntimeKind::ReferenceError, span, format!("{name} is not defined"))),
        }
    }

    fn write(&mut self, target: &Ident, value: Value, env: &Rc<Scope>) -> Eval<()> {
        env.assign(&target.name, value).map_err(|slot| {
            let message = match slot {
                Slot::Uninitialized => format!("Cannot access '{}' before initialization", target.name),
                _ => format!("{} is not defined", target.name),
            };
            runtime(RuntimeKind::ReferenceError, target.span, message)
        })
    }

    fn eval(&mut self, e: &Expr, env: &Rc<Scope>) -> Eval<Value> {
        match &e.kind {
            ExprKind::Number(n) => Ok(Value::Number(*n)),
            ExprKind::Str(s) => Ok(Value::Str(s.clone())),
            ExprKind::Bool(b) => Ok(Value::Bool(*b)),
            ExprKind::Ident(name) => self.read(name, e.span, env),
            ExprKind::Paren(inner) => self.eval(inner, env),
            ExprKind::Member { object, property } => Ok(member(&object.name, &property.name)),
            ExprKind::Unary { op, operand } => {
                let v = self.eval(operand, env)?;
                if self.strict() {
                    checks::unary(*op, &v).map_err(|f| check_error(f, e.span))
                } else {
                    Ok(match op {
                        UnaryOp::Neg => Value::Number(-self.to_number(&v)),
                        UnaryOp::Not => Value::Bool(!v.to_boolean()),
                    })
                }
            }
            ExprKind::Binary { op: BinaryOp::And, left, right } => {
                let l = self.eval(left, env)?;
                if l.to_boolean() {
                    self.eval(right, env)
                } else {
                    Ok(l)
                }
            }
            ExprKind::Binary { op: BinaryOp::Or, left, right } => {
                let l = self.eval(left, env)?;
                if l.to_boolean() {
                    Ok(l)
                } else {
                    self.eval(right, env)
                }
            }
            ExprKind::Binary { op, left, right } => {
                let l = self.eval(left, env)?;
                let r = self.eval(right, env)?;
                self.binary(*op, &l, &r, e.span)
            }
            ExprKind::Assign { op, target, value } => {
                let v = match op.binary() {
                    None => self.eval(value, env)?,
                    Some(bin) => {
                        let current = self.read(&target.name, target.span, env)?;
                        let rhs = self.eval(value, env)?;
                        self.binary(bin, &current, &rhs, e.span)?
                    }
                };
                self.write(target, v.clone(), env)?;
                Ok(v)
            }
            ExprKind::Update { op, prefix, target } => {
                let current = self.read(&target.name, target.span, env)?;
                let (old, new) = if self.strict() {
                    (current.clone(), checks::update(*op, &current).map_err(|f| check_error(f, e.span))?)
                } else {
                    let n = self.to_number(&current);
                    let delta = if *op == UpdateOp::Inc { 1.0 } else { -1.0 };
                    (Value::Number(n), Value::Number(n + delta))
                };
                self.write(target, new.clone(), env)?;
                Ok(if *prefix { new } else { old })
            }
            ExprKind::Call { callee, args } => {
                let f = self.eval(callee, env)?;
                let mut values = Vec::with_capacity(args.len());
                for a in args {
                    values.push(self.eval(a, env)?);
                }
                match f {
                    Value::Function(func) => self.call(&func, values, e.span, self.strict()),
                    other => Err(not_callable(&other, e.span)),
                }
            }
        }
    }

    fn binary(&mut self, op: BinaryOp, l: &Value, r: &Value, span: SourceSpan) -> Eval<Value> {
        if self.strict() {
            return checks::binary(op, l, r).map_err(|f| check_error(f, span));
        }
        let prim = |v: &Value| self.to_primitive(v);
        Ok(match op {
            BinaryOp::Add => ops::add(&prim(l), &prim(r)),
            BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod => {
                let (a, b) = (ops::to_number(&prim(l)), ops::to_number(&prim(r)));
                Value::Number(ops::arithmetic(op, a, b))
            }
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                Value::Bool(ops::relational(op, &prim(l), &prim(r)))
            }
            BinaryOp::LooseEq => Value::Bool(ops::loose_eq(l, r, &prim)),
            BinaryOp::LooseNe => Value::Bool(!ops::loose_eq(l, r, &prim)),
            BinaryOp::StrictEq => Value::Bool(l.strict_eq(r)),
            BinaryOp::StrictNe => Value::Bool(!l.strict_eq(r)),
            BinaryOp::And | BinaryOp::Or => unreachable!("short-circuit operators are evaluated lazily"),
        })
    }

    fn to_primitive(&self, v: &Value) -> Value {
        match v {
            Value::Function(f) => Value::Str(Rc::from(self.function_text(f))),
            other => other.clone(),
        }
    }

    fn to_number(&self, v: &Value) -> f64 {
        ops::to_number(&self.to_primitive(v))
    }

    /// What `String(f)` gives: the function's source text.
    fn function_text(&self, f: &Function) -> String {
        match f {
            Function::Builtin(b) => format!("function {}() {{ [native code] }}", b.short_name()),
            Function::User(c) => {
                let span = c.decl.span;
                match &self.source {
                    Some(lines) if !span.is_synthetic() => slice(lines, span).unwrap_or_else(|| print_function(&c.decl)),
                    _ => print_function(&c.decl),
                }
            }
        }
    }

    // ---- calls ----

    fn call(&mut self, f: &Function, args: Vec<Value>, span: SourceSpan, check_arity: bool) -> Eval<Value> {
        match f {
            Function::User(closure) => self.invoke(closure, args, span),
            Function::Builtin(b) => self.call_builtin(*b, args, span, check_arity),
        }
    }

    fn invoke(&mut self, closure: &Rc<Closure>, args: Vec<Value>, span: SourceSpan) -> Eval<Value> {
        let decl = &closure.decl;
        if self.frames.len() >= MAX_CALL_DEPTH {
            return Err(runtime(RuntimeKind::StackOverflow, span, "Maximum call stack size exceeded"));
        }
        if self.strict() {
            checks::arity(&decl.name.name, decl.params.len(), args.len()).map_err(|f| check_error(f, span))?;
        }
        let scope = Scope::child(&closure.env);
        let mut args = args.into_iter();
        let argc = args.len();
        for p in &decl.params {
            scope.declare(p.name.clone(), Some(args.next().unwrap_or(Value::Undefined)));
        }
        self.frames.push(Frame { argc, call_span: span });
        let result = self.exec_body(&decl.body, &scope);
        self.frames.pop();
        Ok(match result? {
            Flow::Return(v) => v,
            Flow::Normal => Value::Undefined,
        })
    }

    fn call_builtin(&mut self, b: Builtin, args: Vec<Value>, span: SourceSpan, check_arity: bool) -> Eval<Value> {
        match b {
            Builtin::Log => {
                let line = args.iter().map(Value::log_format).collect::<Vec<_>>().join(" ");
                self.print(line);
                Ok(Value::Undefined)
            }
            Builtin::Robot(i) => {
                if check_arity {
                    let expected = CATALOG[i].3.len();
                    checks::arity(&b.qualified_name(), expected, args.len()).map_err(|f| check_error(f, span))?;
                }
                self.robot_call(CATALOG[i].0, &args, span)
            }
            Builtin::Intrinsic(i) => self.intrinsic(i, args),
        }
    }

    fn robot_call(&mut self, name: &str, args: &[Value], span: SourceSpan) -> Eval<Value> {
        if request::is_sense(name) {
            let snap = self.port.snapshot();
            return request::sense(name, snap.as_ref(), &self.session)
                .map(Value::Number)
                .map_err(|e| api_error(e, span));
        }
        let snap = if name == "setRobotId" { None } else { self.port.snapshot() };
        let req = request::to_request(name, args, &mut self.session, snap.as_ref()).map_err(|e| api_error(e, span))?;
        let robot_id = req.robot_id;
        if self.stop.is_stopped() {
            return Err(Halt::Stopped);
        }
        let reply = self.port.dispatch(req, &self.stop).ok_or(Halt::Stopped)?;
        match reply.result {
            Ok(Completion::Done) | Ok(Completion::GaveUp) => {
                if name == "setRobotId" {
                    self.session.robot_id = Some(robot_id);
                }
                Ok(Value::Undefined)
            }
            Err(IoFailure::Rejected { code, message }) => Err(runtime(
                RuntimeKind::Robot,
                span,
                format!("The safety guard refused robot.{name}: {message} ({code})."),
            )),
            Err(IoFailure::TransportTimeout) => Err(runtime(
                RuntimeKind::Transport,
                span,
                format!("robot.{name} got no answer from the robot."),
            )),
            Err(IoFailure::Disconnected(why)) => {
                Err(runtime(RuntimeKind::Transport, span, format!("Lost the connection to the robot: {why}.")))
            }
        }
    }

    /// The check functions that instrumented programs call.
    fn intrinsic(&mut self, which: Intrinsic, args: Vec<Value>) -> Eval<Value> {
        let file = self.file_id;
        let span_at = |args: &[Value], i: usize| -> SourceSpan {
            match args.get(i) {
                Some(Value::Str(s)) => SourceSpan::decode(s, file).unwrap_or(SourceSpan::SYNTHETIC),
                _ => SourceSpan::SYNTHETIC,
            }
        };
        let arg = |i: usize| args.get(i).cloned().unwrap_or(Value::Undefined);
        let binary = |op: BinaryOp| {
            checks::binary(op, &arg(0), &arg(1)).map_err(|f| check_error(f, span_at(&args, 2)))
        };
        match which {
            Intrinsic::Read => {
                let name = match arg(1) {
                    Value::Str(s) => s,
                    _ => Rc::from("?"),
                };
                checks::read(&arg(0), &name).map_err(|f| check_error(f, span_at(&args, 2)))?;
                Ok(arg(0))
            }
            Intrinsic::Add => binary(BinaryOp::Add),
            Intrinsic::Sub => binary(BinaryOp::Sub),
            Intrinsic::Mul => binary(BinaryOp::Mul),
            Intrinsic::Div => binary(BinaryOp::Div),
            Intrinsic::Mod => binary(BinaryOp::Mod),
            Intrinsic::Lt => binary(BinaryOp::Lt),
            Intrinsic::Le => binary(BinaryOp::Le),
            Intrinsic::Gt => binary(BinaryOp::Gt),
            Intrinsic::Ge => binary(BinaryOp::Ge),
            Intrinsic::LooseEq => binary(BinaryOp::LooseEq),
            Intrinsic::LooseNe => binary(BinaryOp::LooseNe),
            Intrinsic::Neg | Intrinsic::Not => {
                let op = if which == Intrinsic::Neg { UnaryOp::Neg } else { UnaryOp::Not };
                checks::unary(op, &arg(0)).map_err(|f| check_error(f, span_at(&args, 1)))
            }
            Intrinsic::Inc | Intrinsic::Dec => {
                let op = if which == Intrinsic::Inc { UpdateOp::Inc } else { UpdateOp::Dec };
                checks::update(op, &arg(0)).map_err(|f| check_error(f, span_at(&args, 1)))
            }
            Intrinsic::Cond | Intrinsic::AssignCond => checks::condition(&arg(0), which == Intrinsic::AssignCond)
                .map(Value::Bool)
                .map_err(|f| check_error(f, span_at(&args, 1))),
            Intrinsic::CheckArity => {
                let Some(frame) = self.frames.last() else { return Ok(Value::Undefined) };
                let name = match arg(0) {
                    Value::Str(s) => s,
                    _ => Rc::from("?"),
                };
                let expected = arg(1).as_number().unwrap_or(0.0) as usize;
                checks::arity(&name, expected, frame.argc).map_err(|f| check_error(f, frame.call_span))?;
                Ok(Value::Undefined)
            }
            Intrinsic::Call => {
                let span = span_at(&args, 1);
                let mut args = args.into_iter();
                let callee = args.next().unwrap_or(Value::Undefined);
                let rest: Vec<Value> = args.skip(1).collect();
                match callee {
                    Value::Function(f) => self.call(&f, rest, span, true),
                    other => Err(not_callable(&other, span)),
                }
            }
        }
    }
}

impl Drop for Interpreter<'_> {
    fn drop(&mut self) {
        // Closures hold their defining scope, so globals form cycles.
        self.globals.clear();
    }
}

/// `robot.x` and `console.log` as values.
fn member(object: &str, property: &str) -> Value {
    match (object, property) {
        ("console", "log") => Value::Function(Function::Builtin(Builtin::Log)),
        ("robot", name) => match catalog_index(name) {
            Some(i) => Value::Function(Function::Builtin(Builtin::Robot(i))),
            None => Value::Undefined,
        },
        _ => Value::Undefined,
    }
}

fn slice(lines: &[Vec<char>], span: SourceSpan) -> Option<String> {
    let (sl, sc, el, ec) =
        (span.start_line as usize, span.start_col as usize, span.end_line as usize, span.end_col as usize);
    if sl == 0 || el < sl || el > lines.len() {
        return None;
    }
    let mut out = String::new();
    for l in sl..=el {
        let line = &lines[l - 1];
        let from = if l == sl { sc - 1 } else { 0 };
        let to = if l == el { (ec - 1).min(line.len()) } else { line.len() };
        if from > to {
            return None;
        }
        out.extend(&line[from..to]);
        if l != el {
            out.push('\n');
        }
    }
    Some(out)
}
