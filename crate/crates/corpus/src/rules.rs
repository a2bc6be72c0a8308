//! Pattern rules for mistakes the checked language only reports while
//! running. Each rule fires only where checked execution, on reaching the
//! flagged site, is certain to stop with the same category: misses are
//! acceptable, false alarms are not.

use robojs_lang::check::scope::{resolve, Resolution};
use robojs_lang::check::ArityTable;
use robojs_lang::diagnostic::{CheckCategory, Diagnostic};
use robojs_lang::syntax::*;

/// Sites in `ast` that are sure to fail a dynamic check when reached.
pub fn pattern_sites(ast: &Ast, arities: &ArityTable) -> Vec<Diagnostic> {
    let res = resolve(ast);
    let mut r = Rules { res: &res, arities, out: Vec::new() };
    r.stmts(&ast.body);
    r.out.sort_by_key(|d| (d.span.start(), d.span.end()));
    r.out
}

struct Rules<'a> {
    res: &'a Resolution,
    arities: &'a ArityTable,
    out: Vec<Diagnostic>,
}

fn flag(category: CheckCategory, span: SourceSpan, what: &str) -> Diagnostic {
    Diagnostic::dynamic(category, span, what.to_string())
}

fn literal(e: &Expr) -> Option<&ExprKind> {
    let k = &e.peel().kind;
    matches!(k, ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_)).then_some(k)
}

fn is_str_or_bool(e: &Expr) -> bool {
    matches!(literal(e), Some(ExprKind::Str(_) | ExprKind::Bool(_)))
}

/// An arithmetic operation that fails whatever the other operand holds.
fn arithmetic_always_fails(op: BinaryOp, l: &Expr, r: &Expr) -> bool {
    use BinaryOp::*;
    match op {
        Sub | Mul | Div | Mod => is_str_or_bool(l) || is_str_or_bool(r),
        Add => {
            let bool_lit = |e: &Expr| matches!(literal(e), Some(ExprKind::Bool(_)));
            let mixed = matches!(
                (literal(l), literal(r)),
                (Some(ExprKind::Str(_)), Some(ExprKind::Number(_))) | (Some(ExprKind::Number(_)), Some(ExprKind::Str(_)))
            );
            bool_lit(l) || bool_lit(r) || mixed
        }
        _ => false,
    }
}

impl Rules<'_> {
    fn stmts(&mut self, stmts: &[Stmt]) {
        for (i, s) in stmts.iter().enumerate() {
            if let StmtKind::Let { name, init: None } = &s.kind {
                if let Some(span) = UninitRead::new(self.res, name.span).first_read(&stmts[i + 1..]) {
                    self.out.push(flag(CheckCategory::UninitializedVariable, span, "read before any assignment"));
                }
            }
            self.stmt(s);
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Let { init: Some(e), .. } | StmtKind::Expr(e) | StmtKind::Return(Some(e)) => self.expr(e),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.condition(cond);
                self.stmt(then_branch);
                if let Some(e) = else_branch {
                    self.stmt(e);
                }
            }
            StmtKind::While { cond, body } => {
                self.condition(cond);
                self.stmt(body);
            }
            StmtKind::For { init, test, update, body } => {
                if let Some(i) = init {
                    self.stmt(i);
                }
                if let Some(t) = test {
                    self.condition(t);
                }
                if let Some(u) = update {
                    self.expr(u);
                }
                self.stmt(body);
            }
            StmtKind::Function(f) => self.stmts(&f.body),
            StmtKind::Block(b) => self.stmts(b),
            StmtKind::Let { init: None, .. } | StmtKind::Return(None) | StmtKind::Empty => {}
        }
    }

    fn condition(&mut self, cond: &Expr) {
        match &cond.peel().kind {
            ExprKind::Number(_) | ExprKind::Str(_) => {
                self.out.push(flag(CheckCategory::NonBooleanCondition, cond.span, "condition is a non-boolean literal"));
            }
            ExprKind::Assign { op: AssignOp::Assign, value, .. }
                if matches!(literal(value), Some(ExprKind::Number(_) | ExprKind::Str(_))) =>
            {
                self.out.push(flag(CheckCategory::ConditionalAssignment, cond.span, "condition assigns a non-boolean literal"));
            }
            _ => {}
        }
        self.expr(cond);
    }

    /// A bare reference to a function, not a call of it.
    fn names_function(&self, e: &Expr) -> bool {
        match &e.peel().kind {
            ExprKind::Member { object, property } => self.arities.member(&object.name, &property.name).is_some(),
            ExprKind::Ident(_) => self.res.of_expr(e.peel()).is_some_and(|b| b.fixed_function().is_some()),
            _ => false,
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Binary { op, left, right } => {
                if arithmetic_always_fails(*op, left, right) {
                    self.out.push(flag(CheckCategory::OpTypeMismatch, e.span, "operand types can never match"));
                } else if op.is_ordering()
                    && (self.names_function(left) || self.names_function(right))
                    && !is_str_or_bool(left)
                    && !is_str_or_bool(right)
                {
                    self.out.push(flag(CheckCategory::FunctionComparedAsValue, e.span, "function compared without calling it"));
                }
                self.expr(left);
                self.expr(right);
            }
            ExprKind::Unary { op, operand } => {
                let fails = match (op, literal(operand)) {
                    (UnaryOp::Neg, Some(ExprKind::Str(_) | ExprKind::Bool(_))) => true,
                    (UnaryOp::Not, Some(ExprKind::Number(_) | ExprKind::Str(_))) => true,
                    _ => false,
                };
                if fails {
                    self.out.push(flag(CheckCategory::OpTypeMismatch, e.span, "operand type can never match"));
                }
                self.expr(operand);
            }
            ExprKind::Assign { value, .. } => self.expr(value),
            ExprKind::Call { callee, args } => {
                self.expr(callee);
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::Paren(inner) => self.expr(inner),
            _ => {}
        }
    }
}

enum Walk {
    Continue,
    Found(SourceSpan),
    /// Something may have given the variable a value, or control may leave.
    Stop,
}

/// Follows straight-line code after `let x;` looking for a read of `x`
/// that is certain to happen before anything could assign it.
struct UninitRead<'a> {
    res: &'a Resolution,
    decl: SourceSpan,
}

impl<'a> UninitRead<'a> {
    fn new(res: &'a Resolution, decl: SourceSpan) -> Self {
        Self { res, decl }
    }

    fn is_var(&self, e: &Expr) -> bool {
        matches!(e.kind, ExprKind::Ident(_)) && self.res.of_expr(e).is_some_and(|b| b.span == self.decl)
    }

    fn is_target(&self, id: &Ident) -> bool {
        self.res.of_ident(id).is_some_and(|b| b.span == self.decl)
    }

    fn first_read(&self, stmts: &[Stmt]) -> Option<SourceSpan> {
        match self.stmts(stmts) {
            Walk::Found(span) => Some(span),
            _ => None,
        }
    }

    fn stmts(&self, stmts: &[Stmt]) -> Walk {
        for s in stmts {
            match self.stmt(s) {
                Walk::Continue => {}
                done => return done,
            }
        }
        Walk::Continue
    }

    /// Code that runs only sometimes: harmless unless it touches the
    /// variable or calls out.
    fn maybe(&self, touches: bool) -> Walk {
        if touches {
            Walk::Stop
        } else {
            Walk::Continue
        }
    }

    fn stmt(&self, s: &Stmt) -> Walk {
        match &s.kind {
            StmtKind::Expr(e) | StmtKind::Let { init: Some(e), .. } => self.expr(e),
            StmtKind::Return(Some(e)) => match self.expr(e) {
                Walk::Found(span) => Walk::Found(span),
                _ => Walk::Stop,
            },
            StmtKind::Return(None) => Walk::Stop,
            StmtKind::Let { init: None, .. } | StmtKind::Empty | StmtKind::Function(_) => Walk::Continue,
            StmtKind::Block(b) => self.stmts(b),
            StmtKind::If { cond, then_branch, else_branch } => match self.expr(cond) {
                Walk::Continue => {
                    let touches = self.stmt_touches(then_branch) || else_branch.as_ref().is_some_and(|e| self.stmt_touches(e));
                    self.maybe(touches)
                }
                done => done,
            },
            StmtKind::While { cond, body } => match self.expr(cond) {
                Walk::Continue => self.maybe(self.stmt_touches(body)),
                done => done,
            },
            StmtKind::For { init, test, update, body } => {
                if let Some(i) = init {
                    match self.stmt(i) {
                        Walk::Continue => {}
                        done => return done,
                    }
                }
                if let Some(t) = test {
                    match self.expr(t) {
                        Walk::Continue => {}
                        done => return done,
                    }
                }
                self.maybe(self.stmt_touches(body) || update.as_ref().is_some_and(|u| self.expr_touches(u)))
            }
        }
    }

    /// Walks `e` in evaluation order.
    fn expr(&self, e: &Expr) -> Walk {
        match &e.kind {
            ExprKind::Ident(_) if self.is_var(e) => Walk::Found(e.span),
            ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Ident(_) | ExprKind::Member { .. } => {
                Walk::Continue
            }
            ExprKind::Paren(inner) | ExprKind::Unary { operand: inner, .. } => self.expr(inner),
            ExprKind::Binary { op: BinaryOp::And | BinaryOp::Or, left, right } => match self.expr(left) {
                Walk::Continue => self.maybe(self.expr_touches(right)),
                done => done,
            },
            ExprKind::Binary { left, right, .. } => match self.expr(left) {
                Walk::Continue => self.expr(right),
                done => done,
            },
            ExprKind::Assign { op, target, value } => {
                if *op != AssignOp::Assign && self.is_target(target) {
                    return Walk::Stop;
                }
                match self.expr(value) {
                    Walk::Continue if self.is_target(target) => Walk::Stop,
                    other => other,
                }
            }
            ExprKind::Update { target, .. } => {
                if self.is_target(target) {
                    Walk::Stop
                } else {
                    Walk::Continue
                }
            }
            ExprKind::Call { callee, args } => {
                let builtin = matches!(callee.peel().kind, ExprKind::Member { .. });
                if !builtin {
                    // Calling the variable itself, or anything a user wrote.
                    if self.is_var(callee.peel()) {
                        return Walk::Stop;
                    }
                }
                for a in args {
                    match self.expr(a) {
                        Walk::Continue => {}
                        done => return done,
                    }
                }
                if builtin {
                    Walk::Continue
                } else {
                    Walk::Stop
                }
            }
        }
    }

    fn stmt_touches(&self, s: &Stmt) -> bool {
        match &s.kind {
            StmtKind::Expr(e) | StmtKind::Let { init: Some(e), .. } | StmtKind::Return(Some(e)) => self.expr_touches(e),
            StmtKind::Let { init: None, .. } | StmtKind::Return(None) | StmtKind::Empty | StmtKind::Function(_) => false,
            StmtKind::Block(b) => b.iter().any(|s| self.stmt_touches(s)),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr_touches(cond) || self.stmt_touches(then_branch) || else_branch.as_ref().is_some_and(|e| self.stmt_touches(e))
            }
            StmtKind::While { cond, body } => self.expr_touches(cond) || self.stmt_touches(body),
            StmtKind::For { init, test, update, body } => {
                init.as_ref().is_some_and(|i| self.stmt_touches(i))
                    || test.as_ref().is_some_and(|t| self.expr_touches(t))
                    || update.as_ref().is_some_and(|u| self.expr_touches(u))
                    || self.stmt_touches(body)
            }
        }
    }

    /// Mentions the variable or calls user code.
    fn expr_touches(&self, e: &Expr) -> bool {
        match &e.kind {
            ExprKind::Ident(_) => self.is_var(e),
            ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Member { .. } => false,
            ExprKind::Paren(inner) | ExprKind::Unary { operand: inner, .. } => self.expr_touches(inner),
            ExprKind::Binary { left, right, .. } => self.expr_touches(left) || self.expr_touches(right),
            ExprKind::Assign { target, value, .. } => self.is_target(target) || self.expr_touches(value),
            ExprKind::Update { target, .. } => self.is_target(target),
            ExprKind::Call { callee, args } => {
                !matches!(callee.peel().kind, ExprKind::Member { .. }) || args.iter().any(|a| self.expr_touches(a))
            }
        }
    }
}
