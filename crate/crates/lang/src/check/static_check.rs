use super::arity::ArityTable;
use super::messages;
use super::scope::{resolve, Resolution};
use crate::diagnostic::{CheckCategory, Diagnostic, StaticKind};
use crate::syntax::*;

/// Prefix of names reserved for inserted check code.
pub const RESERVED_PREFIX: &str = "__";

/// Reports every problem detectable without running the program, sorted
/// by position.
pub fn static_check(ast: &Ast, arities: &ArityTable) -> Vec<Diagnostic> {
    let res = resolve(ast);
    let mut c = Checker { res: &res, arities, out: Vec::new() };
    for (name, span) in &res.unresolved {
        if !name.starts_with(RESERVED_PREFIX) {
            c.out.push(Diagnostic::static_kind(
                StaticKind::UndeclaredName,
                *span,
                format!("\"{name}\" is not declared. Declare it with let before using it."),
            ));
        }
    }
    c.stmts(&ast.body);
    c.out.sort_by_key(|d| (d.span.start(), d.span.end()));
    c.out
}

struct Checker<'a> {
    res: &'a Resolution,
    arities: &'a ArityTable,
    out: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn reserved(&mut self, id: &Ident) {
        if id.name.starts_with(RESERVED_PREFIX) {
            self.out.push(Diagnostic::static_kind(
                StaticKind::ReservedName,
                id.span,
                format!("Names starting with \"{RESERVED_PREFIX}\" are reserved; rename \"{}\".", id.name),
            ));
        }
    }

    fn stmts(&mut self, stmts: &[Stmt]) {
        for s in stmts {
            self.stmt(s);
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Let { name, init } => {
                self.reserved(name);
                if let Some(e) = init {
                    self.expr(e);
                }
            }
            StmtKind::Expr(e) => self.expr(e),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr(cond);
                self.stmt(then_branch);
                if let Some(e) = else_branch {
                    self.stmt(e);
                }
            }
            StmtKind::While { cond, body } => {
                self.expr(cond);
                self.stmt(body);
            }
            StmtKind::For { init, test, update, body } => {
                if let Some(i) = init {
                    self.stmt(i);
                }
                if let Some(t) = test {
                    self.expr(t);
                }
                if let Some(u) = update {
                    self.expr(u);
                }
                self.stmt(body);
            }
            StmtKind::Function(f) => {
                self.reserved(&f.name);
                for p in &f.params {
                    self.reserved(p);
                }
                self.stmts(&f.body);
            }
            StmtKind::Return(Some(e)) => self.expr(e),
            StmtKind::Block(b) => self.stmts(b),
            StmtKind::Return(None) | StmtKind::Empty => {}
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Ident(name) if name.starts_with(RESERVED_PREFIX) => {
                self.reserved(&Ident { name: name.clone(), span: e.span })
            }
            ExprKind::Binary { op, left, right } => {
                if matches!(op, BinaryOp::LooseEq | BinaryOp::LooseNe) {
                    self.out.push(Diagnostic::static_check(
                        CheckCategory::LooseComparison,
                        e.span,
                        messages::loose_comparison(*op),
                    ));
                } else if op.is_ordering() && (non_number_literal(left) || non_number_literal(right)) {
                    self.out.push(Diagnostic::static_check(CheckCategory::OpTypeMismatch, e.span, messages::ordering(*op)));
                }
                self.expr(left);
                self.expr(right);
            }
            ExprKind::Member { object, property } => self.member(object, property),
            ExprKind::Call { callee, args } => {
                self.call_arity(e, callee, args.len());
                self.expr(callee);
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::Assign { target, value, .. } => {
                self.reserved(target);
                self.expr(value);
            }
            ExprKind::Update { target, .. } => self.reserved(target),
            ExprKind::Unary { operand, .. } => self.expr(operand),
            ExprKind::Paren(inner) => self.expr(inner),
            _ => {}
        }
    }

    fn member(&mut self, object: &Ident, property: &Ident) {
        if self.arities.member(&object.name, &property.name).is_none() {
            self.out.push(Diagnostic::static_check(
                CheckCategory::MissingMember,
                property.span,
                messages::missing_member(&object.name, &property.name),
            ));
        }
    }

    fn call_arity(&mut self, call: &Expr, callee: &Expr, got: usize) {
        let (name, expected) = match &callee.kind {
            ExprKind::Member { object, property } => match self.arities.member(&object.name, &property.name) {
                Some(Some(n)) => (property.name.to_string(), n),
                _ => return,
            },
            ExprKind::Ident(name) => match self.res.of_expr(callee).and_then(|b| b.fixed_function()) {
                Some(f) => (name.to_string(), f.params.len()),
                None => return,
            },
            _ => return,
        };
        if expected != got {
            self.out.push(Diagnostic::static_check(
                CheckCategory::ArityMismatch,
                call.span,
                messages::arity(&name, expected, got),
            ));
        }
    }
}

fn non_number_literal(e: &Expr) -> bool {
    matches!(e.peel().kind, ExprKind::Str(_) | ExprKind::Bool(_))
}
