//! Name resolution shared by the static checker, the instrumenter and the
//! corpus rules.

use std::collections::HashMap;
use std::rc::Rc;

use crate::api::{manifest::CATALOG, ResultKind};
use crate::syntax::*;

pub type BindingId = usize;

#[derive(Debug, Clone)]
pub enum BindingKind {
    Let { initialized: bool },
    Param,
    Function(Rc<FunctionDecl>),
}

#[derive(Debug, Clone)]
pub struct Binding {
    pub name: Rc<str>,
    pub kind: BindingKind,
    pub span: SourceSpan,
    /// Target of at least one assignment or update.
    pub assigned: bool,
    /// Could hold `undefined` when read: declared without a value, a
    /// parameter, or assigned the result of a call.
    pub maybe_undefined: bool,
}

impl Binding {
    /// The declaration if this name always refers to the same function.
    pub fn fixed_function(&self) -> Option<&Rc<FunctionDecl>> {
        match &self.kind {
            BindingKind::Function(f) if !self.assigned => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Default)]
pub struct Resolution {
    pub bindings: Vec<Binding>,
    refs: HashMap<usize, BindingId>,
    /// Names used without any visible declaration, in source order.
    pub unresolved: Vec<(Rc<str>, SourceSpan)>,
}

impl Resolution {
    pub fn of_expr(&self, e: &Expr) -> Option<&Binding> {
        self.refs.get(&(e as *const Expr as usize)).map(|&id| &self.bindings[id])
    }

    pub fn of_ident(&self, id: &Ident) -> Option<&Binding> {
        self.refs.get(&(id as *const Ident as usize)).map(|&b| &self.bindings[b])
    }

    pub fn id_of_expr(&self, e: &Expr) -> Option<BindingId> {
        self.refs.get(&(e as *const Expr as usize)).copied()
    }
}

/// Whether evaluating `e` may produce `undefined` once every checked
/// operation has passed.
pub fn may_yield_undefined(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Call { callee, .. } => match &callee.kind {
            ExprKind::Member { object, property } if &*object.name == "robot" => !CATALOG
                .iter()
                .any(|row| row.0 == &*property.name && row.2 == ResultKind::Number),
            _ => true,
        },
        ExprKind::Assign { op: AssignOp::Assign, value, .. } => may_yield_undefined(value),
        ExprKind::Binary { op: BinaryOp::And | BinaryOp::Or, left, right } => {
            may_yield_undefined(left) || may_yield_undefined(right)
        }
        ExprKind::Paren(inner) => may_yield_undefined(inner),
        _ => false,
    }
}

/// Resolves every identifier occurrence in `ast`. Node identity is by
/// address, so the tree must not move while the result is in use.
pub fn resolve(ast: &Ast) -> Resolution {
    let mut r = Resolver { res: Resolution::default(), scopes: Vec::new() };
    r.block(&ast.body);
    r.res
}

struct Resolver {
    res: Resolution,
    scopes: Vec<HashMap<Rc<str>, BindingId>>,
}

impl Resolver {
    fn add(&mut self, name: &Ident, kind: BindingKind, maybe_undefined: bool) -> BindingId {
        let id = self.res.bindings.len();
        self.res.bindings.push(Binding {
            name: name.name.clone(),
            kind,
            span: name.span,
            assigned: false,
            maybe_undefined,
        });
        self.scopes.last_mut().unwrap().insert(name.name.clone(), id);
        id
    }

    fn lookup(&self, name: &str) -> Option<BindingId> {
        self.scopes.iter().rev().find_map(|s| s.get(name).copied())
    }

    fn hoist(&mut self, stmts: &[Stmt]) {
        for s in stmts {
            match &s.kind {
                StmtKind::Let { name, init } => {
                    self.add(name, BindingKind::Let { initialized: init.is_some() }, init.is_none());
                }
                StmtKind::Function(f) => {
                    self.add(&f.name, BindingKind::Function(f.clone()), false);
                }
                _ => {}
            }
        }
    }

    fn block(&mut self, stmts: &[Stmt]) {
        self.scopes.push(HashMap::new());
        self.hoist(stmts);
        for s in stmts {
            self.stmt(s);
        }
        self.scopes.pop();
    }

    fn nested(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Block(b) => self.block(b),
            _ => self.stmt(s),
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Let { name, init } => {
                if let Some(e) = init {
                    self.expr(e);
                    if may_yield_undefined(e) {
                        if let Some(id) = self.lookup(&name.name) {
                            self.res.bindings[id].maybe_undefined = true;
                        }
                    }
                }
            }
            StmtKind::Expr(e) => self.expr(e),
            StmtKind::If { cond, then_branch, else_branch } => {
                self.expr(cond);
                self.nested(then_branch);
                if let Some(e) = else_branch {
                    self.nested(e);
                }
            }
            StmtKind::While { cond, body } => {
                self.expr(cond);
                self.nested(body);
            }
            StmtKind::For { init, test, update, body } => {
                self.scopes.push(HashMap::new());
                if let Some(init) = init {
                    self.hoist(std::slice::from_ref(init));
                    self.stmt(init);
                }
                if let Some(t) = test {
                    self.expr(t);
                }
                if let Some(u) = update {
                    self.expr(u);
                }
                self.nested(body);
                self.scopes.pop();
            }
            StmtKind::Function(f) => {
                self.scopes.push(HashMap::new());
                for p in &f.params {
                    self.add(p, BindingKind::Param, true);
                }
                self.hoist(&f.body);
                for s in &f.body {
                    self.stmt(s);
                }
                self.scopes.pop();
            }
            StmtKind::Return(e) => {
                if let Some(e) = e {
                    self.expr(e);
                }
            }
            StmtKind::Block(b) => self.block(b),
            StmtKind::Empty => {}
        }
    }

    fn target(&mut self, target: &Ident, undefined_source: bool) {
        match self.lookup(&target.name) {
            Some(id) => {
                self.res.refs.insert(target as *const Ident as usize, id);
                let b = &mut self.res.bindings[id];
                b.assigned = true;
                b.maybe_undefined |= undefined_source;
            }
            None => self.res.unresolved.push((target.name.clone(), target.span)),
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Ident(name) => match self.lookup(name) {
                Some(id) => {
                    self.res.refs.insert(e as *const Expr as usize, id);
                }
                None => self.res.unresolved.push((name.clone(), e.span)),
            },
            ExprKind::Assign { op, target, value } => {
                self.expr(value);
                self.target(target, *op == AssignOp::Assign && may_yield_undefined(value));
            }
            ExprKind::Update { target, .. } => self.target(target, false),
            ExprKind::Call { callee, args } => {
                self.expr(callee);
                for a in args {
                    self.expr(a);
                }
            }
            ExprKind::Unary { operand, .. } => self.expr(operand),
            ExprKind::Binary { left, right, .. } => {
                self.expr(left);
                self.expr(right);
            }
            ExprKind::Paren(inner) => self.expr(inner),
            ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Member { .. } => {}
        }
    }
}
