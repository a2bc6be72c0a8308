use std::rc::Rc;

use super::span::SourceSpan;

#[derive(Debug, Clone, PartialEq)]
pub struct Ast {
    pub body: Vec<Stmt>,
    pub span: SourceSpan,
    /// Set when the source began with the instrumentation marker.
    pub instrumented: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: Rc<str>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Let { name: Ident, init: Option<Expr> },
    Expr(Expr),
    If { cond: Expr, then_branch: Box<Stmt>, else_branch: Option<Box<Stmt>> },
    While { cond: Expr, body: Box<Stmt> },
    For {
        init: Option<Box<Stmt>>,
        test: Option<Expr>,
        update: Option<Expr>,
        body: Box<Stmt>,
    },
    Function(Rc<FunctionDecl>),
    Return(Option<Expr>),
    Block(Vec<Stmt>),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDecl {
    pub name: Ident,
    pub params: Vec<Ident>,
    pub body: Vec<Stmt>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    LooseEq,
    LooseNe,
    StrictEq,
    StrictNe,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Mod => "%",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::LooseEq => "==",
            BinaryOp::LooseNe => "!=",
            BinaryOp::StrictEq => "===",
            BinaryOp::StrictNe => "!==",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    /// Binding strength; higher binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::LooseEq | BinaryOp::LooseNe | BinaryOp::StrictEq | BinaryOp::StrictNe => 3,
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => 4,
            BinaryOp::Add | BinaryOp::Sub => 5,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod => 6,
        }
    }

    pub fn is_ordering(self) -> bool {
        matches!(self, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge)
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssignOp {
    Assign,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl AssignOp {
    pub fn symbol(self) -> &'static str {
        match self {
            AssignOp::Assign => "=",
            AssignOp::Add => "+=",
            AssignOp::Sub => "-=",
            AssignOp::Mul => "*=",
            AssignOp::Div => "/=",
            AssignOp::Mod => "%=",
        }
    }

    pub fn binary(self) -> Option<BinaryOp> {
        match self {
            AssignOp::Assign => None,
            AssignOp::Add => Some(BinaryOp::Add),
            AssignOp::Sub => Some(BinaryOp::Sub),
            AssignOp::Mul => Some(BinaryOp::Mul),
            AssignOp::Div => Some(BinaryOp::Div),
            AssignOp::Mod => Some(BinaryOp::Mod),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateOp {
    Inc,
    Dec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    Str(Rc<str>),
    Bool(bool),
    Ident(Rc<str>),
    Unary { op: UnaryOp, operand: Box<Expr> },
    Binary { op: BinaryOp, left: Box<Expr>, right: Box<Expr> },
    Assign { op: AssignOp, target: Ident, value: Box<Expr> },
    Update { op: UpdateOp, prefix: bool, target: Ident },
    Call { callee: Box<Expr>, args: Vec<Expr> },
    /// `receiver.property`, receiver is always a builtin namespace.
    Member { object: Ident, property: Ident },
    Paren(Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Self { kind, span }
    }

    /// Strips any number of enclosing parentheses.
    pub fn peel(&self) -> &Expr {
        match &self.kind {
            ExprKind::Paren(inner) => inner.peel(),
            _ => self,
        }
    }
}

/// Resets every span to [`SourceSpan::SYNTHETIC`], for layout-insensitive
/// comparison of trees.
pub fn strip_spans(ast: &Ast) -> Ast {
    Ast {
        body: ast.body.iter().map(strip_stmt).collect(),
        span: SourceSpan::SYNTHETIC,
        instrumented: ast.instrumented,
    }
}

fn strip_ident(id: &Ident) -> Ident {
    Ident { name: id.name.clone(), span: SourceSpan::SYNTHETIC }
}

fn strip_stmt(s: &Stmt) -> Stmt {
    let kind = match &s.kind {
        StmtKind::Let { name, init } => StmtKind::Let { name: strip_ident(name), init: init.as_ref().map(strip_expr) },
        StmtKind::Expr(e) => StmtKind::Expr(strip_expr(e)),
        StmtKind::If { cond, then_branch, else_branch } => StmtKind::If {
            cond: strip_expr(cond),
            then_branch: Box::new(strip_stmt(then_branch)),
            else_branch: else_branch.as_ref().map(|e| Box::new(strip_stmt(e))),
        },
        StmtKind::While { cond, body } => StmtKind::While { cond: strip_expr(cond), body: Box::new(strip_stmt(body)) },
        StmtKind::For { init, test, update, body } => StmtKind::For {
            init: init.as_ref().map(|s| Box::new(strip_stmt(s))),
            test: test.as_ref().map(strip_expr),
            update: update.as_ref().map(strip_expr),
            body: Box::new(strip_stmt(body)),
        },
        StmtKind::Function(f) => StmtKind::Function(Rc::new(FunctionDecl {
            name: strip_ident(&f.name),
            params: f.params.iter().map(strip_ident).collect(),
            body: f.body.iter().map(strip_stmt).collect(),
            span: SourceSpan::SYNTHETIC,
        })),
        StmtKind::Return(e) => StmtKind::Return(e.as_ref().map(strip_expr)),
        StmtKind::Block(b) => StmtKind::Block(b.iter().map(strip_stmt).collect()),
        StmtKind::Empty => StmtKind::Empty,
    };
    Stmt { kind, span: SourceSpan::SYNTHETIC }
}

fn strip_expr(e: &Expr) -> Expr {
    let kind = match &e.kind {
        ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Ident(_) => e.kind.clone(),
        ExprKind::Unary { op, operand } => ExprKind::Unary { op: *op, operand: Box::new(strip_expr(operand)) },
        ExprKind::Binary { op, left, right } => {
            ExprKind::Binary { op: *op, left: Box::new(strip_expr(left)), right: Box::new(strip_expr(right)) }
        }
        ExprKind::Assign { op, target, value } => {
            ExprKind::Assign { op: *op, target: strip_ident(target), value: Box::new(strip_expr(value)) }
        }
        ExprKind::Update { op, prefix, target } => ExprKind::Update { op: *op, prefix: *prefix, target: strip_ident(target) },
        ExprKind::Call { callee, args } => {
            ExprKind::Call { callee: Box::new(strip_expr(callee)), args: args.iter().map(strip_expr).collect() }
        }
        ExprKind::Member { object, property } => {
            ExprKind::Member { object: strip_ident(object), property: strip_ident(property) }
        }
        ExprKind::Paren(inner) => ExprKind::Paren(Box::new(strip_expr(inner))),
    };
    Expr { kind, span: SourceSpan::SYNTHETIC }
}
