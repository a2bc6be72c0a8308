use std::rc::Rc;

use thiserror::Error;

use super::arity::ArityTable;
use super::intrinsics::Intrinsic;
use super::scope::{resolve, Resolution};
use crate::syntax::*;

#[derive(Debug, Error, PartialEq)]
pub enum InstrumentError {
    #[error("the program is already instrumented")]
    AlreadyInstrumented,
}

/// Rewrites `ast` so that every checked operation calls a runtime check
/// function carrying the original location, and prints the result.
///
/// Reads are wrapped only for variables that could hold `undefined`;
/// member accesses are fully resolved by the static check and stay as they
/// are, as do calls to `console.log`.
pub fn instrument(ast: &Ast, arities: &ArityTable) -> Result<String, InstrumentError> {
    let body = instrument_ast(ast, arities)?;
    let printed = print(&Ast { body, span: ast.span, instrumented: true }, PrintOptions { span_directives: true });
    Ok(format!("{INSTRUMENTED_MARKER}\n{printed}"))
}

fn instrument_ast(ast: &Ast, _arities: &ArityTable) -> Result<Vec<Stmt>, InstrumentError> {
    if ast.instrumented {
        return Err(InstrumentError::AlreadyInstrumented);
    }
    let res = resolve(ast);
    let rw = Rewriter { res: &res };
    Ok(ast.body.iter().map(|s| rw.stmt(s)).collect())
}

/// The check inserted at the start of `decl`'s body.
pub fn function_arity_prologue(decl: &FunctionDecl) -> Stmt {
    let call = intrinsic_call(
        Intrinsic::CheckArity,
        vec![string(&decl.name.name), Expr::new(ExprKind::Number(decl.params.len() as f64), SourceSpan::SYNTHETIC)],
    );
    Stmt { kind: StmtKind::Expr(call), span: SourceSpan::SYNTHETIC }
}

fn string(s: &str) -> Expr {
    Expr::new(ExprKind::Str(Rc::from(s)), SourceSpan::SYNTHETIC)
}

fn span_arg(span: SourceSpan) -> Expr {
    string(&span.encode())
}

fn intrinsic_call(which: Intrinsic, args: Vec<Expr>) -> Expr {
    let callee = Expr::new(ExprKind::Ident(Rc::from(which.name())), SourceSpan::SYNTHETIC);
    Expr::new(ExprKind::Call { callee: Box::new(callee), args }, SourceSpan::SYNTHETIC)
}

struct Rewriter<'a> {
    res: &'a Resolution,
}

impl Rewriter<'_> {
    fn stmt(&self, s: &Stmt) -> Stmt {
        let kind = match &s.kind {
            StmtKind::Let { name, init } => StmtKind::Let { name: name.clone(), init: init.as_ref().map(|e| self.expr(e)) },
            StmtKind::Expr(e) => StmtKind::Expr(self.expr(e)),
            StmtKind::If { cond, then_branch, else_branch } => StmtKind::If {
                cond: self.condition(cond),
                then_branch: Box::new(self.stmt(then_branch)),
                else_branch: else_branch.as_ref().map(|e| Box::new(self.stmt(e))),
            },
            StmtKind::While { cond, body } => {
                StmtKind::While { cond: self.condition(cond), body: Box::new(self.stmt(body)) }
            }
            StmtKind::For { init, test, update, body } => StmtKind::For {
                init: init.as_ref().map(|i| Box::new(self.stmt(i))),
                test: test.as_ref().map(|t| self.condition(t)),
                update: update.as_ref().map(|u| self.expr(u)),
                body: Box::new(self.stmt(body)),
            },
            StmtKind::Function(f) => {
                let mut body = vec![function_arity_prologue(f)];
                body.extend(f.body.iter().map(|s| self.stmt(s)));
                StmtKind::Function(Rc::new(FunctionDecl {
                    name: f.name.clone(),
                    params: f.params.clone(),
                    body,
                    span: f.span,
                }))
            }
            StmtKind::Return(e) => StmtKind::Return(e.as_ref().map(|e| self.expr(e))),
            StmtKind::Block(b) => StmtKind::Block(b.iter().map(|s| self.stmt(s)).collect()),
            StmtKind::Empty => StmtKind::Empty,
        };
        Stmt { kind, span: s.span }
    }

    fn condition(&self, cond: &Expr) -> Expr {
        let which = if matches!(cond.peel().kind, ExprKind::Assign { .. }) {
            Intrinsic::AssignCond
        } else {
            Intrinsic::Cond
        };
        intrinsic_call(which, vec![self.expr(cond), span_arg(cond.span)])
    }

    /// A read of `name` at `span`, checked if the variable may be unset.
    fn read(&self, name: &Rc<str>, span: SourceSpan, maybe_undefined: bool) -> Expr {
        let ident = Expr::new(ExprKind::Ident(name.clone()), span);
        if maybe_undefined {
            intrinsic_call(Intrinsic::Read, vec![ident, string(name), span_arg(span)])
        } else {
            ident
        }
    }

    fn expr(&self, e: &Expr) -> Expr {
        match &e.kind {
            ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Member { .. } => e.clone(),
            ExprKind::Ident(name) => {
                let maybe = self.res.of_expr(e).is_some_and(|b| b.maybe_undefined);
                self.read(name, e.span, maybe)
            }
            ExprKind::Paren(inner) => Expr::new(ExprKind::Paren(Box::new(self.expr(inner))), e.span),
            ExprKind::Unary { op, operand } => {
                let which = match op {
                    UnaryOp::Neg => Intrinsic::Neg,
                    UnaryOp::Not => Intrinsic::Not,
                };
                intrinsic_call(which, vec![self.expr(operand), span_arg(e.span)])
            }
            ExprKind::Binary { op, left, right } => {
                let (l, r) = (self.expr(left), self.expr(right));
                match binary_intrinsic(*op) {
                    Some(which) => intrinsic_call(which, vec![l, r, span_arg(e.span)]),
                    None => Expr::new(ExprKind::Binary { op: *op, left: Box::new(l), right: Box::new(r) }, e.span),
                }
            }
            ExprKind::Assign { op, target, value } => {
                let value = self.expr(value);
                let value = match op.binary() {
                    None => value,
                    Some(bin) => {
                        let current = self.target_read(target);
                        intrinsic_call(binary_intrinsic(bin).unwrap(), vec![current, value, span_arg(e.span)])
                    }
                };
                Expr::new(ExprKind::Assign { op: AssignOp::Assign, target: target.clone(), value: Box::new(value) }, e.span)
            }
            ExprKind::Update { op, target, .. } => {
                let which = if *op == UpdateOp::Inc { Intrinsic::Inc } else { Intrinsic::Dec };
                let value = intrinsic_call(which, vec![self.target_read(target), span_arg(e.span)]);
                Expr::new(ExprKind::Assign { op: AssignOp::Assign, target: target.clone(), value: Box::new(value) }, e.span)
            }
            ExprKind::Call { callee, args } => {
                let args: Vec<Expr> = args.iter().map(|a| self.expr(a)).collect();
                if is_console_log(callee) {
                    return Expr::new(ExprKind::Call { callee: callee.clone(), args }, e.span);
                }
                let mut all = vec![self.expr(callee), span_arg(e.span)];
                all.extend(args);
                intrinsic_call(Intrinsic::Call, all)
            }
        }
    }

    fn target_read(&self, target: &Ident) -> Expr {
        let maybe = self.res.of_ident(target).is_some_and(|b| b.maybe_undefined);
        self.read(&target.name, target.span, maybe)
    }
}

fn is_console_log(callee: &Expr) -> bool {
    matches!(&callee.kind, ExprKind::Member { object, property } if &*object.name == "console" && &*property.name == "log")
}

fn binary_intrinsic(op: BinaryOp) -> Option<Intrinsic> {
    Some(match op {
        BinaryOp::Add => Intrinsic::Add,
        BinaryOp::Sub => Intrinsic::Sub,
        BinaryOp::Mul => Intrinsic::Mul,
        BinaryOp::Div => Intrinsic::Div,
        BinaryOp::Mod => Intrinsic::Mod,
        BinaryOp::Lt => Intrinsic::Lt,
        BinaryOp::Le => Intrinsic::Le,
        BinaryOp::Gt => Intrinsic::Gt,
        BinaryOp::Ge => Intrinsic::Ge,
        BinaryOp::LooseEq => Intrinsic::LooseEq,
        BinaryOp::LooseNe => Intrinsic::LooseNe,
        BinaryOp::StrictEq | BinaryOp::StrictNe | BinaryOp::And | BinaryOp::Or => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(src: &str) -> String {
        instrument(&parse_source(src, 0).unwrap(), &ArityTable::standard()).unwrap()
    }

    #[test]
    fn greater_than_routes_through_check() {
        let out = inst("let x = 1; let y = 2; let z = x > y;");
        assert!(out.contains("__checkedGT(/*@1:31-1:32*/x, /*@1:35-1:36*/y, \"1:31-1:36\")"), "{out}");
    }

    #[test]
    fn multiplication_routes_through_check() {
        let out = inst("let z = 'x' * 2;");
        assert!(out.contains("__checkedMul(\"x\", 2, \"1:9-1:16\")"), "{out}");
    }

    #[test]
    fn nothing_to_check_only_adds_prelude() {
        let src = "console.log(\"hi\");\n";
        let out = inst(src);
        assert_eq!(out, format!("{INSTRUMENTED_MARKER}\n{src}"));
    }

    #[test]
    fn output_reparses_and_is_marked() {
        let out = inst(
            "let a; function f(p, q) { return p + q; } if (a = f(1, 2)) { a += 1; } \
             for (let i = 0; i < 3; i++) { robot.moveTo(i, -i, 0); } while (!(a >= 2)) { a--; }",
        );
        let ast = parse_source(&out, 0).unwrap_or_else(|d| panic!("{out}\n{d:?}"));
        assert!(ast.instrumented);
        assert!(out.contains("__checkArity(\"f\", 2);"));
        assert!(out.contains("__checkedAssignCond("));
        assert!(out.contains("__checkedRead(/*@1:62-1:63*/a, \"a\", \"1:62-1:63\")"), "{out}");
        assert_eq!(instrument(&ast, &ArityTable::standard()), Err(InstrumentError::AlreadyInstrumented));
    }

    #[test]
    fn prologue_names_function() {
        let ast = parse_source("function f(a, b) {}", 0).unwrap();
        let StmtKind::Function(f) = &ast.body[0].kind else { panic!() };
        let p = function_arity_prologue(f);
        let text = print(&Ast { body: vec![p], span: SourceSpan::SYNTHETIC, instrumented: true }, PrintOptions::default());
        assert_eq!(text, "__checkArity(\"f\", 2);\n");
    }
}
