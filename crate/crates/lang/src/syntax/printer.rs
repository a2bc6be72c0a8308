use super::ast::*;
use super::span::SourceSpan;
use crate::js::number_to_string;

#[derive(Debug, Clone, Copy, Default)]
pub struct PrintOptions {
    /// Prefix identifiers with `/*@L:C-L:C*/` so a re-parse of the output
    /// keeps the original locations.
    pub span_directives: bool,
}

/// Renders an AST as RoboJS source. Re-parsing the output yields the same
/// tree up to spans.
pub fn print(ast: &Ast, opts: PrintOptions) -> String {
    let mut p = Printer { out: String::new(), indent: 0, opts };
    for s in &ast.body {
        p.stmt(s);
    }
    p.out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut p = Printer { out: String::new(), indent: 0, opts: PrintOptions::default() };
    p.expr(expr, 0);
    p.out
}

/// Source form of one function, used when a function value is converted to
/// a string and the original text is unavailable.
pub fn print_function(decl: &FunctionDecl) -> String {
    let mut p = Printer { out: String::new(), indent: 0, opts: PrintOptions::default() };
    p.function(decl);
    p.out.trim_end().to_string()
}

struct Printer {
    out: String,
    indent: usize,
    opts: PrintOptions,
}

pub fn quote_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' || c == '\u{2028}' || c == '\u{2029}' => {
                out.push_str(&format!("\\u{:04x}", c as u32))
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn number_literal(n: f64) -> String {
    if n.is_infinite() {
        "1e999".to_string()
    } else {
        number_to_string(n)
    }
}

const PREC_ASSIGN: u8 = 0;
const PREC_UNARY: u8 = 7;
const PREC_POSTFIX: u8 = 8;

fn expr_prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Assign { .. } => PREC_ASSIGN,
        ExprKind::Binary { op, .. } => op.precedence(),
        ExprKind::Unary { .. } => PREC_UNARY,
        ExprKind::Update { prefix: true, .. } => PREC_UNARY,
        _ => PREC_POSTFIX,
    }
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn directive(&mut self, span: SourceSpan) {
        if self.opts.span_directives && !span.is_synthetic() {
            self.out.push_str("/*@");
            self.out.push_str(&span.encode());
            self.out.push_str("*/");
        }
    }

    fn ident(&mut self, id: &Ident) {
        self.directive(id.span);
        self.out.push_str(&id.name);
    }

    fn render<F: FnOnce(&mut Self)>(&mut self, f: F) -> String {
        let saved = std::mem::take(&mut self.out);
        f(self);
        std::mem::replace(&mut self.out, saved)
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Block(body) => {
                self.line("{");
                self.block_inner(body);
                self.line("}");
            }
            StmtKind::If { .. } => {
                let head = self.render(|p| p.if_chain(s));
                self.out.push_str(&head);
            }
            StmtKind::Function(f) => self.function(f),
            _ => {
                let text = self.render(|p| p.simple_stmt(s));
                self.line(&text);
            }
        }
    }

    fn block_inner(&mut self, body: &[Stmt]) {
        self.indent += 1;
        for s in body {
            self.stmt(s);
        }
        self.indent -= 1;
    }

    /// Prints `body` after a header line such as `while (c)`.
    fn nested(&mut self, header: String, body: &Stmt) {
        match &body.kind {
            StmtKind::Block(inner) => {
                self.line(&format!("{header} {{"));
                self.block_inner(inner);
                self.line("}");
            }
            _ => {
                self.line(&header);
                self.indent += 1;
                self.stmt(body);
                self.indent -= 1;
            }
        }
    }

    fn if_chain(&mut self, s: &Stmt) {
        let mut current = s;
        let mut prefix = String::from("if");
        loop {
            let StmtKind::If { cond, then_branch, else_branch } = &current.kind else { unreachable!() };
            let c = self.render(|p| p.expr(cond, 0));
            let header = format!("{prefix} ({c})");
            let StmtKind::Block(inner) = &then_branch.kind else {
                self.nested(header, then_branch);
                if let Some(e) = else_branch {
                    self.nested("else".to_string(), e);
                }
                return;
            };
            self.line(&format!("{header} {{"));
            self.block_inner(inner);
            match else_branch.as_deref() {
                None => {
                    self.line("}");
                    return;
                }
                Some(next @ Stmt { kind: StmtKind::If { .. }, .. }) => {
                    prefix = "} else if".to_string();
                    current = next;
                }
                Some(Stmt { kind: StmtKind::Block(inner), .. }) => {
                    self.line("} else {");
                    self.block_inner(inner);
                    self.line("}");
                    return;
                }
                Some(other) => {
                    self.line("}");
                    self.nested("else".to_string(), other);
                    return;
                }
            }
        }
    }

    fn function(&mut self, f: &FunctionDecl) {
        let name = self.render(|p| p.ident(&f.name));
        let params: Vec<String> = f.params.iter().map(|id| self.render(|p| p.ident(id))).collect();
        self.line(&format!("function {name}({}) {{", params.join(", ")));
        self.block_inner(&f.body);
        self.line("}");
    }

    fn simple_stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Let { .. } => {
                self.let_decl(s);
                self.out.push(';');
            }
            StmtKind::Expr(e) => {
                self.expr(e, 0);
                self.out.push(';');
            }
            StmtKind::Return(value) => {
                self.out.push_str("return");
                if let Some(v) = value {
                    self.out.push(' ');
                    self.expr(v, 0);
                }
                self.out.push(';');
            }
            StmtKind::Empty => self.out.push(';'),
            StmtKind::While { cond, body } => {
                let header = self.render(|p| {
                    p.out.push_str("while (");
                    p.expr(cond, 0);
                    p.out.push(')');
                });
                self.flush_nested(header, body);
            }
            StmtKind::For { init, test, update, body } => {
                let header = self.render(|p| {
                    p.out.push_str("for (");
                    match init.as_deref() {
                        Some(s @ Stmt { kind: StmtKind::Let { .. }, .. }) => p.let_decl(s),
                        Some(Stmt { kind: StmtKind::Expr(e), .. }) => p.expr(e, 0),
                        _ => {}
                    }
                    p.out.push(';');
                    if let Some(t) = test {
                        p.out.push(' ');
                        p.expr(t, 0);
                    }
                    p.out.push(';');
                    if let Some(u) = update {
                        p.out.push(' ');
                        p.expr(u, 0);
                    }
                    p.out.push(')');
                });
                self.flush_nested(header, body);
            }
            StmtKind::Block(_) | StmtKind::If { .. } | StmtKind::Function(_) => unreachable!(),
        }
    }

    /// Used from within `render`: emits the nested construct into the
    /// enclosing buffer without the trailing newline of the last line.
    fn flush_nested(&mut self, header: String, body: &Stmt) {
        let indent = self.indent;
        let text = self.render(|p| {
            p.indent = indent;
            p.nested(header, body);
        });
        let trimmed = text.trim_end_matches('\n');
        let prefix_len = 4 * indent;
        self.out.push_str(&trimmed[prefix_len.min(trimmed.len())..]);
    }

    fn let_decl(&mut self, s: &Stmt) {
        let StmtKind::Let { name, init } = &s.kind else { unreachable!() };
        self.out.push_str("let ");
        self.ident(name);
        if let Some(e) = init {
            self.out.push_str(" = ");
            self.expr(e, 0);
        }
    }

    /// Prints `e`, adding parentheses if it binds looser than `min`.
    fn expr(&mut self, e: &Expr, min: u8) {
        let needs = expr_prec(e) < min;
        if needs {
            self.out.push('(');
        }
        match &e.kind {
            ExprKind::Number(n) => self.out.push_str(&number_literal(*n)),
            ExprKind::Str(s) => self.out.push_str(&quote_string(s)),
            ExprKind::Bool(b) => self.out.push_str(if *b { "true" } else { "false" }),
            ExprKind::Ident(name) => {
                self.directive(e.span);
                self.out.push_str(name);
            }
            ExprKind::Unary { op, operand } => {
                let sym = match op {
                    UnaryOp::Neg => '-',
                    UnaryOp::Not => '!',
                };
                self.out.push(sym);
                let inner = self.render(|p| p.expr(operand, PREC_UNARY));
                if sym == '-' && inner.starts_with('-') {
                    self.out.push(' ');
                }
                self.out.push_str(&inner);
            }
            ExprKind::Binary { op, left, right } => {
                let prec = op.precedence();
                self.expr(left, prec);
                self.out.push(' ');
                self.out.push_str(op.symbol());
                self.out.push(' ');
                self.expr(right, prec + 1);
            }
            ExprKind::Assign { op, target, value } => {
                self.ident(target);
                self.out.push(' ');
                self.out.push_str(op.symbol());
                self.out.push(' ');
                self.expr(value, PREC_ASSIGN);
            }
            ExprKind::Update { op, prefix, target } => {
                let sym = if *op == UpdateOp::Inc { "++" } else { "--" };
                if *prefix {
                    self.out.push_str(sym);
                    self.ident(target);
                } else {
                    self.ident(target);
                    self.out.push_str(sym);
                }
            }
            ExprKind::Call { callee, args } => {
                self.expr(callee, PREC_POSTFIX);
                self.out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        self.out.push_str(", ");
                    }
                    self.expr(a, PREC_ASSIGN);
                }
                self.out.push(')');
            }
            ExprKind::Member { object, property } => {
                self.out.push_str(&object.name);
                self.out.push('.');
                self.out.push_str(&property.name);
            }
            ExprKind::Paren(inner) => {
                self.out.push('(');
                self.expr(inner, 0);
                self.out.push(')');
            }
        }
        if needs {
            self.out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_source;

    fn roundtrip(src: &str) -> String {
        let ast = parse_source(src, 0).unwrap();
        let printed = print(&ast, PrintOptions::default());
        let again = parse_source(&printed, 0).unwrap_or_else(|d| panic!("{printed}\n{d:?}"));
        assert_eq!(strip_spans(&ast), strip_spans(&again), "{printed}");
        printed
    }

    #[test]
    fn statements_roundtrip() {
        let out = roundtrip(
            "let x; let y = 'a\"b\\n'; function f(a, b) { return a + b * (2 - -x); }\n\
             if (x > 1) { y = 1; } else if (x === 2) y = 3; else { y -= 1; }\n\
             while (!(x <= 3) && y !== 4 || false) x++;\n\
             for (let i = 0; i < 10; i++) { --x; }\nfor (;;) { }\n;",
        );
        assert!(out.contains("} else if (x === 2)"));
    }

    #[test]
    fn nested_control_without_braces() {
        roundtrip("let a = 0; if (a) while (a) if (a) a = 1; else a = 2; else a = 3;");
        roundtrip("let a = 0; for (a = 0; a < 2; a += 1) if (a) a = 5;");
    }

    #[test]
    fn numbers_print_in_shortest_form() {
        let out = roundtrip("let a = 0.1; let b = 1e21; let c = 1.5e-7; let d = 123456789012;");
        assert!(out.contains("0.1;") && out.contains("1e+21") && out.contains("1.5e-7"));
    }

    #[test]
    fn directives_carry_identifier_spans() {
        let ast = parse_source("let x = 1;\n  x = x + 1;", 2).unwrap();
        let text = print(&ast, PrintOptions { span_directives: true });
        assert!(text.contains("/*@2:3-2:4*/x = /*@2:7-2:8*/x + 1;"), "{text}");
    }
}
