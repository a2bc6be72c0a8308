use std::collections::HashSet;
use std::rc::Rc;

use super::ast::*;
use super::lexer::tokenize;
use super::span::{FileId, SourceSpan};
use super::token::{Token, TokenKind};
use crate::diagnostic::{Diagnostic, SyntaxKind};

/// Identifiers that may appear only as the receiver of a member access.
pub const NAMESPACES: &[&str] = &["robot", "console"];

const MAX_DIAGNOSTICS: usize = 50;

struct Bail;

type PResult<T> = Result<T, Bail>;

#[derive(Clone, Copy, PartialEq)]
enum Position {
    /// Program top level or directly inside braces.
    Declarative,
    /// Body of `if`, `else`, `while` or `for` without braces.
    Nested,
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    file: FileId,
    diags: Vec<Diagnostic>,
    scopes: Vec<HashSet<Rc<str>>>,
    fn_depth: usize,
}

/// Tokenizes and parses in one go; a lexical error yields a single
/// diagnostic.
pub fn parse_source(source: &str, file: FileId) -> Result<Ast, Vec<Diagnostic>> {
    let tokens = tokenize(source, file).map_err(|d| vec![d])?;
    parse(&tokens)
}

/// Pure syntax check shared by the CLI, the IDE bridge and the corpus
/// analyzer.
pub fn check_syntax(source: &str) -> Result<(), Vec<Diagnostic>> {
    parse_source(source, 0).map(|_| ())
}

pub fn parse(tokens: &[Token]) -> Result<Ast, Vec<Diagnostic>> {
    let file = tokens.first().map_or(0, |t| t.span.file_id);
    let mut p = Parser { tokens, pos: 0, file, diags: Vec::new(), scopes: vec![HashSet::new()], fn_depth: 0 };
    let instrumented = p.at(&TokenKind::Prelude);
    if instrumented {
        p.pos += 1;
    }
    let start = p.peek().span;
    let body = p.statements_until_eof();
    let end = p.peek().span;
    if p.diags.is_empty() {
        let span = SourceSpan::new(file, (1, 1), end.end()).to(start);
        Ok(Ast { body, span, instrumented })
    } else {
        Err(p.diags)
    }
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        let i = self.pos.min(self.tokens.len() - 1);
        &self.tokens[i]
    }

    fn peek_kind(&self) -> &'t TokenKind {
        &self.peek().kind
    }

    fn at(&self, kind: &TokenKind) -> bool {
        self.peek_kind() == kind
    }

    fn bump(&mut self) -> &'t Token {
        let t = self.peek();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn prev_span(&self) -> SourceSpan {
        if self.pos == 0 {
            self.peek().span
        } else {
            self.tokens[self.pos - 1].span
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&mut self, kind: SyntaxKind, span: SourceSpan, message: impl Into<String>) -> Bail {
        if self.diags.len() < MAX_DIAGNOSTICS {
            self.diags.push(Diagnostic::syntax(kind, span, message));
        }
        Bail
    }

    /// Reports the current token as unexpected. Tokens from outside the
    /// subset get a "not part of RoboJS" explanation.
    fn unexpected(&mut self, expected: &str) -> Bail {
        let tok = self.peek();
        if let Some(msg) = not_in_subset_message(&tok.kind) {
            return self.error(SyntaxKind::NotInSubset, tok.span, msg);
        }
        let kind = if tok.kind.is_bracket() { SyntaxKind::MismatchedBracket } else { SyntaxKind::UnexpectedToken };
        self.error(kind, tok.span, format!("Expected {expected} but found {}.", tok.kind))
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<&'t Token> {
        if self.at(&kind) {
            return Ok(self.bump());
        }
        if kind == TokenKind::Semi && !self.peek().kind.is_bracket() && not_in_subset_message(self.peek_kind()).is_none() {
            let end = self.prev_span().end();
            let span = SourceSpan::new(self.file, end, end);
            return Err(self.error(
                SyntaxKind::UnexpectedToken,
                span,
                format!("Missing `;` before {}.", self.peek_kind()),
            ));
        }
        Err(self.unexpected(&format!("`{}`", kind.text())))
    }

    fn expect_close(&mut self, kind: TokenKind, open: SourceSpan) -> PResult<&'t Token> {
        if self.at(&kind) {
            return Ok(self.bump());
        }
        let tok = self.peek();
        if let Some(msg) = not_in_subset_message(&tok.kind) {
            return Err(self.error(SyntaxKind::NotInSubset, tok.span, msg));
        }
        let open_text = if kind == TokenKind::RParen { "(" } else { "{" };
        Err(self.error(
            SyntaxKind::MismatchedBracket,
            tok.span,
            format!("Expected `{}` to close the `{open_text}` at {open}, but found {}.", kind.text(), tok.kind),
        ))
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek_kind() {
            TokenKind::Ident(name) => {
                let span = self.bump().span;
                Ok(Ident { name: name.clone(), span })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// Skips to a plausible statement start after an error.
    fn synchronize(&mut self) {
        let mut depth = 0usize;
        let start = self.pos;
        loop {
            match self.peek_kind() {
                TokenKind::Eof => return,
                TokenKind::Semi if depth == 0 => {
                    self.bump();
                    return;
                }
                TokenKind::LBrace => {
                    depth += 1;
                    self.bump();
                }
                TokenKind::RBrace => {
                    if depth == 0 {
                        return;
                    }
                    depth -= 1;
                    self.bump();
                    if depth == 0 {
                        if self.at(&TokenKind::Else) {
                            self.bump();
                            continue;
                        }
                        return;
                    }
                }
                TokenKind::Let | TokenKind::If | TokenKind::While | TokenKind::For | TokenKind::Function | TokenKind::Return
                    if depth == 0 && self.pos > start =>
                {
                    return
                }
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn declare(&mut self, id: &Ident) -> PResult<()> {
        if NAMESPACES.contains(&&*id.name) {
            return Err(self.error(
                SyntaxKind::Redeclaration,
                id.span,
                format!("`{}` is already defined by RoboJS and cannot be redeclared.", id.name),
            ));
        }
        let scope = self.scopes.last_mut().unwrap();
        if !scope.insert(id.name.clone()) {
            return Err(self.error(
                SyntaxKind::Redeclaration,
                id.span,
                format!("Illegal redeclaration of `{}`; it is already declared in this scope.", id.name),
            ));
        }
        Ok(())
    }

    fn statements_until_eof(&mut self) -> Vec<Stmt> {
        let mut out = Vec::new();
        while !self.at(&TokenKind::Eof) {
            self.statement_recovering(&mut out);
        }
        out
    }

    fn statement_recovering(&mut self, out: &mut Vec<Stmt>) {
        let before = self.pos;
        match self.statement(Position::Declarative) {
            Ok(s) => out.push(s),
            Err(Bail) => {
                self.synchronize();
                if self.pos == before {
                    self.bump();
                }
            }
        }
    }

    fn block_body(&mut self, open: SourceSpan) -> PResult<(Vec<Stmt>, SourceSpan)> {
        let mut out = Vec::new();
        loop {
            match self.peek_kind() {
                TokenKind::RBrace => {
                    let close = self.bump().span;
                    return Ok((out, open.to(close)));
                }
                TokenKind::Eof => {
                    let span = self.peek().span;
                    return Err(self.error(
                        SyntaxKind::MismatchedBracket,
                        span,
                        format!("The `{{` at {open} is never closed with `}}`."),
                    ));
                }
                _ => self.statement_recovering(&mut out),
            }
        }
    }

    fn block(&mut self) -> PResult<Stmt> {
        let open = self.expect(TokenKind::LBrace)?.span;
        self.scopes.push(HashSet::new());
        let result = self.block_body(open);
        self.scopes.pop();
        let (body, span) = result?;
        Ok(Stmt { kind: StmtKind::Block(body), span })
    }

    fn statement(&mut self, position: Position) -> PResult<Stmt> {
        let start = self.peek().span;
        match self.peek_kind() {
            TokenKind::Let => {
                if position == Position::Nested {
                    return Err(self.error(
                        SyntaxKind::MisplacedStatement,
                        start,
                        "A `let` declaration here needs its own block; wrap it in `{ }`.",
                    ));
                }
                let stmt = self.let_decl()?;
                let end = self.expect(TokenKind::Semi)?.span;
                Ok(Stmt { span: start.to(end), ..stmt })
            }
            TokenKind::Function => {
                if position == Position::Nested {
                    return Err(self.error(
                        SyntaxKind::MisplacedStatement,
                        start,
                        "A function declaration here needs its own block; wrap it in `{ }`.",
                    ));
                }
                self.function_decl()
            }
            TokenKind::If => self.if_stmt(),
            TokenKind::While => {
                self.bump();
                let cond = self.condition()?;
                let body = self.statement(Position::Nested)?;
                let span = start.to(body.span);
                Ok(Stmt { kind: StmtKind::While { cond, body: Box::new(body) }, span })
            }
            TokenKind::For => self.for_stmt(),
            TokenKind::Return => {
                self.bump();
                if self.fn_depth == 0 {
                    return Err(self.error(
                        SyntaxKind::MisplacedStatement,
                        start,
                        "`return` can only be used inside a function.",
                    ));
                }
                let value = if self.at(&TokenKind::Semi) { None } else { Some(self.expression()?) };
                if let Some(v) = &value {
                    self.reject_nested_updates(v, false)?;
                }
                let end = self.expect(TokenKind::Semi)?.span;
                Ok(Stmt { kind: StmtKind::Return(value), span: start.to(end) })
            }
            TokenKind::LBrace => self.block(),
            TokenKind::Semi => {
                self.bump();
                Ok(Stmt { kind: StmtKind::Empty, span: start })
            }
            TokenKind::Else => Err(self.error(
                SyntaxKind::UnexpectedToken,
                start,
                "This `else` does not follow an `if` statement.",
            )),
            _ => {
                let expr = self.expression()?;
                self.reject_nested_updates(&expr, true)?;
                let end = self.expect(TokenKind::Semi)?.span;
                Ok(Stmt { span: start.to(end), kind: StmtKind::Expr(expr) })
            }
        }
    }

    fn let_decl(&mut self) -> PResult<Stmt> {
        let start = self.expect(TokenKind::Let)?.span;
        let name = self.ident("a variable name")?;
        let init = if self.eat(&TokenKind::Assign) {
            let e = self.expression()?;
            self.reject_nested_updates(&e, false)?;
            Some(e)
        } else {
            None
        };
        if self.at(&TokenKind::Comma) {
            let span = self.peek().span;
            return Err(self.error(SyntaxKind::NotInSubset, span, "Declaring several variables in one `let` is not part of RoboJS; use one `let` per variable."));
        }
        self.declare(&name)?;
        let end = self.prev_span();
        Ok(Stmt { kind: StmtKind::Let { name, init }, span: start.to(end) })
    }

    fn condition(&mut self) -> PResult<Expr> {
        let open = self.expect(TokenKind::LParen)?.span;
        let cond = self.expression()?;
        self.reject_nested_updates(&cond, false)?;
        self.expect_close(TokenKind::RParen, open)?;
        Ok(cond)
    }

    fn if_stmt(&mut self) -> PResult<Stmt> {
        let start = self.expect(TokenKind::If)?.span;
        let cond = self.condition()?;
        let then_branch = self.statement(Position::Nested)?;
        let mut span = start.to(then_branch.span);
        let else_branch = if self.at(&TokenKind::Else) {
            let else_span = self.bump().span;
            let stmt = if self.at(&TokenKind::LParen) {
                // Report the classic `else (...)` slip, then read on as if it
                // were `else if` so later errors are still found.
                self.error(
                    SyntaxKind::ElseWithCondition,
                    else_span,
                    "`else` cannot have a condition. Did you mean `else if (...)`?",
                );
                let cond = self.condition()?;
                let body = self.statement(Position::Nested)?;
                let span = else_span.to(body.span);
                Stmt { kind: StmtKind::If { cond, then_branch: Box::new(body), else_branch: None }, span }
            } else {
                self.statement(Position::Nested)?
            };
            span = span.to(stmt.span);
            Some(Box::new(stmt))
        } else {
            None
        };
        Ok(Stmt { kind: StmtKind::If { cond, then_branch: Box::new(then_branch), else_branch }, span })
    }

    fn for_stmt(&mut self) -> PResult<Stmt> {
        let start = self.expect(TokenKind::For)?.span;
        let open = self.expect(TokenKind::LParen)?.span;
        self.scopes.push(HashSet::new());
        let result = self.for_rest(start, open);
        self.scopes.pop();
        result
    }

    fn for_rest(&mut self, start: SourceSpan, open: SourceSpan) -> PResult<Stmt> {
        let init = match self.peek_kind() {
            TokenKind::Semi => None,
            TokenKind::Let => Some(Box::new(self.let_decl()?)),
            _ => {
                let e = self.expression()?;
                self.reject_nested_updates(&e, true)?;
                Some(Box::new(Stmt { span: e.span, kind: StmtKind::Expr(e) }))
            }
        };
        self.expect(TokenKind::Semi)?;
        let test = if self.at(&TokenKind::Semi) {
            None
        } else {
            let e = self.expression()?;
            self.reject_nested_updates(&e, false)?;
            Some(e)
        };
        self.expect(TokenKind::Semi)?;
        let update = if self.at(&TokenKind::RParen) {
            None
        } else {
            let e = self.expression()?;
            self.reject_nested_updates(&e, true)?;
            Some(e)
        };
        self.expect_close(TokenKind::RParen, open)?;
        let body = self.statement(Position::Nested)?;
        let span = start.to(body.span);
        Ok(Stmt { kind: StmtKind::For { init, test, update, body: Box::new(body) }, span })
    }

    fn function_decl(&mut self) -> PResult<Stmt> {
        let start = self.expect(TokenKind::Function)?.span;
        let name = self.ident("a function name")?;
        self.declare(&name)?;
        let open = self.expect(TokenKind::LParen)?.span;
        self.scopes.push(HashSet::new());
        self.fn_depth += 1;
        let result = self.function_rest(start, name, open);
        self.fn_depth -= 1;
        self.scopes.pop();
        result
    }

    fn function_rest(&mut self, start: SourceSpan, name: Ident, open: SourceSpan) -> PResult<Stmt> {
        let mut params = Vec::new();
        if !self.at(&TokenKind::RParen) {
            loop {
                let p = self.ident("a parameter name")?;
                self.declare(&p)?;
                params.push(p);
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect_close(TokenKind::RParen, open)?;
        let body_open = self.expect(TokenKind::LBrace)?.span;
        let (body, body_span) = self.block_body(body_open)?;
        let span = start.to(body_span);
        let decl = Rc::new(FunctionDecl { name, params, body, span });
        Ok(Stmt { kind: StmtKind::Function(decl), span })
    }

    /// `++`/`--` are admitted only as a whole statement or `for` update.
    fn reject_nested_updates(&mut self, expr: &Expr, top_allowed: bool) -> PResult<()> {
        if let ExprKind::Update { .. } = &expr.kind {
            if top_allowed {
                return Ok(());
            }
        }
        let mut found = None;
        find_update(expr, &mut found);
        match found {
            Some((span, op)) => {
                let text = if op == UpdateOp::Inc { "++" } else { "--" };
                Err(self.error(
                    SyntaxKind::NotInSubset,
                    span,
                    format!("`{text}` can only be used as a statement on its own, like `i{text};`; using its value is not part of RoboJS."),
                ))
            }
            None => Ok(()),
        }
    }

    fn expression(&mut self) -> PResult<Expr> {
        let lhs = self.binary(1)?;
        let op = match self.peek_kind() {
            TokenKind::Assign => AssignOp::Assign,
            TokenKind::PlusAssign => AssignOp::Add,
            TokenKind::MinusAssign => AssignOp::Sub,
            TokenKind::StarAssign => AssignOp::Mul,
            TokenKind::SlashAssign => AssignOp::Div,
            TokenKind::PercentAssign => AssignOp::Mod,
            _ => return Ok(lhs),
        };
        let op_span = self.bump().span;
        let ExprKind::Ident(name) = &lhs.kind else {
            return Err(self.error(
                SyntaxKind::InvalidAssignmentTarget,
                lhs.span.to(op_span),
                format!("Only a variable can be on the left of `{}`.", op.symbol()),
            ));
        };
        let target = Ident { name: name.clone(), span: lhs.span };
        let value = self.expression()?;
        let span = lhs.span.to(value.span);
        Ok(Expr::new(ExprKind::Assign { op, target, value: Box::new(value) }, span))
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut left = self.unary()?;
        loop {
            let Some(op) = binary_op(self.peek_kind()) else { break };
            if op.precedence() < min_prec {
                break;
            }
            self.bump();
            let right = self.binary(op.precedence() + 1)?;
            let span = left.span.to(right.span);
            left = Expr::new(ExprKind::Binary { op, left: Box::new(left), right: Box::new(right) }, span);
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let start = self.peek().span;
        let op = match self.peek_kind() {
            TokenKind::Minus => UnaryOp::Neg,
            TokenKind::Bang => UnaryOp::Not,
            TokenKind::Plus => {
                return Err(self.error(
                    SyntaxKind::NotInSubset,
                    start,
                    "Unary `+` is not part of RoboJS.",
                ))
            }
            TokenKind::PlusPlus | TokenKind::MinusMinus => {
                let op = if self.bump().kind == TokenKind::PlusPlus { UpdateOp::Inc } else { UpdateOp::Dec };
                let operand = self.unary()?;
                let ExprKind::Ident(name) = &operand.kind else {
                    return Err(self.error(
                        SyntaxKind::InvalidAssignmentTarget,
                        start.to(operand.span),
                        "Only a variable can be incremented or decremented.",
                    ));
                };
                let target = Ident { name: name.clone(), span: operand.span };
                return Ok(Expr::new(ExprKind::Update { op, prefix: true, target }, start.to(operand.span)));
            }
            _ => return self.postfix(),
        };
        self.bump();
        let operand = self.unary()?;
        let span = start.to(operand.span);
        Ok(Expr::new(ExprKind::Unary { op, operand: Box::new(operand) }, span))
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.primary()?;
        loop {
            match self.peek_kind() {
                TokenKind::LParen => {
                    let open = self.bump().span;
                    let mut args = Vec::new();
                    if !self.at(&TokenKind::RParen) {
                        loop {
                            let arg = self.expression()?;
                            self.reject_nested_updates(&arg, false)?;
                            args.push(arg);
                            if !self.eat(&TokenKind::Comma) {
                                break;
                            }
                        }
                    }
                    let close = self.expect_close(TokenKind::RParen, open)?.span;
                    let span = expr.span.to(close);
                    expr = Expr::new(ExprKind::Call { callee: Box::new(expr), args }, span);
                }
                TokenKind::Dot => {
                    let span = self.peek().span;
                    return Err(self.error(
                        SyntaxKind::NotInSubset,
                        span,
                        "Only `robot` and `console` have members; objects are not part of RoboJS.",
                    ));
                }
                TokenKind::PlusPlus | TokenKind::MinusMinus => {
                    let ExprKind::Ident(name) = &expr.kind else { break };
                    let tok = self.bump();
                    let op = if tok.kind == TokenKind::PlusPlus { UpdateOp::Inc } else { UpdateOp::Dec };
                    let target = Ident { name: name.clone(), span: expr.span };
                    let span = expr.span.to(tok.span);
                    expr = Expr::new(ExprKind::Update { op, prefix: false, target }, span);
                }
                _ => break,
            }
        }
        Ok(expr)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let tok = self.peek();
        let span = tok.span;
        let kind = match &tok.kind {
            TokenKind::Number(n) => ExprKind::Number(*n),
            TokenKind::Str(s) => ExprKind::Str(s.clone()),
            TokenKind::True => ExprKind::Bool(true),
            TokenKind::False => ExprKind::Bool(false),
            TokenKind::Ident(name) if NAMESPACES.contains(&&**name) => {
                let object = Ident { name: name.clone(), span };
                self.bump();
                if !self.at(&TokenKind::Dot) {
                    return Err(self.error(
                        SyntaxKind::NotInSubset,
                        span,
                        format!("`{name}` is not a value in RoboJS; use one of its commands, as in `{name}.name(...)`."),
                    ));
                }
                self.bump();
                let property = self.ident("a command name after `.`")?;
                let span = span.to(property.span);
                return Ok(Expr::new(ExprKind::Member { object, property }, span));
            }
            TokenKind::Ident(name) => ExprKind::Ident(name.clone()),
            TokenKind::LParen => {
                self.bump();
                if self.at(&TokenKind::RParen) {
                    let span = self.peek().span;
                    return Err(self.error(
                        SyntaxKind::MismatchedBracket,
                        span,
                        "Empty parentheses `()` need an expression inside.",
                    ));
                }
                let inner = self.expression()?;
                let close = self.expect_close(TokenKind::RParen, span)?.span;
                return Ok(Expr::new(ExprKind::Paren(Box::new(inner)), span.to(close)));
            }
            TokenKind::Function => {
                return Err(self.error(
                    SyntaxKind::NotInSubset,
                    span,
                    "Function expressions are not part of RoboJS; declare the function by name instead.",
                ))
            }
            TokenKind::LBrace => {
                return Err(self.error(SyntaxKind::NotInSubset, span, "Objects are not part of RoboJS."))
            }
            _ => return Err(self.unexpected("an expression")),
        };
        self.bump();
        Ok(Expr::new(kind, span))
    }
}

fn binary_op(kind: &TokenKind) -> Option<BinaryOp> {
    Some(match kind {
        TokenKind::Plus => BinaryOp::Add,
        TokenKind::Minus => BinaryOp::Sub,
        TokenKind::Star => BinaryOp::Mul,
        TokenKind::Slash => BinaryOp::Div,
        TokenKind::Percent => BinaryOp::Mod,
        TokenKind::Lt => BinaryOp::Lt,
        TokenKind::Le => BinaryOp::Le,
        TokenKind::Gt => BinaryOp::Gt,
        TokenKind::Ge => BinaryOp::Ge,
        TokenKind::EqEq => BinaryOp::LooseEq,
        TokenKind::NotEq => BinaryOp::LooseNe,
        TokenKind::EqEqEq => BinaryOp::StrictEq,
        TokenKind::NotEqEq => BinaryOp::StrictNe,
        TokenKind::AndAnd => BinaryOp::And,
        TokenKind::OrOr => BinaryOp::Or,
        _ => return None,
    })
}

fn not_in_subset_message(kind: &TokenKind) -> Option<String> {
    Some(match kind {
        TokenKind::Reserved(w) => format!("`{w}` is not part of RoboJS."),
        TokenKind::Unsupported("[") | TokenKind::Unsupported("]") => "Arrays are not part of RoboJS.".into(),
        TokenKind::Unsupported("=>") => "Arrow functions are not part of RoboJS.".into(),
        TokenKind::Unsupported("?") | TokenKind::Unsupported(":") => {
            "The `? :` conditional operator is not part of RoboJS; use `if`.".into()
        }
        TokenKind::Unsupported("`") => "Template strings are not part of RoboJS.".into(),
        TokenKind::Unsupported(op) => format!("The `{op}` operator is not part of RoboJS."),
        _ => return None,
    })
}

fn find_update(expr: &Expr, found: &mut Option<(SourceSpan, UpdateOp)>) {
    if found.is_some() {
        return;
    }
    match &expr.kind {
        ExprKind::Update { op, .. } => *found = Some((expr.span, *op)),
        ExprKind::Unary { operand, .. } => find_update(operand, found),
        ExprKind::Binary { left, right, .. } => {
            find_update(left, found);
            find_update(right, found);
        }
        ExprKind::Assign { value, .. } => find_update(value, found),
        ExprKind::Call { callee, args } => {
            find_update(callee, found);
            args.iter().for_each(|a| find_update(a, found));
        }
        ExprKind::Paren(inner) => find_update(inner, found),
        ExprKind::Number(_) | ExprKind::Str(_) | ExprKind::Bool(_) | ExprKind::Ident(_) | ExprKind::Member { .. } => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostic::Category;

    fn errs(src: &str) -> Vec<Diagnostic> {
        parse_source(src, 0).unwrap_err()
    }

    fn kind(d: &Diagnostic) -> SyntaxKind {
        match d.category {
            Category::Syntax(k) => k,
            other => panic!("not syntax: {other:?}"),
        }
    }

    #[test]
    fn while_program() {
        let ast = parse_source("while (true) { robot.turnLeft(); }", 0).unwrap();
        assert_eq!(ast.body.len(), 1);
        assert!(matches!(ast.body[0].kind, StmtKind::While { .. }));
    }

    #[test]
    fn empty_file_ok() {
        assert!(check_syntax("").is_ok());
        assert!(check_syntax("  // only a comment\n").is_ok());
    }

    #[test]
    fn else_with_condition_hint() {
        let d = errs("if (x > 0) { } else (y > 0) { }");
        assert_eq!(d.len(), 1);
        assert_eq!(kind(&d[0]), SyntaxKind::ElseWithCondition);
        assert!(d[0].message.contains("else if"));
    }

    #[test]
    fn let_redeclaration() {
        let d = errs("let a = 1; let a = 2;");
        assert_eq!(d.len(), 1);
        assert_eq!(kind(&d[0]), SyntaxKind::Redeclaration);
        assert!(d[0].message.contains("redeclaration"));
        assert_eq!(d[0].span.start_col, 16);
        assert!(check_syntax("let a = 1; { let a = 2; }").is_ok());
        assert!(check_syntax("function f(a) { let a = 1; }").is_err());
        assert!(check_syntax("let f = 1; function f() {}").is_err());
    }

    #[test]
    fn two_paren_errors_two_diagnostics() {
        let src = "let x = 1;\nrobot.moveTo(1, 2, 3;\nconsole.log(x);\nrobot.turnTo(90));\nx = 2;\n";
        let d = errs(src);
        assert_eq!(d.len(), 2, "{d:?}");
        assert!(d.iter().all(|d| kind(d) == SyntaxKind::MismatchedBracket));
        assert_eq!(d[0].span.start_line, 2);
        assert_eq!(d[1].span.start_line, 4);
    }

    #[test]
    fn unclosed_block_and_paren() {
        let d = errs("if (x > 0 {\n  robot.kick(1);\n}\nlet y = 2;");
        assert_eq!(d.len(), 1, "{d:?}");
        let d = errs("function f() {\n  robot.kick(1);\n");
        assert_eq!(kind(&d[0]), SyntaxKind::MismatchedBracket);
    }

    #[test]
    fn missing_semicolon() {
        let d = errs("let x = 1\nlet y = 2;");
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].span.start_line, d[0].span.start_col), (1, 10));
    }

    #[test]
    fn subset_rejections() {
        for src in [
            "var x = 1;",
            "const x = 1;",
            "let a = [1, 2];",
            "let o = {};",
            "let f = (a) => a;",
            "let f = function () {};",
            "let y = x ? 1 : 2;",
            "let n = null;",
            "while (true) { break; }",
            "let s = this;",
            "let v = x.y;",
            "let r = robot;",
            "let z = x++ + 1;",
            "let a = 1, b = 2;",
            "let p = +x;",
        ] {
            let d = errs(src);
            assert_eq!(kind(&d[0]), SyntaxKind::NotInSubset, "{src}: {d:?}");
            assert!(d[0].message.contains("RoboJS"), "{src}: {}", d[0].message);
        }
    }

    #[test]
    fn misplaced_statements() {
        assert!(check_syntax("return 1;").is_err());
        assert!(check_syntax("if (x) let y = 1;").is_err());
        assert!(check_syntax("1 = x;").is_err());
        assert!(check_syntax("function f() { return; }").is_ok());
    }

    #[test]
    fn updates_as_statements() {
        assert!(check_syntax("let i = 0; i++; --i; for (let j = 0; j < 3; j++) { }").is_ok());
    }

    #[test]
    fn precedence_and_spans() {
        let ast = parse_source("let v = 1 + 2 * 3 > 4 && !b || c;", 0).unwrap();
        let StmtKind::Let { init: Some(e), .. } = &ast.body[0].kind else { panic!() };
        let ExprKind::Binary { op: BinaryOp::Or, left, .. } = &e.kind else { panic!("{e:?}") };
        let ExprKind::Binary { op: BinaryOp::And, left, .. } = &left.kind else { panic!() };
        let ExprKind::Binary { op: BinaryOp::Gt, left, .. } = &left.kind else { panic!() };
        let ExprKind::Binary { op: BinaryOp::Add, .. } = &left.kind else { panic!() };
        assert_eq!(e.span, SourceSpan::new(0, (1, 9), (1, 33)));
        assert_eq!(ast.body[0].span, SourceSpan::new(0, (1, 1), (1, 34)));
    }

    #[test]
    fn assignment_is_right_associative_expression() {
        let ast = parse_source("let a; let b; a = b = 3; if (a = 0) { }", 0).unwrap();
        let StmtKind::Expr(e) = &ast.body[2].kind else { panic!() };
        let ExprKind::Assign { value, .. } = &e.kind else { panic!() };
        assert!(matches!(value.kind, ExprKind::Assign { .. }));
    }
}
