use std::rc::Rc;

use super::span::{FileId, SourceSpan};
use super::token::{Token, TokenKind, KEYWORDS, RESERVED};
use crate::diagnostic::{Diagnostic, SyntaxKind};

/// First line of every instrumented file.
pub const INSTRUMENTED_MARKER: &str = "// robojs:instrumented";

const PUNCT: &[(&str, TokenKind)] = &[
    (">>>=", TokenKind::Unsupported(">>>=")),
    ("===", TokenKind::EqEqEq),
    ("!==", TokenKind::NotEqEq),
    ("**=", TokenKind::Unsupported("**=")),
    ("<<=", TokenKind::Unsupported("<<=")),
    (">>=", TokenKind::Unsupported(">>=")),
    (">>>", TokenKind::Unsupported(">>>")),
    ("...", TokenKind::Unsupported("...")),
    ("&&=", TokenKind::Unsupported("&&=")),
    ("||=", TokenKind::Unsupported("||=")),
    ("??=", TokenKind::Unsupported("??=")),
    ("==", TokenKind::EqEq),
    ("!=", TokenKind::NotEq),
    ("<=", TokenKind::Le),
    (">=", TokenKind::Ge),
    ("&&", TokenKind::AndAnd),
    ("||", TokenKind::OrOr),
    ("+=", TokenKind::PlusAssign),
    ("-=", TokenKind::MinusAssign),
    ("*=", TokenKind::StarAssign),
    ("/=", TokenKind::SlashAssign),
    ("%=", TokenKind::PercentAssign),
    ("++", TokenKind::PlusPlus),
    ("--", TokenKind::MinusMinus),
    ("=>", TokenKind::Unsupported("=>")),
    ("**", TokenKind::Unsupported("**")),
    ("<<", TokenKind::Unsupported("<<")),
    (">>", TokenKind::Unsupported(">>")),
    ("&=", TokenKind::Unsupported("&=")),
    ("|=", TokenKind::Unsupported("|=")),
    ("^=", TokenKind::Unsupported("^=")),
    ("?.", TokenKind::Unsupported("?.")),
    ("??", TokenKind::Unsupported("??")),
    ("(", TokenKind::LParen),
    (")", TokenKind::RParen),
    ("{", TokenKind::LBrace),
    ("}", TokenKind::RBrace),
    (",", TokenKind::Comma),
    (";", TokenKind::Semi),
    (".", TokenKind::Dot),
    ("+", TokenKind::Plus),
    ("-", TokenKind::Minus),
    ("*", TokenKind::Star),
    ("/", TokenKind::Slash),
    ("%", TokenKind::Percent),
    ("!", TokenKind::Bang),
    ("<", TokenKind::Lt),
    (">", TokenKind::Gt),
    ("=", TokenKind::Assign),
    ("[", TokenKind::Unsupported("[")),
    ("]", TokenKind::Unsupported("]")),
    ("?", TokenKind::Unsupported("?")),
    (":", TokenKind::Unsupported(":")),
    ("&", TokenKind::Unsupported("&")),
    ("|", TokenKind::Unsupported("|")),
    ("^", TokenKind::Unsupported("^")),
    ("~", TokenKind::Unsupported("~")),
    ("`", TokenKind::Unsupported("`")),
];

struct Lexer<'s> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
    file: FileId,
    directives: bool,
    pending: Option<SourceSpan>,
    _src: &'s str,
}

/// Splits `source` into tokens. Stops at the first lexical error.
pub fn tokenize(source: &str, file: FileId) -> Result<Vec<Token>, Diagnostic> {
    let instrumented = source
        .strip_prefix(INSTRUMENTED_MARKER)
        .is_some_and(|rest| rest.is_empty() || rest.starts_with('\n') || rest.starts_with("\r\n"));
    let mut lx = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        file,
        directives: instrumented,
        pending: None,
        _src: source,
    };
    let mut tokens = Vec::new();
    if instrumented {
        let span = SourceSpan::new(file, (1, 1), (1, 1));
        tokens.push(Token { kind: TokenKind::Prelude, span });
    }
    if lx.peek(0) == Some('\u{feff}') {
        lx.bump();
    }
    loop {
        lx.skip_trivia()?;
        let start = (lx.line, lx.col);
        let Some(c) = lx.peek(0) else {
            let span = SourceSpan::new(file, start, start);
            tokens.push(Token { kind: TokenKind::Eof, span });
            return Ok(tokens);
        };
        let kind = if c.is_ascii_digit() || (c == '.' && lx.peek(1).is_some_and(|d| d.is_ascii_digit())) {
            lx.number(start)?
        } else if c == '"' || c == '\'' {
            lx.string(start)?
        } else if c.is_ascii_alphabetic() || c == '_' {
            lx.word()
        } else {
            lx.punct(start)?
        };
        let mut span = SourceSpan::new(file, start, (lx.line, lx.col));
        if let Some(original) = lx.pending.take() {
            span = original;
        }
        tokens.push(Token { kind, span });
    }
}

impl Lexer<'_> {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> (u32, u32) {
        (self.line, self.col)
    }

    fn span_from(&self, start: (u32, u32)) -> SourceSpan {
        SourceSpan::new(self.file, start, self.here())
    }

    fn skip_trivia(&mut self) -> Result<(), Diagnostic> {
        while let Some(c) = self.peek(0) {
            match c {
                ' ' | '\t' | '\n' | '\r' | '\u{b}' | '\u{c}' => {
                    self.bump();
                }
                '/' if self.peek(1) == Some('/') => {
                    while self.peek(0).is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                '/' if self.peek(1) == Some('*') => {
                    let start = self.here();
                    let body_start = self.pos + 2;
                    self.bump();
                    self.bump();
                    loop {
                        match self.peek(0) {
                            None => {
                                return Err(Diagnostic::syntax(
                                    SyntaxKind::UnterminatedComment,
                                    self.span_from(start),
                                    "This comment is never closed with */.",
                                ))
                            }
                            Some('*') if self.peek(1) == Some('/') => break,
                            _ => {
                                self.bump();
                            }
                        }
                    }
                    let body: String = self.chars[body_start..self.pos].iter().collect();
                    self.bump();
                    self.bump();
                    if self.directives {
                        if let Some(span) = body.strip_prefix('@').and_then(|s| SourceSpan::decode(s, self.file)) {
                            self.pending = Some(span);
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(())
    }

    fn number(&mut self, start: (u32, u32)) -> Result<TokenKind, Diagnostic> {
        let begin = self.pos;
        let value = if self.peek(0) == Some('0') && matches!(self.peek(1), Some('x' | 'X')) {
            self.bump();
            self.bump();
            let digits_start = self.pos;
            while self.peek(0).is_some_and(|c| c.is_ascii_hexdigit()) {
                self.bump();
            }
            let digits: String = self.chars[digits_start..self.pos].iter().collect();
            if digits.is_empty() {
                None
            } else {
                Some(digits.chars().fold(0.0f64, |acc, d| acc * 16.0 + d.to_digit(16).unwrap() as f64))
            }
        } else {
            while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            if self.peek(0) == Some('.') {
                self.bump();
                while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
            }
            if matches!(self.peek(0), Some('e' | 'E')) {
                let sign = matches!(self.peek(1), Some('+' | '-'));
                let digit_at = if sign { 2 } else { 1 };
                if self.peek(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                    for _ in 0..digit_at {
                        self.bump();
                    }
                    while self.peek(0).is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                }
            }
            let text: String = self.chars[begin..self.pos].iter().collect();
            let leading_zero = text.len() > 1 && text.starts_with('0') && text.as_bytes()[1].is_ascii_digit();
            if leading_zero {
                None
            } else {
                let normalized = if text.starts_with('.') { format!("0{text}") } else { text };
                normalized.trim_end_matches('.').parse::<f64>().ok().or_else(|| normalized.parse().ok())
            }
        };
        if self.peek(0).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            while self.peek(0).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                self.bump();
            }
            return Err(Diagnostic::syntax(
                SyntaxKind::InvalidNumber,
                self.span_from(start),
                "A number cannot be followed directly by letters.",
            ));
        }
        match value {
            Some(v) => Ok(TokenKind::Number(v)),
            None => Err(Diagnostic::syntax(
                SyntaxKind::InvalidNumber,
                self.span_from(start),
                "This is not a valid number.",
            )),
        }
    }

    fn string(&mut self, start: (u32, u32)) -> Result<TokenKind, Diagnostic> {
        let quote = self.bump().unwrap();
        let mut out = String::new();
        let unterminated = |lx: &Self| {
            Diagnostic::syntax(
                SyntaxKind::UnterminatedString,
                lx.span_from(start),
                "This string is missing its closing quote.",
            )
        };
        loop {
            match self.peek(0) {
                None | Some('\n') | Some('\r') => return Err(unterminated(self)),
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(TokenKind::Str(Rc::from(out)));
                }
                Some('\\') => {
                    self.bump();
                    let Some(e) = self.bump() else { return Err(unterminated(self)) };
                    match e {
                        'n' => out.push('\n'),
                        't' => out.push('\t'),
                        'r' => out.push('\r'),
                        'b' => out.push('\u{8}'),
                        'f' => out.push('\u{c}'),
                        'v' => out.push('\u{b}'),
                        '0' if !self.peek(0).is_some_and(|c| c.is_ascii_digit()) => out.push('\0'),
                        '\n' => {}
                        '\r' => {
                            if self.peek(0) == Some('\n') {
                                self.bump();
                            }
                        }
                        'x' => {
                            let code = self.hex_digits(2).ok_or_else(|| self.bad_escape(start))?;
                            out.push(char::from_u32(code).unwrap_or('\u{fffd}'));
                        }
                        'u' => {
                            let code = if self.peek(0) == Some('{') {
                                self.bump();
                                let mut code = 0u32;
                                let mut n = 0;
                                while let Some(d) = self.peek(0).and_then(|c| c.to_digit(16)) {
                                    self.bump();
                                    code = code.saturating_mul(16).saturating_add(d);
                                    n += 1;
                                }
                                if n == 0 || self.bump() != Some('}') || code > 0x10ffff {
                                    return Err(self.bad_escape(start));
                                }
                                code
                            } else {
                                self.hex_digits(4).ok_or_else(|| self.bad_escape(start))?
                            };
                            out.push(char::from_u32(code).unwrap_or('\u{fffd}'));
                        }
                        other => out.push(other),
                    }
                }
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn hex_digits(&mut self, n: usize) -> Option<u32> {
        let mut code = 0;
        for _ in 0..n {
            let d = self.peek(0)?.to_digit(16)?;
            self.bump();
            code = code * 16 + d;
        }
        Some(code)
    }

    fn bad_escape(&self, start: (u32, u32)) -> Diagnostic {
        Diagnostic::syntax(SyntaxKind::UnexpectedToken, self.span_from(start), "This string has an invalid escape sequence.")
    }

    fn word(&mut self) -> TokenKind {
        let begin = self.pos;
        while self.peek(0).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        let text: String = self.chars[begin..self.pos].iter().collect();
        if let Some((_, kind)) = KEYWORDS.iter().find(|(k, _)| *k == text) {
            return kind.clone();
        }
        if let Some(word) = RESERVED.iter().find(|w| **w == text) {
            return TokenKind::Reserved(word);
        }
        TokenKind::Ident(Rc::from(text))
    }

    fn punct(&mut self, start: (u32, u32)) -> Result<TokenKind, Diagnostic> {
        for (text, kind) in PUNCT {
            let n = text.chars().count();
            if text.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c)) {
                for _ in 0..n {
                    self.bump();
                }
                return Ok(kind.clone());
            }
        }
        let c = self.bump().unwrap();
        Err(Diagnostic::syntax(
            SyntaxKind::IllegalCharacter,
            self.span_from(start),
            format!("The character {c:?} is not allowed here."),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src, 0).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn minimal_program() {
        use TokenKind::*;
        assert_eq!(
            kinds("let x = 1;"),
            vec![Let, Ident("x".into()), Assign, Number(1.0), Semi, Eof]
        );
    }

    #[test]
    fn member_call() {
        use TokenKind::*;
        assert_eq!(
            kinds("robot.moveForward();"),
            vec![Ident("robot".into()), Dot, Ident("moveForward".into()), LParen, RParen, Semi, Eof]
        );
    }

    #[test]
    fn spans_are_one_based_and_end_exclusive() {
        let toks = tokenize("let x\n  = 10;", 4).unwrap();
        assert_eq!(toks[1].span, SourceSpan::new(4, (1, 5), (1, 6)));
        assert_eq!(toks[3].span, SourceSpan::new(4, (2, 5), (2, 7)));
    }

    #[test]
    fn unterminated_string_at_column_one() {
        let d = tokenize("\"unclosed", 0).unwrap_err();
        assert_eq!(d.category, crate::diagnostic::Category::Syntax(SyntaxKind::UnterminatedString));
        assert_eq!((d.span.start_line, d.span.start_col), (1, 1));
    }

    #[test]
    fn numbers() {
        use TokenKind::*;
        assert_eq!(kinds("0.5 .25 1e3 2E-2 0x1f 5."), vec![
            Number(0.5), Number(0.25), Number(1000.0), Number(0.02), Number(31.0), Number(5.0), Eof
        ]);
        assert!(tokenize("3abc", 0).is_err());
        assert!(tokenize("012", 0).is_err());
    }

    #[test]
    fn strings_and_escapes() {
        assert_eq!(kinds(r#"'a\'b' "\n\x41B\u{43}""#), vec![
            TokenKind::Str("a'b".into()),
            TokenKind::Str("\nABC".into()),
            TokenKind::Eof
        ]);
    }

    #[test]
    fn comments_and_illegal() {
        assert_eq!(kinds("// hi\n/* a\n b */ x"), vec![TokenKind::Ident("x".into()), TokenKind::Eof]);
        assert!(tokenize("/* open", 0).is_err());
        let d = tokenize("x @ y", 0).unwrap_err();
        assert_eq!(d.span.start_col, 3);
    }

    #[test]
    fn unsupported_and_reserved() {
        assert_eq!(kinds("var [ =>"), vec![
            TokenKind::Reserved("var"),
            TokenKind::Unsupported("["),
            TokenKind::Unsupported("=>"),
            TokenKind::Eof
        ]);
    }

    #[test]
    fn directives_only_in_instrumented_sources() {
        let plain = tokenize("/*@3:4-3:5*/x", 1).unwrap();
        assert_eq!(plain[0].span.start_col, 13);
        let inst = tokenize(&format!("{INSTRUMENTED_MARKER}\n/*@3:4-3:5*/x"), 1).unwrap();
        assert_eq!(inst[0].kind, TokenKind::Prelude);
        assert_eq!(inst[1].span, SourceSpan::new(1, (3, 4), (3, 5)));
    }
}
