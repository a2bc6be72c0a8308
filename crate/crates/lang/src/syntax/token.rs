use std::fmt;
use std::rc::Rc;

use super::span::SourceSpan;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Emitted first when the source carries the instrumentation marker.
    Prelude,
    Number(f64),
    Str(Rc<str>),
    Ident(Rc<str>),
    Let,
    If,
    Else,
    While,
    For,
    Function,
    Return,
    True,
    False,
    /// JavaScript keyword or literal that RoboJS does not admit.
    Reserved(&'static str),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Bang,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    NotEq,
    EqEqEq,
    NotEqEq,
    AndAnd,
    OrOr,
    Assign,
    PlusAssign,
    MinusAssign,
    StarAssign,
    SlashAssign,
    PercentAssign,
    PlusPlus,
    MinusMinus,
    /// Valid JavaScript punctuation outside the subset (`[`, `=>`, `?`, ...).
    Unsupported(&'static str),
    Eof,
}

pub const KEYWORDS: &[(&str, TokenKind)] = &[
    ("let", TokenKind::Let),
    ("if", TokenKind::If),
    ("else", TokenKind::Else),
    ("while", TokenKind::While),
    ("for", TokenKind::For),
    ("function", TokenKind::Function),
    ("return", TokenKind::Return),
    ("true", TokenKind::True),
    ("false", TokenKind::False),
];

pub const RESERVED: &[&str] = &[
    "var", "const", "new", "this", "class", "null", "undefined", "typeof", "instanceof", "switch",
    "case", "default", "do", "break", "continue", "throw", "try", "catch", "finally", "delete",
    "void", "in", "of", "yield", "await", "async", "import", "export", "with", "debugger", "super",
    "extends", "static", "enum",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

impl TokenKind {
    pub fn is_bracket(&self) -> bool {
        matches!(
            self,
            TokenKind::LParen
                | TokenKind::RParen
                | TokenKind::LBrace
                | TokenKind::RBrace
                | TokenKind::Unsupported("[")
                | TokenKind::Unsupported("]")
        )
    }

    pub fn text(&self) -> String {
        use TokenKind::*;
        let s = match self {
            Prelude => "prelude",
            Number(n) => return crate::js::number_to_string(*n),
            Str(s) => return format!("\"{s}\""),
            Ident(name) => return name.to_string(),
            Let => "let",
            If => "if",
            Else => "else",
            While => "while",
            For => "for",
            Function => "function",
            Return => "return",
            True => "true",
            False => "false",
            Reserved(w) => w,
            LParen => "(",
            RParen => ")",
            LBrace => "{",
            RBrace => "}",
            Comma => ",",
            Semi => ";",
            Dot => ".",
            Plus => "+",
            Minus => "-",
            Star => "*",
            Slash => "/",
            Percent => "%",
            Bang => "!",
            Lt => "<",
            Le => "<=",
            Gt => ">",
            Ge => ">=",
            EqEq => "==",
            NotEq => "!=",
            EqEqEq => "===",
            NotEqEq => "!==",
            AndAnd => "&&",
            OrOr => "||",
            Assign => "=",
            PlusAssign => "+=",
            MinusAssign => "-=",
            StarAssign => "*=",
            SlashAssign => "/=",
            PercentAssign => "%=",
            PlusPlus => "++",
            MinusMinus => "--",
            Unsupported(s) => s,
            Eof => "end of file",
        };
        s.to_string()
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Eof => f.write_str("end of file"),
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Number(_) => write!(f, "number `{}`", self.text()),
            TokenKind::Str(_) => f.write_str("string"),
            other => write!(f, "`{}`", other.text()),
        }
    }
}
