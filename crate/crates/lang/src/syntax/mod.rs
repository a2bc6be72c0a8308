//! Tokens, syntax tree, parser and printer for RoboJS.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod span;
pub mod token;

pub use ast::*;
pub use lexer::{tokenize, INSTRUMENTED_MARKER};
pub use parser::{check_syntax, parse, parse_source, NAMESPACES};
pub use printer::{print, PrintOptions};
pub use span::{FileId, SourceSpan};
pub use token::{Token, TokenKind};
