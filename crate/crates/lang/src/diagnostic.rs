use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Syntax,
    Static,
    Dynamic,
}

/// The checked pitfalls. The first five are the classic beginner traps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckCategory {
    LooseComparison,
    UninitializedVariable,
    ConditionalAssignment,
    OpTypeMismatch,
    ArityMismatch,
    MissingMember,
    NonBooleanCondition,
    FunctionComparedAsValue,
}

impl CheckCategory {
    pub const ALL: [CheckCategory; 8] = [
        CheckCategory::LooseComparison,
        CheckCategory::UninitializedVariable,
        CheckCategory::ConditionalAssignment,
        CheckCategory::OpTypeMismatch,
        CheckCategory::ArityMismatch,
        CheckCategory::MissingMember,
        CheckCategory::NonBooleanCondition,
        CheckCategory::FunctionComparedAsValue,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckCategory::LooseComparison => "LooseComparison",
            CheckCategory::UninitializedVariable => "UninitializedVariable",
            CheckCategory::ConditionalAssignment => "ConditionalAssignment",
            CheckCategory::OpTypeMismatch => "OpTypeMismatch",
            CheckCategory::ArityMismatch => "ArityMismatch",
            CheckCategory::MissingMember => "MissingMember",
            CheckCategory::NonBooleanCondition => "NonBooleanCondition",
            CheckCategory::FunctionComparedAsValue => "FunctionComparedAsValue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SyntaxKind {
    IllegalCharacter,
    UnterminatedString,
    UnterminatedComment,
    InvalidNumber,
    UnexpectedToken,
    MismatchedBracket,
    NotInSubset,
    Redeclaration,
    ElseWithCondition,
    InvalidAssignmentTarget,
    MisplacedStatement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StaticKind {
    UndeclaredName,
    ReservedName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuntimeKind {
    ReferenceError,
    NotCallable,
    StackOverflow,
    Robot,
    Transport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "group", content = "kind")]
pub enum Category {
    Syntax(SyntaxKind),
    Static(StaticKind),
    Check(CheckCategory),
    Runtime(RuntimeKind),
}

impl Category {
    pub fn check(self) -> Option<CheckCategory> {
        match self {
            Category::Check(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Syntax(k) => write!(f, "{k:?}"),
            Category::Static(k) => write!(f, "{k:?}"),
            Category::Check(c) => f.write_str(c.name()),
            Category::Runtime(k) => write!(f, "{k:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub phase: Phase,
    pub category: Category,
    pub message: String,
    pub span: SourceSpan,
}

impl Diagnostic {
    pub fn syntax(kind: SyntaxKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { phase: Phase::Syntax, category: Category::Syntax(kind), message: message.into(), span }
    }

    pub fn static_check(category: CheckCategory, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { phase: Phase::Static, category: Category::Check(category), message: message.into(), span }
    }

    pub fn static_kind(kind: StaticKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { phase: Phase::Static, category: Category::Static(kind), message: message.into(), span }
    }

    pub fn dynamic(category: CheckCategory, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { phase: Phase::Dynamic, category: Category::Check(category), message: message.into(), span }
    }

    pub fn runtime(kind: RuntimeKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { phase: Phase::Dynamic, category: Category::Runtime(kind), message: message.into(), span }
    }

    /// `file:line:col: phase/category: message`
    pub fn render(&self, file: &str) -> String {
        format!("{file}:{}:{}: {}", self.span.start_line, self.span.start_col, self)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phase = match self.phase {
            Phase::Syntax => "syntax",
            Phase::Static => "static",
            Phase::Dynamic => "dynamic",
        };
        write!(f, "{phase}/{}: {}", self.category, self.message)
    }
}
