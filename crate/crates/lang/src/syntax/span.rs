use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifies a source file within a run; the CLI maps it back to a path.
pub type FileId = u32;

/// 1-based source range. `end_col` is the column just past the last
/// character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file_id: FileId,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    /// Span of nodes the instrumenter creates; never shown to students.
    pub const SYNTHETIC: SourceSpan =
        SourceSpan { file_id: 0, start_line: 0, start_col: 0, end_line: 0, end_col: 0 };

    pub fn new(file_id: FileId, start: (u32, u32), end: (u32, u32)) -> Self {
        Self { file_id, start_line: start.0, start_col: start.1, end_line: end.0, end_col: end.1 }
    }

    pub fn is_synthetic(&self) -> bool {
        self.start_line == 0
    }

    pub fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    pub fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    /// Smallest span covering both.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        let start = self.start().min(other.start());
        let end = self.end().max(other.end());
        SourceSpan::new(self.file_id, start, end)
    }

    pub fn contains(&self, inner: &SourceSpan) -> bool {
        self.start() <= inner.start() && inner.end() <= self.end()
    }

    /// Compact `L:C-L:C` form carried by inserted check calls.
    pub fn encode(&self) -> String {
        format!("{}:{}-{}:{}", self.start_line, self.start_col, self.end_line, self.end_col)
    }

    pub fn decode(text: &str, file_id: FileId) -> Option<SourceSpan> {
        let (a, b) = text.split_once('-')?;
        let pair = |s: &str| -> Option<(u32, u32)> {
            let (l, c) = s.split_once(':')?;
            Some((l.parse().ok()?, c.parse().ok()?))
        };
        Some(SourceSpan::new(file_id, pair(a)?, pair(b)?))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start_line, self.start_col)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode() {
        let s = SourceSpan::new(3, (2, 5), (4, 1));
        assert_eq!(SourceSpan::decode(&s.encode(), 3), Some(s));
        assert_eq!(SourceSpan::decode("2:5", 0), None);
        assert!(s.to(SourceSpan::new(3, (1, 1), (2, 6))).contains(&s));
    }
}
