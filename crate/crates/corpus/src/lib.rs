//! Revision-history statistics and a conservative estimate of how many
//! saved revisions contain mistakes the checked language would catch.

pub mod corpus;
pub mod estimate;
pub mod report;
pub mod rules;

pub use corpus::{Revision, RevisionCorpus};
pub use estimate::{analyze_revision, estimate_errors, AccountErrors, ErrorEstimate, Finding};
pub use report::{report, Format};
pub use corpus::{scan, AccountStats, CorpusStats};
