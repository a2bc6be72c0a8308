//! Static checks and the source-to-source instrumenter.

pub mod arity;
pub mod instrument;
pub mod intrinsics;
pub mod messages;
pub mod scope;
pub mod static_check;

pub use arity::ArityTable;
pub use instrument::{function_arity_prologue, instrument, InstrumentError};
pub use intrinsics::Intrinsic;
pub use static_check::static_check;
