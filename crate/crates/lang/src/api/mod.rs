//! The `robot` namespace: manifest, request translation and sensing.

pub mod local;
pub mod manifest;
pub mod request;

pub use local::LocalSimPort;
pub use manifest::{api_catalog, ApiEntry, ApiManifest, Layer, ParamKind, ResultKind};
pub use request::{sense, to_request, ApiError, RobotSession};
