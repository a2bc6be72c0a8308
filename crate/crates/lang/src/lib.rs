//! RoboJS: a checked subset of JavaScript for programming robots.

pub mod api;
pub mod check;
pub mod diagnostic;
pub mod exec;
pub mod gen;
pub mod js;
pub mod syntax;

pub use diagnostic::{Category, CheckCategory, Diagnostic, Phase};
