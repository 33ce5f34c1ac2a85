//! Finite-group constructions with checkable certificates.

pub mod constants;
pub mod error;
pub mod group;
pub mod lab;
pub mod primitives;
pub mod survey;
pub mod witness;

pub use error::{Error, Result};
