//! Exact structure theory for weight-truncated vertex operator algebras.

pub mod algebra;
pub mod axioms;
pub mod builders;
pub mod center;
pub mod classify;
pub mod cli;
pub mod error;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod power_assoc;
pub mod radicals;
pub mod voa;

pub use error::{Error, Result};
