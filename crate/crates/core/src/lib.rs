//! Verification and enumeration toolkit for finite proximity spaces,
//! descriptive proximity spaces and proximal groups.
//!
//! Relations are stored as full near/far tables over every pair of subsets
//! of a carrier with at most [`MAX_CARRIER`] elements. Axioms are decided by
//! exhaustive scans that return the lexicographically smallest violating
//! tuple of subset masks.

pub mod descriptive;
pub mod enumeration;
mod error;
pub mod groups;
pub mod proximity;

pub use error::{Error, Result};
pub use proximity::*;
