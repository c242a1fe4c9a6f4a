//! Exact construction of finite-dimensional Nichols algebras of group type
//! and their graded characters.

#![allow(clippy::needless_range_loop)]

pub mod braidings;
pub mod cli;
pub mod conjchar;
pub mod diagonal;
pub mod divisibility;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod nichols;
pub mod qfactor;
pub mod scalars;
pub mod traces;

pub use error::{Error, Result};
