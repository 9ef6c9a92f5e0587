//! Exact quadratic-twist calculus for local representations of GL₂ over ℚ_p
//! (p odd), with the Weyl-law constants and global density formulas built on
//! top of it, and a brute-force character-table oracle for auditing.

pub mod arith;
pub mod charmod;
pub mod cli;
pub mod error;
pub mod global;
pub mod monomial;
pub mod oracle;
pub mod rational;
pub mod replocal;
pub mod similarity;

pub use error::{Error, Result};
