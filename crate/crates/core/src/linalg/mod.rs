//! Exact linear algebra over the rationals.

pub mod elim;
pub mod rational;
pub mod sparse;

pub use elim::{components, Component};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use sparse::{SparseMatrix, SparseVec};
