//! Exact construction and verification of generalized Eagon-Northcott
//! complexes over `Q`, and of the self-duality of `Sym^{b-1}` of a
//! restricted Koszul differential.

pub mod basis;
pub mod combin;
pub mod complex;
pub mod duality;
pub mod en;
pub mod error;
pub mod export;
pub mod linalg;
pub mod poly;
pub mod rep;

pub use error::{Error, Result};
