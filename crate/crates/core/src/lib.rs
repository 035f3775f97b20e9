//! Minimal codewords of binary linear codes.
//!
//! - [`gf2`]: single-word bit vectors and GF(2) matrix algebra.
//! - [`codes`]: the code model, minimal-codeword computation and constructions.
//! - [`bounds`]: upper and lower bounds on `M(n, k)` and table assembly.
//! - [`search`]: exhaustive and heuristic searches with checkable certificates.
//! - [`cyclegraph`]: cycle codes of graphs and simple-cycle counting.

pub mod bounds;
pub mod codes;
pub mod cyclegraph;
pub mod error;
pub mod gf2;
pub mod search;

pub use codes::{Codeword, LinearCode, MinimalSet};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
