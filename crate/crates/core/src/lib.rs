//! Exact arithmetic for the projective line with marked half-points.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`arith`]: smallest-prime-factor sieves, squarefree and m-free parts,
//!   Jacobi symbols and divisor functions.
//! - [`heights`]: the M-curve height (classical part times m-free parts of
//!   the local intersection products) and Darmon integrality.
//! - [`conics`]: solubility of `x1*y1^2 + x2*y2^2 = x3*y3^2` by quadratic
//!   residue conditions and by bounded exhaustive search, and the weighted
//!   census of soluble coefficient triples.
//! - [`census`]: counting rational and integral points of bounded height with
//!   a brute-force oracle and a stratified engine.
//!
//! Timing, threads and file formats live in the `stacky` crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod conics;
mod error;
pub mod exact;
pub mod heights;

pub use error::{Error, Result};
