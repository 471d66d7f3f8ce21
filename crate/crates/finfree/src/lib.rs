// Convolution-style recurrences read better as indexed loops.
#![allow(clippy::needless_range_loop)]

//! Exact-arithmetic finite free probability.
//!
//! Finite-free additive and multiplicative convolution of monic real-rooted
//! polynomials, the partition/permutation combinatorics behind their
//! moment-cumulant formulas, truncated formal series transforms, the full
//! infinitesimal (order `1/d`) fluctuation calculus, and deterministic
//! polynomial families with an extrapolation engine that checks the limit
//! formulas at desk scale. Every computation is carried out over
//! arbitrary-precision rationals; no floating point anywhere.

pub mod combinat;
pub mod error;
pub mod families;
pub mod finconv;
pub mod freeprob;
pub mod infin;
mod lattice;
pub mod poly;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Q;
