//! Exact computer algebra for the Riordan group over truncated power series
//! and its analog over truncated Dirichlet series, together with the
//! Lagrange-type inversion transforms connecting the two and machine checks
//! for the Abel-identity families they generate.
//!
//! All arithmetic is exact: coefficients live in the polynomial ring
//! Q[phi, beta, l2, l3, l5, ...] where `phi` and `beta` are formal exponents
//! and `lp` stands for the formal logarithm of the prime p.

// Indexed loops and `n % d == 0` are the native idiom for triangular-table
// and divisor arithmetic; the iterator rewrites clippy suggests obscure it.
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod coeff;
pub mod dirichletseries;
pub mod document;
pub mod error;
pub mod lift;
pub mod powerseries;
pub mod rdgroup;
pub mod report;
pub mod suites;

pub use error::{Error, ParseError, Result};
