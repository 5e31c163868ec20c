//! Error taxonomy shared by every module. Each variant corresponds to one
//! contract violation; none of them is ever used to signal a mere warning.

use std::fmt;

/// Parse failure for coefficient expressions: byte offset of the offending
/// token plus the set of token classes that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: found {}, expected {}",
            self.offset,
            self.found,
            self.expected.join(" | ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two series of different truncation orders were combined.
    OrderMismatch { left: usize, right: usize },
    /// Inversion requested for a series whose leading coefficient is zero
    /// or not a plain rational.
    NotInvertible,
    /// A symbolic power, logarithm or transform requires constant term 1
    /// (power series) or coefficient 1 at index 1 (Dirichlet series).
    NotUnipotent,
    /// A matrix operation requires a proper pair and the given one is not.
    NotProper,
    /// Exact polynomial division left a remainder.
    NotDivisible,
    /// A divisor-indexed quantity was requested at a non-divisor.
    NotADivisor { n: u64, d: u64 },
    /// A lift needs more power-series coefficients than the input carries.
    InsufficientOrder { needed: usize, have: usize },
    /// Coefficient expression text did not match the grammar.
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OrderMismatch { left, right } => {
                write!(f, "order mismatch: {left} vs {right}")
            }
            Error::NotInvertible => write!(f, "series is not invertible"),
            Error::NotUnipotent => {
                write!(f, "operation requires a unipotent series (leading coefficient 1)")
            }
            Error::NotProper => write!(f, "matrix pair is not proper"),
            Error::NotDivisible => write!(f, "polynomial division left a remainder"),
            Error::NotADivisor { n, d } => write!(f, "{d} does not divide {n}"),
            Error::InsufficientOrder { needed, have } => {
                write!(f, "insufficient order: need {needed}, have {have}")
            }
            Error::Parse(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
