//! Exact arithmetic for Laurent polynomials and rational functions over ℚ in
//! the fixed, ordered variable set `(z, w, q, t, u)`.
//!
//! `u` is the square root of `q`; the code never uses fractional exponents.
//! Every operation is pure and every value is immutable once built.

mod gcd;
mod parse;
mod poly;
mod ratfunc;

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gcd::gcd;
pub use poly::MPoly;
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Scalar = BigRational;

pub const NVARS: usize = 5;

/// Dense exponent vector in the order `(z, w, q, t, u)`; negative entries
/// are allowed.
pub type Exponents = [i32; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Z,
    W,
    Q,
    T,
    U,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::W, Var::Q, Var::T, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Q => "q",
            Var::T => "t",
            Var::U => "u",
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            'z' => Some(Var::Z),
            'w' => Some(Var::W),
            'q' => Some(Var::Q),
            't' => Some(Var::T),
            'u' => Some(Var::U),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes: {0}")]
    Pole(String),
    #[error("variable {0} has no value at the evaluation point")]
    UnboundVariable(Var),
    #[error("not a polynomial: denominator {witness} remains after reduction")]
    NotPolynomial { witness: String },
    #[error("odd power of u in monomial {witness}; not a function of q")]
    OddPower { witness: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Shorthand used throughout the crate and its tests: parse a rational
/// function, panicking on malformed input.
pub fn rf(s: &str) -> RatFunc {
    s.parse()
        .unwrap_or_else(|e| panic!("bad rational function literal {s:?}: {e}"))
}
