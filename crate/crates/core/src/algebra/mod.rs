//! Exact algebra in `t = sqrt(x)`: rational polynomials, the two-radical
//! extension used by the mean profiles, Sturm root counting and a small
//! literal grammar.

pub mod expand;
pub mod poly;
pub mod radical;
pub mod sturm;
pub mod text;

use num_rational::BigRational;
use thiserror::Error;

pub use expand::{expand_combination, mean_profile, square_compare};
pub use poly::{factor_unit_root, lcm, nonneg_coeffs, unit_root_power, RationalPolynomial};
pub use radical::{Monomial, RadicalExpression};
pub use sturm::{isolate_roots, sturm_count, Bound, Interval, SturmChain, SturmReport};
pub use text::{parse_polynomial, parse_radical, polynomial_to_text, radical_to_text};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: remainder coefficient {remainder} at degree {degree}")]
    NotDivisible { degree: usize, remainder: BigRational },
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("squaring did not eliminate a radical or a negative term")]
    NoProgress,
    #[error("kernel `{0}` has no radical expansion")]
    UnsupportedKernel(String),
    #[error("kernel `{0}` is not one of the named means")]
    UnsupportedParam(String),
    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("{0}")]
    InvalidArgument(String),
}
