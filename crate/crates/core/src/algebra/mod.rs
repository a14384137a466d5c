//! Exact algebra: coefficient fields, Laurent polynomials, cyclotomic
//! fields, polynomial matrices and Gröbner bases.

pub mod coeff;
pub mod cyclotomic;
pub mod groebner;
pub mod laurent;
pub mod matrix;
pub mod parse;

pub use coeff::{embed_int, embed_rational, format_rational, parse_rational, Field, Fp, Ring};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use groebner::{buchberger, is_unit_ideal_laurent, MonomialOrder, Poly};
pub use laurent::{vars, LaurentPoly, Vars};
pub use matrix::{matrix_rank, PolyMatrix};
pub use parse::parse_laurent;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("coefficient domains differ")]
    DomainMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution expects {expected} images, got {found}")]
    SubstitutionArity { expected: usize, found: usize },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("matrix is not rectangular")]
    Ragged,
}
