//! Exact polynomial algebra: scalars over `Q` and `F_p`, sparse multigraded
//! polynomials, polynomial matrices and Gröbner bases.

mod groebner;
mod linalg;
mod matrix;
mod parse;
mod poly;
mod scalar;

pub use groebner::{
    groebner_basis, ideal_codim, is_member, is_regular_sequence, normal_form, staircase_dimension, Budget, IdealBasis,
    MonomialOrder, Regularity, BUDGET_ENV, MAX_STAIRCASE_VARS,
};
pub use linalg::{nullspace, rank, rref, solve};
pub use matrix::{PolyMatrix, MAX_DET_SIZE};
pub use parse::{parse_poly, parse_poly_mod};
pub use poly::{BihomogeneousForm, Grading, Monomial, Poly, VarContext};
pub use scalar::{Modulus, Scalar, DEFAULT_PRIME};

/// Numeric determinant of a square scalar matrix.
pub fn scalar_det(m: &[Vec<Scalar>]) -> Scalar {
    linalg::det(m)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("mixed moduli {0} and {1}")]
    MixedModuli(u32, u32),
    #[error("division by zero")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid variable context: {0}")]
    Context(String),
    #[error("polynomials from different variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("form is not homogeneous")]
    NotHomogeneous,
}
