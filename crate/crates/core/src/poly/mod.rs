//! Multivariate polynomials over a prime field with N^n-gradings.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder, MultiDegree};
pub use polynomial::{
    is_multihomogeneous, linear_combination, poly_arith, random_linear_combination, ArithOp,
    Polynomial, Term,
};
pub(crate) use polynomial::axpy;
pub use ring::Ring;
