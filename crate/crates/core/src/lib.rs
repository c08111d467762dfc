//! Generic exchange for graded Noether normalizations, minimal reductions
//! of ideals and complete reductions of multigraded algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`] and [`poly`]: exact arithmetic in `F_p[x_1..x_m]` with
//!   multigradings and monomial orders.
//! * [`groebner`]: Buchberger's algorithm and the decision procedures built
//!   on it (membership, elimination, kernels of ring maps, Krull dimension).
//! * [`algebra`]: graded algebra presentations and the verification oracles
//!   (homogeneous systems of parameters, reductions, analytic spread,
//!   diagonal subrings, complete reductions).
//! * [`genmat`]: the generic-matroid interface, axiom checkers and the
//!   randomized exchange procedures over five families of instances.
//! * [`cli`]: JSON instance files, reports and the command implementations
//!   behind the `genmat` binary.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod genmat;
pub mod groebner;
mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use poly::{Monomial, MonomialOrder, MultiDegree, Polynomial, Ring};
