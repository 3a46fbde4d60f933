//! Exact symbolic toolkit for polynomial divisors in affine space.
//!
//! The crate computes logarithmic derivations and Saito freeness certificates,
//! quasihomogeneity weights, Koszul tests on symbol ideals, the D-linearized
//! logarithmic Spencer complex, annihilators of `f^s` and `1/f`, global
//! b-functions, and assembles them into a logarithmic comparison verdict.
//! Lie algebra cohomology of linear free divisors and hyperplane arrangement
//! combinatorics provide independent cross-checks.
//!
//! Everything is exact over the rationals.

pub mod arrangements;
pub mod budget;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod lct;
pub mod liecoh;
pub mod linalg;
pub mod logder;
pub mod poly;
pub mod spencer;
pub mod weyl;

pub use budget::Budget;
pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Rational, TermOrder, VariableContext, WeightVector};
