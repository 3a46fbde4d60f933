//! Buchberger engine shared by the commutative ring and the Weyl algebra,
//! with ideal and module front ends for the commutative case.

mod comm;
pub(crate) mod engine;
mod syzygy;

pub use comm::{
    groebner_basis, is_groebner_basis, monomial_ideal_dimension, normal_form, quotient_dimension, Ideal,
};
pub use syzygy::{module_groebner_basis, module_normal_form, syzygies, FreeModuleElement, SyzygyModule};
