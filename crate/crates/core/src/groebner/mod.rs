//! Left Gröbner bases in Weyl algebras: term orders, Buchberger, normal
//! forms, block elimination and the `t`-weight machinery.

mod basis;
mod order;
mod weight;

pub use basis::{eliminate_block, left_buchberger, left_normal_form, Budget, GroebnerBasis};
pub use order::{OrderKey, TermOrder};
pub use weight::{homogeneous_t_weight, t_weight, weight_zero_part};
