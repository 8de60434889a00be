//! Exact arithmetic: rationals, multivariate polynomials, linear factors.

pub mod linear;
pub mod poly;
pub mod rational;
pub mod signature;
pub mod univariate;

pub use linear::{linear_factorization, Factorization, LinearForm};
pub use poly::{poly_arith, Monomial, MultiPoly, PolyOp};
pub use rational::Rational;
pub use signature::{Block, Signature};
pub use univariate::univariate_rational_roots;
