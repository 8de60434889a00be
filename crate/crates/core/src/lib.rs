//! Bernstein-Sato ideals of polynomial tuples over ℚ, computed exactly by
//! Gröbner elimination in the Weyl algebra, together with the torsion
//! subtori their zero loci map to under `Exp`.
//!
//! ```
//! use bsideal::groebner::Budget;
//! use bsideal::io::{format::factored, parse::parse_poly};
//! use bsideal::pipeline::{bfunction, lct_of};
//!
//! let b = bfunction(&parse_poly("x^2+y^3")?, &Budget::default())?;
//! assert_eq!(factored(&b)?, "(s+7/6)*(s+1)*(s+5/6)");
//! assert_eq!(lct_of(&b)?.to_string(), "5/6");
//! # Ok::<(), bsideal::Error>(())
//! ```

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod io;
pub mod locus;
pub mod oracle;
pub mod pipeline;
pub mod weyl;
pub mod zeta;

pub use error::{Error, Result};
