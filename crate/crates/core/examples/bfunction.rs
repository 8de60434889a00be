//! b-function, roots and log canonical threshold of a polynomial.
//!
//! cargo run --example bfunction -- "x^2+y^3"

use bsideal::groebner::Budget;
use bsideal::io::format::factored;
use bsideal::io::parse::parse_poly;
use bsideal::pipeline::{bfunction, lct_of};

fn main() -> bsideal::Result<()> {
    let src = std::env::args().nth(1).unwrap_or_else(|| "x^2+y^3".into());
    let f = parse_poly(&src)?;
    let b = bfunction(&f, &Budget::default())?;
    println!("f      = {f}");
    println!("b_f(s) = {}", factored(&b)?);
    println!("       = {b}");
    println!("lct    = {}", lct_of(&b)?);
    Ok(())
}
