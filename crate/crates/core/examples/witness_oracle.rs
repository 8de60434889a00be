//! The operator ansatz on its own: a b-function and the operator behind it.
//!
//! cargo run --example witness_oracle

use bsideal::io::format::factored;
use bsideal::io::parse::{parse_poly, parse_s_poly, parse_tuple};
use bsideal::oracle::{find_witness, oracle_bfunction, AnsatzBounds};
use bsideal::pipeline::MultiIndex;

fn main() -> bsideal::Result<()> {
    let cusp = parse_poly("x^2+y^3")?;
    if let Some(cert) = oracle_bfunction(&cusp, &AnsatzBounds::new(3, 3, 1))? {
        println!("b_{{x^2+y^3}} = {}", factored(&cert.b)?);
        println!("  witness P = {}", cert.operator);
    }

    let input = parse_tuple(&["x", "y"])?;
    let b = parse_s_poly("(s1+1)*(s2+1)", 2)?;
    let p = find_witness(&b, &input, &MultiIndex::ones(2), &AnsatzBounds::default().with_order(2))?;
    println!("(s1+1)(s2+1) x^s1 y^s2 = P x^(s1+1) y^(s2+1) with P = {}", p.expect("d_x*d_y works"));

    let too_small = parse_s_poly("s+1", 1)?;
    let x2 = parse_tuple(&["x^2"])?;
    let none = find_witness(&too_small, &x2, &MultiIndex::ones(1), &AnsatzBounds::default())?;
    println!("s+1 for x^2 within default bounds: {:?}", none.map(|p| p.to_string()));
    Ok(())
}
