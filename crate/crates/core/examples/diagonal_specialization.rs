//! Restricting Exp Z(B_F) to a one-parameter subgroup and comparing with
//! the b-function of the product.

use bsideal::groebner::Budget;
use bsideal::io::format::factored;
use bsideal::io::parse::{parse_poly, parse_tuple};
use bsideal::locus::{diagonal_specialization, exp_locus, CircleLocus};
use bsideal::pipeline::{bfunction, bs_ideal, MultiIndex};

fn main() -> bsideal::Result<()> {
    let budget = Budget::default();
    let input = parse_tuple(&["x", "y"])?;
    let locus = exp_locus(&bs_ideal(&input, &MultiIndex::ones(2), &budget)?)?;
    let pulled = diagonal_specialization(&locus, &[1, 1])?;

    let bxy = bfunction(&parse_poly("x*y")?, &budget)?;
    let single = exp_locus(&bs_ideal(&parse_tuple(&["x*y"])?, &MultiIndex::ones(1), &budget)?)?;
    let direct = CircleLocus::from_locus(&single)?;

    println!("Exp Z(B_(x,y)) = {locus}");
    println!("restricted to (l, l): angles {:?}", pulled.angles.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("b_xy = {}: angles {:?}", factored(&bxy)?, direct.angles.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("equal: {}", pulled == direct);
    Ok(())
}
