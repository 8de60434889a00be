//! Operators killing f^s, each checked by applying it.
//!
//! cargo run --example annihilator -- "x^2+y^3"

use bsideal::groebner::Budget;
use bsideal::io::parse::parse_tuple;
use bsideal::pipeline::Annihilator;

fn main() -> bsideal::Result<()> {
    let srcs: Vec<String> = std::env::args().skip(1).collect();
    let srcs = if srcs.is_empty() { vec!["x^2+y^3".to_string()] } else { srcs };
    let input = parse_tuple(&srcs)?;
    let ann = Annihilator::compute(&input, &Budget::default())?;
    println!("Ann of {} ({} generators)", input.describe().join(", "), ann.generators().len());
    for g in ann.generators() {
        println!("  {g}");
    }
    println!("all annihilate: {}", ann.verify()?);
    Ok(())
}
