//! Left Gröbner bases in the Weyl algebra directly. The signature always
//! carries the central parameter `s`; it is simply unused here.

use bsideal::groebner::{left_buchberger, Budget, TermOrder};
use bsideal::weyl::{WeylElement, WeylSignature};

fn main() -> bsideal::Result<()> {
    let sig = WeylSignature::new(&["x", "y"], 1, false)?;
    let (x, y) = (WeylElement::x(&sig, 0), WeylElement::x(&sig, 1));
    let (dx, dy) = (WeylElement::d(&sig, 0), WeylElement::d(&sig, 1));

    println!("d_x * x = {}", &dx * &x);

    // annihilator of exp(x*y): d_x − y and d_y − x
    let gens = [&dx - &y, &dy - &x];
    let gb = left_buchberger(&gens, &TermOrder::degrevlex(&sig), &Budget::default())?;
    println!("basis of D<d_x - y, d_y - x>:");
    for g in &gb.generators {
        println!("  {g}");
    }
    let member = &(&x * &(&dx - &y)) + &(&dy - &x);
    println!("x*(d_x - y) + (d_y - x) in ideal: {}", gb.contains(&member)?);
    println!("x in ideal: {}", gb.contains(&x)?);
    Ok(())
}
