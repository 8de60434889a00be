//! The input language: literals, signs, powers and canonical printing.

use bsideal::io::format::factored;
use bsideal::io::parse::{parse_poly, parse_s_poly};

fn main() {
    for src in ["x^2 + y^3", "(x+y)*(x-y)", "-1/2*x1^3 + x2", "x^-1", "2 x", "s*x"] {
        match parse_poly(src) {
            Ok(p) => println!("{src:>16}  ->  {p}"),
            Err(e) => println!("{src:>16}  ->  error: {e}"),
        }
    }
    let b = parse_s_poly("s^3 + 3*s^2 + 107/36*s + 35/36", 1).unwrap();
    println!("factored: {}", factored(&b).unwrap());
}
