//! Supernatural numbers: products, gcds, divisibility and types.

use protori::{Exponent, SupernaturalNumber, INF};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 2^∞ · 3^2, and the constant-1 number ∏ p
    let a = SupernaturalNumber::new(Exponent::ZERO, [(2, INF), (3, Exponent::Finite(2))])?;
    let b = SupernaturalNumber::constant(Exponent::Finite(1));

    println!("a         = {a}");
    println!("b         = {b}");
    println!("a * b     = {}", &a * &b);
    println!("gcd(a, b) = {}", a.gcd(&b));
    println!("lcm(a, b) = {}", a.lcm(&b));
    println!("a at 2, 3, 5: {} {} {}", a.exponent(2)?, a.exponent(3)?, a.exponent(5)?);

    let c: SupernaturalNumber = "2^inf * 3^7 * 11^1".parse()?;
    println!("{a} ~ {c}: {}", a.type_equivalent(&c));
    println!("{a} ~ {b}: {}", a.type_equivalent(&b));
    println!("{b} divides {}: {}", b.lcm(&a), b.divides(&b.lcm(&a)));

    let twelve = SupernaturalNumber::from_factors([(2, Exponent::Finite(2)), (3, Exponent::Finite(1))])?;
    println!("{twelve} is the integer {:?}", twelve.to_integer());
    Ok(())
}
