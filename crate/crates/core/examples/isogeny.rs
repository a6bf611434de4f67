//! Isogeny of profinite groups: finite rows and finitely many finite
//! exponents do not matter, free p-ranks and default exponents do.

use protori::FgProfiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        ("prod[rest = inf, 2^1]", "prod[rest = inf]"),
        ("prod[2^inf * 3^1 ; rest = 2]", "prod[2^inf * 3^5 * 7^4 ; rest = 2, 11^2]"),
        ("prod[rest = 1]", "0"),
        ("prod[rest = inf]", "prod[rest = inf, rest = inf]"),
        ("prod[2^inf]", "prod[2^3]"),
    ];
    for (a, b) in pairs {
        let (d, e): (FgProfiniteGroup, FgProfiniteGroup) = (a.parse()?, b.parse()?);
        println!("{a}  ~  {b}: {}", d.isogenous(&e));
    }

    let d: FgProfiniteGroup = "prod[2^inf * 5^inf ; rest = 3, 7^2]".parse()?;
    let six_d = d.scalar_mul(6)?;
    println!("{d} ~ 6D = {six_d}: {}", d.isogenous(&six_d));
    Ok(())
}
