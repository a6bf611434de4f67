//! Completely decomposable groups and their Pontryagin duals.

use protori::{CdGroupDescriptor, ProtorusDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a: CdGroupDescriptor = "cd{divisible: 1, free: 2, types: [2^inf, 3^inf ; rest = 1]}".parse()?;
    let k = a.dual();
    println!("A          = {a} (rank {})", a.rank());
    println!("dual       = {k}");
    println!("back again = {}", CdGroupDescriptor::from_dual(&k));

    let b: CdGroupDescriptor = "cd{divisible: 1, free: 2, types: [3^inf * 5^2 ; rest = 1, 2^inf * 7^4]}".parse()?;
    println!("A ≈ B: {}, duals isogenous: {}", a.quasi_isomorphic(&b), a.dual().isogenous(&b.dual()));

    let torus_free: ProtorusDescriptor = "protorus{solenoids: [2^inf, rest = inf]}".parse()?;
    println!("ACD witness for {torus_free}: {}", CdGroupDescriptor::acd_witness(&torus_free)?);
    match CdGroupDescriptor::acd_witness(&k) {
        Ok(w) => println!("ACD witness for {k}: {w}"),
        Err(e) => println!("no ACD witness for {k}: {e}"),
    }
    Ok(())
}
