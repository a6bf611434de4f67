//! The lattice of profinite subgroups with torus quotient, over a base Δ.

use protori::{FgProfiniteGroup, LatticeElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base: FgProfiniteGroup = "prod[rest = inf, 2^inf ; rest = 1]".parse()?;
    let delta = LatticeElement::from_base(&base)?;

    let two = delta.scale(2)?;
    let three = delta.scale(3)?;
    println!("Δ           = {delta}");
    println!("2Δ ∧ 3Δ     = {}", two.meet(&three)?);
    println!("2Δ ∨ 3Δ     = {}", two.join(&three)?);
    println!("6Δ ⊆ 2Δ     : {}", delta.scale(6)?.leq(&two)?);
    println!("[Δ : 12Δ]   = {}", delta.scale(12)?.index(&delta)?);
    println!("μ_5^-1[Δ]   = {}", delta.preimage_mu(5)?);

    let x: LatticeElement = "lattice{base: prod[rest = inf, 2^inf ; rest = 1], free: [(0, 3, 1)], torsion: [(1, 5, 2)]}".parse()?;
    println!("x           = {x}");
    println!("least k with kx ⊆ Δ: {}", x.find_conductor(&delta)?);
    println!("x as a group: {}", x.realize().standardize());
    Ok(())
}
