//! Completely factorable protori: embedding a profinite group, dimensions,
//! the p-adic and torsion ranks of the union of L(G), and resolutions.

use protori::dsl::format_kernel;
use protori::{FgProfiniteGroup, ProtorusDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: FgProfiniteGroup = "prod[2^inf * 3^1 ; rest = 2, 5^inf, 7^3]".parse()?;
    let embedding = ProtorusDescriptor::from_profinite(&d);
    let k = &embedding.protorus;
    println!("D = {}", d.standardize());
    println!("embedded in {k}");
    println!("dim {}, dim_na {}", k.dim(), k.dim_na());

    let parts = k.decompose();
    println!("divisible {}, torus {}, torus-free {}", parts.divisible_rank, parts.torus_rank, parts.torus_free_part);

    let g: ProtorusDescriptor = "protorus{divisible: 1, solenoids: [2^inf, 3^inf * 5^1 ; rest = 1]}".parse()?;
    let t = g.tilde_delta()?;
    println!("{g}");
    for p in [2, 3, 5, 7] {
        println!("  p = {p}: Q_p^{} x Z(p^inf)^{}", t.padic_rank(p), t.torsion_rank(p));
    }

    let r = g.decompose().torus_free_part.projective_resolution()?;
    println!("resolution: {} -> Ẑ^{}", format_kernel(&r.kernel), r.free_rank);

    let h: ProtorusDescriptor = "protorus{divisible: 1, solenoids: [3^inf * 7^2 ; rest = 1, 2^inf * 5^9]}".parse()?;
    println!("{g} ~ {h}: {}", g.isogenous(&h));
    Ok(())
}
