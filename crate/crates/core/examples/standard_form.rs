//! Standard form and non-Archimedean invariants of a profinite group.

use protori::FgProfiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs = [
        "0",
        "prod[rest = 1, 2^2]",
        "prod[3^inf, 3^4, 2^1 * 5^inf]",
        "prod[2^inf * 3^1 ; rest = 2, 5^inf, 7^3]",
        "prod[1, 1, rest = inf]",
    ];
    for text in inputs {
        let d: FgProfiniteGroup = text.parse()?;
        let s = d.standardize();
        let inv = s.na_invariants();
        println!("{text}");
        println!("  standard form  {s}");
        println!("  width {}, dimension {}, finite: {}", inv.width, inv.dimension, s.is_finite());
        if let Some(n) = s.order() {
            println!("  order {n}");
        }
    }
    Ok(())
}
