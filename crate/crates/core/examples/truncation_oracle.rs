//! Checking the symbolic quotient formula against brute-force finite groups.

use protori::selftest::{gen, quotient_agrees};
use protori::truncation::{truncate, FiniteAbelianGroup};
use protori::FgProfiniteGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let zhat = FgProfiniteGroup::zhat_power(1);
    let small = truncate(&zhat, &[2, 3], 4)?;
    println!("Ẑ cut to 2, 3 with cap 4: {small}");
    println!("  / 12 by gcd:         {}", small.quotient_mod_k(12)?);
    println!("  / 12 by enumeration: {}", small.quotient_mod_k_enumerated(12).expect("order 1296"));

    let f = FiniteAbelianGroup::new([(2, 2), (2, 1), (3, 2)])?;
    println!("{f} / 6 = {}", f.quotient_mod_k_enumerated(6).expect("small"));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for _ in 0..2_000 {
        let d = gen::group(&mut rng, 3);
        let k = gen::scalar(&mut rng);
        quotient_agrees(&d, k).map_err(|e| format!("{d} mod {k}: {e}"))?;
        checked += 1;
    }
    println!("{checked} random quotients agree with the oracle");

    let report = protori::selftest::run(7, 100);
    print!("{report}");
    Ok(())
}
