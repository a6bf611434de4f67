//! Quotients D/kD, multiples kD and the kernel of Ẑ^m ↠ D.

use protori::dsl::format_kernel;
use protori::FgProfiniteGroup;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let zhat = FgProfiniteGroup::zhat_power(1);
    for k in [1, 2, 12, 360] {
        println!("Ẑ / {k}Ẑ = {}", zhat.quotient_mod_k(k)?.standardize());
    }

    for p in [2, 3, 5] {
        let zp = FgProfiniteGroup::padic(p)?;
        println!("Z_{p} / {p}^3 Z_{p} = {}", zp.quotient_mod_k(p.pow(3))?);
    }

    let d: FgProfiniteGroup = "prod[2^inf * 3^1 ; rest = 2, 5^inf, 7^3]".parse()?;
    println!("D     = {}", d.standardize());
    println!("D/6D  = {}", d.quotient_mod_k(6)?.standardize());
    println!("6D    = {}", d.scalar_mul(6)?.standardize());
    println!("ker   = {}", format_kernel(&d.kernel_descriptor()));
    println!("exact = {}", d.standardize().verify_exactness());
    Ok(())
}
