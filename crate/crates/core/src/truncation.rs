//! Brute-force finite abelian groups used as an independent oracle.
//!
//! Symbolic groups are cut down to a finite set of primes with infinite
//! exponents capped, then quotients are recomputed either from per-factor gcd
//! arithmetic or by enumerating the group outright. Neither route uses the
//! symbolic quotient formula.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::profinite::FgProfiniteGroup;
use crate::supernatural::Exponent;

/// Groups of at most this order can be enumerated element by element.
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// `⊕ ℤ(p^e)` with every factor a nontrivial prime power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    /// `(p, e)` pairs sorted by prime, then exponent.
    factors: Vec<(u64, u32)>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    /// Drops `e = 0` factors and sorts the rest.
    pub fn new(factors: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut out = Vec::new();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::InvalidPrime(p));
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        out.sort_unstable();
        Ok(FiniteAbelianGroup { factors: out })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn order(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &(p, e)| (p as u128).checked_pow(e).and_then(|q| acc.checked_mul(q)))
    }

    /// Isomorphism test: equality of the sorted cyclic factors.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.factors == other.factors
    }

    /// `F / kF` from `ℤ(n) / kℤ(n) ≅ ℤ(gcd(n, k))`, factor by factor.
    pub fn quotient_mod_k(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidScalar(0));
        }
        let mut out = Vec::new();
        for &(p, e) in &self.factors {
            let n = (p as u128).checked_pow(e).ok_or(Error::Overflow)?;
            let mut g = gcd(n, k as u128);
            let mut e2 = 0;
            while g > 1 {
                debug_assert_eq!(g % p as u128, 0);
                g /= p as u128;
                e2 += 1;
            }
            out.push((p, e2));
        }
        Self::new(out)
    }

    /// `F / kF` by enumerating `F`, or `None` when `|F|` exceeds
    /// [`ENUMERATION_LIMIT`].
    ///
    /// For each prime `p` the number of cosets killed by `p^i` is
    /// `p^{Σ_t min(e_t, i)}` over the `p`-factors `ℤ(p^{e_t})` of the quotient,
    /// which pins down the `e_t`.
    pub fn quotient_mod_k_enumerated(&self, k: u64) -> Option<Self> {
        assert!(k > 0, "k must be positive");
        let order = self.order()?;
        if order > ENUMERATION_LIMIT as u128 {
            return None;
        }
        let moduli: Vec<u64> = self.factors.iter().map(|&(p, e)| p.pow(e)).collect();
        let size = order as usize;
        let decode = |mut idx: usize| -> Vec<u64> {
            moduli
                .iter()
                .map(|&m| {
                    let c = idx as u64 % m;
                    idx /= m as usize;
                    c
                })
                .collect()
        };
        let encode = |v: &[u64]| -> usize {
            v.iter().zip(&moduli).rev().fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
        };
        let times = |v: &[u64], s: u64| -> Vec<u64> {
            v.iter().zip(&moduli).map(|(&c, &m)| ((c as u128 * s as u128) % m as u128) as u64).collect()
        };

        let mut in_kf = vec![false; size];
        for idx in 0..size {
            in_kf[encode(&times(&decode(idx), k))] = true;
        }
        let kf_size = in_kf.iter().filter(|&&b| b).count();

        let mut primes: Vec<u64> = self.factors.iter().map(|&(p, _)| p).collect();
        primes.dedup();
        let mut out = Vec::new();
        for p in primes {
            let max_e = self.factors.iter().filter(|f| f.0 == p).map(|f| f.1).max().unwrap_or(0);
            // s[i] = log_p |{cosets c : p^i c = 0}|
            let mut s = Vec::with_capacity(max_e as usize + 2);
            for i in 0..=max_e + 1 {
                let pi = p.pow(i);
                let killed = (0..size).filter(|&idx| in_kf[encode(&times(&decode(idx), pi))]).count();
                let mut cosets = killed / kf_size;
                let mut log = 0u32;
                while cosets > 1 {
                    assert_eq!(cosets % p as usize, 0, "coset count is not a power of {p}");
                    cosets /= p as usize;
                    log += 1;
                }
                s.push(log);
            }
            // d[i] = #{t : e_t >= i}
            let d: Vec<u32> = (1..s.len()).map(|i| s[i] - s[i - 1]).collect();
            for e in 1..=max_e {
                let at_least = d[e as usize - 1];
                let more = d.get(e as usize).copied().unwrap_or(0);
                out.extend(std::iter::repeat_n((p, e), (at_least - more) as usize));
            }
        }
        Some(Self::new(out).expect("primes come from a valid group"))
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Each row contributes `ℤ(p^{min(r_p(j), cap)})` for `p` in `primes`, with
/// `∞` replaced by `cap`.
pub fn truncate(d: &FgProfiniteGroup, primes: &[u64], cap: u32) -> Result<FiniteAbelianGroup> {
    let mut factors = Vec::new();
    for row in d.rows() {
        for &p in primes {
            let e = match row.exponent(p)? {
                Exponent::Inf => cap,
                Exponent::Finite(n) => n.min(cap as u64) as u32,
            };
            factors.push((p, e));
        }
    }
    FiniteAbelianGroup::new(factors)
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("Z({p}^{e})")).collect();
        f.write_str(&parts.join(" x "))
    }
}
