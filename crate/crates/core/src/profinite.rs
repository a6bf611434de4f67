//! Finitely generated profinite abelian groups `Δ = ∏_j ∏_p Ẑ(p^{r_p(j)})`.
//!
//! A group is a list of rows, each row a supernatural number. Row `j` stands
//! for `Δ_j = ∏_p Ẑ(p^{r_p(j)})` where `Ẑ(p^∞) = Ẑ_p`. The standard
//! representation sorts every per-prime column into non-increasing order and
//! drops trailing trivial rows; two groups are isomorphic exactly when their
//! standard representations coincide, and `PartialEq` compares them that way.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_map::{exceptional_primes, PrimeMap};
use crate::primes::factorize;
use crate::supernatural::{Exponent, SupernaturalNumber, INF};

/// A finitely generated profinite abelian group given by exponent rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "GroupJson", into = "GroupJson")]
pub struct FgProfiniteGroup {
    rows: Vec<SupernaturalNumber>,
    normalized: bool,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    rows: Vec<SupernaturalNumber>,
}

impl From<GroupJson> for FgProfiniteGroup {
    fn from(j: GroupJson) -> Self {
        FgProfiniteGroup::new(j.rows)
    }
}

impl From<FgProfiniteGroup> for GroupJson {
    fn from(g: FgProfiniteGroup) -> Self {
        GroupJson { rows: g.rows }
    }
}

/// Non-Archimedean width and dimension of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaInvariants {
    /// Number of rows `m` of the standard representation.
    pub width: usize,
    /// Number of infinite rows of the standard representation.
    pub dimension: usize,
}

impl FgProfiniteGroup {
    pub fn new(rows: Vec<SupernaturalNumber>) -> Self {
        FgProfiniteGroup { rows, normalized: false }
    }

    pub fn trivial() -> Self {
        FgProfiniteGroup { rows: Vec::new(), normalized: true }
    }

    /// `Ẑ^m`.
    pub fn zhat_power(m: usize) -> Self {
        Self::new(vec![SupernaturalNumber::all_inf(); m])
    }

    /// The `p`-adic integers `Ẑ_p` as a single row.
    pub fn padic(p: u64) -> Result<Self> {
        Ok(Self::new(vec![SupernaturalNumber::from_factors([(p, INF)])?]))
    }

    /// The finite cyclic group `ℤ(n)`.
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidScalar(0));
        }
        let row = SupernaturalNumber::from_factors(
            factorize(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e.into()))),
        )?;
        Ok(Self::new(vec![row]))
    }

    /// Rows as stored; call [`standardize`](Self::standardize) for the normal form.
    pub fn rows(&self) -> &[SupernaturalNumber] {
        &self.rows
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().all(SupernaturalNumber::is_one)
    }

    /// Direct product: concatenation of rows.
    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.rows.iter().chain(&other.rows).cloned().collect())
    }

    /// The standard representation.
    ///
    /// The default column is sorted once, and so is the column at each prime
    /// that is exceptional in some row; all other columns equal the default
    /// column, so the result stays eventually constant row by row.
    pub fn standardize(&self) -> Self {
        if self.normalized {
            return self.clone();
        }
        let maps: Vec<&PrimeMap<Exponent>> = self.rows.iter().map(|r| r.as_map()).collect();
        let primes = exceptional_primes(maps.iter().copied());

        let mut defaults: Vec<Exponent> = maps.iter().map(|m| *m.default_value()).collect();
        defaults.sort_unstable_by(|a, b| b.cmp(a));
        let columns: Vec<(u64, Vec<Exponent>)> = primes
            .into_iter()
            .map(|p| {
                let mut col: Vec<Exponent> = maps.iter().map(|m| *m.get(p)).collect();
                col.sort_unstable_by(|a, b| b.cmp(a));
                (p, col)
            })
            .collect();

        let mut rows: Vec<SupernaturalNumber> = defaults
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                SupernaturalNumber::from_map(PrimeMap::from_parts(
                    d,
                    columns.iter().map(|(p, col)| (*p, col[j])),
                ))
            })
            .collect();
        while rows.last().is_some_and(SupernaturalNumber::is_one) {
            rows.pop();
        }
        FgProfiniteGroup { rows, normalized: true }
    }

    /// Width and dimension of the standard representation.
    pub fn na_invariants(&self) -> NaInvariants {
        let std = self.standardize();
        NaInvariants {
            width: std.rows.len(),
            dimension: std.rows.iter().filter(|r| !r.is_integer()).count(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().all(SupernaturalNumber::is_integer)
    }

    /// Order of a finite group, `None` if infinite or beyond `u128`.
    pub fn order(&self) -> Option<u128> {
        self.rows.iter().try_fold(1u128, |acc, r| acc.checked_mul(r.to_integer()?))
    }

    /// The `p`-adic free rank: number of rows with exponent `∞` at `p`.
    pub fn free_rank(&self, p: u64) -> usize {
        self.rows.iter().filter(|r| r.at(p) == INF).count()
    }

    /// `Δ / kΔ`: per row, exponent `min(r_p(j), v_p(k))` at each `p | k` and 0
    /// elsewhere.
    pub fn quotient_mod_k(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidScalar(0));
        }
        let factors = factorize(k);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                SupernaturalNumber::from_map(PrimeMap::from_parts(
                    Exponent::ZERO,
                    factors
                        .iter()
                        .map(|(&p, &a)| (p, row.at(p).min(Exponent::Finite(a.into())))),
                ))
            })
            .collect();
        Ok(Self::new(rows).standardize())
    }

    /// `kΔ`: finite exponents drop by `v_p(k)` (clamped at 0), `∞` stays.
    pub fn scalar_mul(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidScalar(0));
        }
        let factors = factorize(k);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut map = row.as_map().clone();
                for (&p, &a) in &factors {
                    map.set(p, row.at(p).saturating_sub(a.into()));
                }
                SupernaturalNumber::from_map(map)
            })
            .collect();
        Ok(Self::new(rows).standardize())
    }

    /// The kernel `K(n) = ∏_j ∏_p p^{n_jp} Ẑ_p` of `Ẑ^m ↠ Δ(n)` for the
    /// standard representation `Δ(n)` of `self`.
    pub fn kernel_descriptor(&self) -> KernelDescriptor {
        self.standardize().row_kernel()
    }

    /// The kernel of `Ẑ^m ↠ ∏_j Δ_j` for the rows exactly as stored.
    pub fn row_kernel(&self) -> KernelDescriptor {
        KernelDescriptor {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.as_map().map(|e| match e {
                        Exponent::Finite(n) => KernelFactor::Free(*n),
                        Exponent::Inf => KernelFactor::Zero,
                    })
                })
                .collect(),
        }
    }

    /// Recomputes `Ẑ^m / K(n)` from the kernel descriptor and checks that it
    /// is the standard representation again.
    pub fn verify_exactness(&self) -> bool {
        let std = self.standardize();
        let kernel = std.kernel_descriptor();
        kernel.rows.len() == std.rows.len() && kernel.cokernel() == std
    }

    /// Whether there are morphisms both ways with finite cokernels.
    ///
    /// Decided as: equal `p`-adic free ranks at every prime, and equal
    /// exponent columns (as multisets of nonzero entries) at all but finitely
    /// many primes. On standard representations the latter reduces to equal
    /// nonzero default columns.
    pub fn isogenous(&self, other: &Self) -> bool {
        let (a, b) = (self.standardize(), other.standardize());
        let nonzero_defaults = |g: &Self| -> Vec<Exponent> {
            g.rows.iter().map(|r| r.default_exponent()).filter(|e| !e.is_zero()).collect()
        };
        if nonzero_defaults(&a) != nonzero_defaults(&b) {
            return false;
        }
        let maps = a.rows.iter().chain(&b.rows).map(|r| r.as_map());
        exceptional_primes(maps).into_iter().all(|p| a.free_rank(p) == b.free_rank(p))
    }
}

impl PartialEq for FgProfiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.standardize().rows == other.standardize().rows
    }
}

impl Eq for FgProfiniteGroup {}

impl fmt::Display for FgProfiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_group(self))
    }
}

impl FromStr for FgProfiniteGroup {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::dsl::parse_group(s)
    }
}

/// One `p`-component `p^n Ẑ_p` of a kernel row: free of rank 1 when `n < ∞`,
/// zero when `n = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelFactor {
    Free(u64),
    Zero,
}

impl KernelFactor {
    pub fn is_free(self) -> bool {
        matches!(self, KernelFactor::Free(_))
    }
}

impl fmt::Display for KernelFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelFactor::Free(n) => write!(f, "free:{n}"),
            KernelFactor::Zero => f.write_str("zero"),
        }
    }
}

impl FromStr for KernelFactor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "zero" => Ok(KernelFactor::Zero),
            Some(("free", n)) => n.parse().map(KernelFactor::Free).map_err(|e| format!("{e}")),
            _ => Err(format!("bad kernel factor {s:?}: expected \"zero\" or \"free:<n>\"")),
        }
    }
}

impl Serialize for KernelFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KernelFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The kernel `K(n)` of the canonical surjection `Ẑ^m ↠ Δ(n)`, row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDescriptor {
    rows: Vec<PrimeMap<KernelFactor>>,
}

impl KernelDescriptor {
    pub fn rows(&self) -> &[PrimeMap<KernelFactor>] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows whose `p`-component is a copy of `Ẑ_p`.
    pub fn free_rank(&self, p: u64) -> usize {
        self.rows.iter().filter(|r| r.get(p).is_free()).count()
    }

    /// Rowwise concatenation.
    pub fn concat(&self, other: &Self) -> Self {
        KernelDescriptor { rows: self.rows.iter().chain(&other.rows).cloned().collect() }
    }

    /// `Ẑ^m / K`, using `Ẑ_p / p^n Ẑ_p = ℤ(p^n)` and `Ẑ_p / 0 = Ẑ_p`.
    pub fn cokernel(&self) -> FgProfiniteGroup {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                SupernaturalNumber::from_map(r.map(|k| match k {
                    KernelFactor::Free(n) => Exponent::Finite(*n),
                    KernelFactor::Zero => INF,
                }))
            })
            .collect();
        FgProfiniteGroup::new(rows).standardize()
    }
}

#[derive(Serialize, Deserialize)]
struct KernelRowJson {
    default: KernelFactor,
    exceptions: std::collections::BTreeMap<u64, KernelFactor>,
}

impl Serialize for KernelDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            rows: Vec<KernelRowJson>,
        }
        Out {
            rows: self
                .rows
                .iter()
                .map(|r| KernelRowJson {
                    default: *r.default_value(),
                    exceptions: r.exceptions().clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for KernelDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_kernel(self))
    }
}
