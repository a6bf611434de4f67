//! The lattice `L(G)` of profinite subgroups with torus quotient, for a
//! completely factorable torus-free protorus `G`, modeled componentwise.
//!
//! Fix a base `Δ = ∏_j ∏_p Ẑ(p^{n_jp})` in standard form with every row
//! infinite. An element of the lattice replaces each component by
//!
//! * `p^a Ẑ_p` (with `a ∈ ℤ`, negative meaning a `μ_p`-preimage inside `ℚ̂_p`)
//!   where `n_jp = ∞`, or
//! * `ℤ(p^b) ⊆ ℤ(p^∞)` where `n_jp < ∞`,
//!
//! and agrees with the base at all but finitely many `(j, p)`. Intersection
//! and sum then act coordinatewise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_map::{exceptional_primes, PrimeMap};
use crate::primes::{checked_prime_power, factorize};
use crate::profinite::FgProfiniteGroup;
use crate::supernatural::{check_prime, Exponent, SupernaturalNumber};

/// One coordinate of a lattice element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    /// `p^a Ẑ_p` inside `ℚ̂_p`.
    Free(i64),
    /// `ℤ(p^b)` inside `ℤ(p^∞)`.
    Torsion(u64),
}

impl Coord {
    fn of_base(e: Exponent) -> Coord {
        match e {
            Exponent::Inf => Coord::Free(0),
            Exponent::Finite(n) => Coord::Torsion(n),
        }
    }

    fn same_kind(self, other: Coord) -> bool {
        matches!(
            (self, other),
            (Coord::Free(_), Coord::Free(_)) | (Coord::Torsion(_), Coord::Torsion(_))
        )
    }

    fn contained_in(self, other: Coord) -> bool {
        match (self, other) {
            (Coord::Free(a), Coord::Free(b)) => a >= b,
            (Coord::Torsion(a), Coord::Torsion(b)) => a <= b,
            _ => unreachable!("coordinates of different kinds"),
        }
    }

    fn intersect(self, other: Coord) -> Coord {
        match (self, other) {
            (Coord::Free(a), Coord::Free(b)) => Coord::Free(a.max(b)),
            (Coord::Torsion(a), Coord::Torsion(b)) => Coord::Torsion(a.min(b)),
            _ => unreachable!("coordinates of different kinds"),
        }
    }

    fn sum(self, other: Coord) -> Coord {
        match (self, other) {
            (Coord::Free(a), Coord::Free(b)) => Coord::Free(a.min(b)),
            (Coord::Torsion(a), Coord::Torsion(b)) => Coord::Torsion(a.max(b)),
            _ => unreachable!("coordinates of different kinds"),
        }
    }
}

/// An element of `L(G)` relative to a fixed base subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    base: FgProfiniteGroup,
    coords: Vec<PrimeMap<Coord>>,
}

impl LatticeElement {
    /// The base subgroup itself. Every row of its standard form must be infinite.
    pub fn from_base(base: &FgProfiniteGroup) -> Result<Self> {
        let base = base.standardize();
        if let Some(j) = base.rows().iter().position(SupernaturalNumber::is_integer) {
            return Err(Error::FiniteBaseRow(j));
        }
        let coords = base.rows().iter().map(|r| r.as_map().map(|e| Coord::of_base(*e))).collect();
        Ok(LatticeElement { base, coords })
    }

    /// Base plus explicit coordinates: `(row, prime, a)` for free offsets and
    /// `(row, prime, b)` for torsion levels. Rows are indexed from 0.
    pub fn from_parts(
        base: &FgProfiniteGroup,
        free_offsets: &[(usize, u64, i64)],
        torsion_levels: &[(usize, u64, u64)],
    ) -> Result<Self> {
        let mut x = Self::from_base(base)?;
        let entries = free_offsets
            .iter()
            .map(|&(j, p, a)| (j, p, Coord::Free(a)))
            .chain(torsion_levels.iter().map(|&(j, p, b)| (j, p, Coord::Torsion(b))));
        for (j, p, c) in entries {
            check_prime(p)?;
            let row = x
                .coords
                .get_mut(j)
                .ok_or_else(|| Error::InvalidLattice(format!("row {j} out of range")))?;
            if !row.get(p).same_kind(c) {
                let what = if matches!(c, Coord::Free(_)) { "free offset" } else { "torsion level" };
                return Err(Error::InvalidLattice(format!(
                    "{what} given at ({j}, {p}), which is not that kind of coordinate of the base"
                )));
            }
            row.set(p, c);
        }
        Ok(x)
    }

    pub fn base(&self) -> &FgProfiniteGroup {
        &self.base
    }

    pub fn coord(&self, row: usize, p: u64) -> Coord {
        *self.coords[row].get(p)
    }

    /// Nonzero free offsets as `(row, prime, a)`, sorted.
    pub fn free_offsets(&self) -> Vec<(usize, u64, i64)> {
        self.entries()
            .filter_map(|(j, p, c)| match c {
                Coord::Free(a) => Some((j, p, a)),
                Coord::Torsion(_) => None,
            })
            .collect()
    }

    /// Torsion levels differing from the base, as `(row, prime, b)`, sorted.
    pub fn torsion_levels(&self) -> Vec<(usize, u64, u64)> {
        self.entries()
            .filter_map(|(j, p, c)| match c {
                Coord::Torsion(b) => Some((j, p, b)),
                Coord::Free(_) => None,
            })
            .collect()
    }

    // Coordinates that differ from the base, sorted by (row, prime).
    fn entries(&self) -> impl Iterator<Item = (usize, u64, Coord)> + '_ {
        self.coords.iter().enumerate().flat_map(move |(j, row)| {
            let base_row = self.base.rows()[j].as_map();
            exceptional_primes([row])
                .union(&exceptional_primes([base_row]))
                .map(|&p| (j, p, *row.get(p)))
                .filter(|&(_, p, c)| c != Coord::of_base(*base_row.get(p)))
                .collect::<Vec<_>>()
        })
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base.rows() == other.base.rows() {
            Ok(())
        } else {
            Err(Error::MismatchedBase)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(Coord, Coord) -> Coord) -> Result<Self> {
        self.check_base(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.zip_with(b, |x, y| f(*x, *y)))
            .collect();
        Ok(LatticeElement { base: self.base.clone(), coords })
    }

    /// `x ∩ y`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip(other, Coord::intersect)
    }

    /// `x + y`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip(other, Coord::sum)
    }

    /// `x ⊆ y`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_base(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.all_with(b, |x, y| x.contained_in(*y))))
    }

    /// `[y : x]` for `x ⊆ y`.
    pub fn index(&self, over: &Self) -> Result<u128> {
        if !self.leq(over)? {
            return Err(Error::NotContained);
        }
        let mut index = 1u128;
        for (x, y) in self.coords.iter().zip(&over.coords) {
            for p in exceptional_primes([x, y]) {
                let e = match (*x.get(p), *y.get(p)) {
                    (Coord::Free(a), Coord::Free(b)) => (a - b) as u64,
                    (Coord::Torsion(a), Coord::Torsion(b)) => b - a,
                    _ => unreachable!("coordinates of different kinds"),
                };
                index = checked_prime_power(p, e)
                    .and_then(|q| index.checked_mul(q))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(index)
    }

    fn map_valuations(
        &self,
        k: u64,
        f: impl Fn(Coord, u64) -> Option<Coord>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidScalar(0));
        }
        let factors = factorize(k);
        let mut coords = self.coords.clone();
        for row in &mut coords {
            for (&p, &v) in &factors {
                let c = f(*row.get(p), v.into()).ok_or(Error::Overflow)?;
                row.set(p, c);
            }
        }
        Ok(LatticeElement { base: self.base.clone(), coords })
    }

    /// `kx`.
    pub fn scale(&self, k: u64) -> Result<Self> {
        self.map_valuations(k, |c, v| match c {
            Coord::Free(a) => a.checked_add(v as i64).map(Coord::Free),
            Coord::Torsion(b) => Some(Coord::Torsion(b.saturating_sub(v))),
        })
    }

    /// `μ_n^{-1}[x]`.
    pub fn preimage_mu(&self, n: u64) -> Result<Self> {
        self.map_valuations(n, |c, v| match c {
            Coord::Free(a) => a.checked_sub(v as i64).map(Coord::Free),
            Coord::Torsion(b) => b.checked_add(v).map(Coord::Torsion),
        })
    }

    /// The least `k > 0` with `kx ⊆ y`.
    pub fn find_conductor(&self, target: &Self) -> Result<u128> {
        self.check_base(target)?;
        let mut need: BTreeMap<u64, u64> = BTreeMap::new();
        for (x, y) in self.coords.iter().zip(&target.coords) {
            for p in exceptional_primes([x, y]) {
                let v = match (*x.get(p), *y.get(p)) {
                    (Coord::Free(a), Coord::Free(b)) => b.saturating_sub(a).max(0) as u64,
                    (Coord::Torsion(a), Coord::Torsion(b)) => a.saturating_sub(b),
                    _ => unreachable!("coordinates of different kinds"),
                };
                let slot = need.entry(p).or_insert(0);
                *slot = (*slot).max(v);
            }
        }
        need.into_iter().try_fold(1u128, |acc, (p, v)| {
            checked_prime_power(p, v).and_then(|q| acc.checked_mul(q)).ok_or(Error::Overflow)
        })
    }

    /// The element as an abstract profinite group: `Ẑ_p` at free coordinates
    /// and `ℤ(p^b)` at torsion coordinates.
    pub fn realize(&self) -> FgProfiniteGroup {
        FgProfiniteGroup::new(
            self.coords
                .iter()
                .map(|row| {
                    SupernaturalNumber::from_map(row.map(|c| match c {
                        Coord::Free(_) => Exponent::Inf,
                        Coord::Torsion(b) => Exponent::Finite(*b),
                    }))
                })
                .collect(),
        )
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_lattice(self))
    }
}

impl std::str::FromStr for LatticeElement {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::dsl::parse_lattice(s)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    base: FgProfiniteGroup,
    #[serde(default)]
    free_offsets: Vec<(usize, u64, i64)>,
    #[serde(default)]
    torsion_levels: Vec<(usize, u64, u64)>,
}

impl Serialize for LatticeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            base: self.base.clone(),
            free_offsets: self.free_offsets(),
            torsion_levels: self.torsion_levels(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LatticeJson::deserialize(d)?;
        LatticeElement::from_parts(&j.base, &j.free_offsets, &j.torsion_levels)
            .map_err(serde::de::Error::custom)
    }
}
