//! Supernatural numbers `∏ p^{n_p}` with exponents in `ℕ ∪ {∞}`.
//!
//! Only eventually-constant supernatural numbers are representable: all
//! exponents equal a common default except at finitely many primes. This
//! class is closed under products, pointwise minima and the normal-form
//! manipulations of profinite groups, and every predicate on it is decidable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_map::PrimeMap;
use crate::primes::{is_prime, MAX_PRIME};

/// An exponent: a natural number or `∞`.
///
/// The derived order puts every finite value below `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Inf,
}

pub use Exponent::Inf as INF;

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Exponent::Finite(n) => Some(n),
            Exponent::Inf => None,
        }
    }

    /// `k + ∞ = ∞ + k = ∞`; `None` on overflow of finite values.
    pub fn checked_add(self, other: Exponent) -> Option<Exponent> {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.checked_add(b).map(Exponent::Finite),
            _ => Some(Exponent::Inf),
        }
    }

    /// `max(n - k, 0)`, with `∞` fixed.
    pub fn saturating_sub(self, k: u64) -> Exponent {
        match self {
            Exponent::Finite(n) => Exponent::Finite(n.saturating_sub(k)),
            Exponent::Inf => Exponent::Inf,
        }
    }
}

impl From<u64> for Exponent {
    fn from(n: u64) -> Self {
        Exponent::Finite(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" => Ok(Exponent::Inf),
            t => t
                .parse::<u64>()
                .map(Exponent::Finite)
                .map_err(|_| format!("bad exponent {s:?}: expected a natural number or \"inf\"")),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Exponent::Finite(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An eventually-constant supernatural number.
///
/// Also serves as the characteristic of a rank-1 torsion-free group, and as
/// one row `∏_p Ẑ(p^{n_p})` of a finitely generated profinite group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SnJson", into = "SnJson")]
pub struct SupernaturalNumber(PrimeMap<Exponent>);

#[derive(Serialize, Deserialize)]
struct SnJson {
    default: Exponent,
    #[serde(default)]
    exceptions: BTreeMap<u64, Exponent>,
}

impl TryFrom<SnJson> for SupernaturalNumber {
    type Error = Error;

    fn try_from(j: SnJson) -> Result<Self> {
        SupernaturalNumber::new(j.default, j.exceptions)
    }
}

impl From<SupernaturalNumber> for SnJson {
    fn from(n: SupernaturalNumber) -> Self {
        SnJson { default: n.default_exponent(), exceptions: n.0.exceptions().clone() }
    }
}

pub(crate) fn check_prime(p: u64) -> Result<u64> {
    if p <= MAX_PRIME && is_prime(p) {
        Ok(p)
    } else {
        Err(Error::InvalidPrime(p))
    }
}

impl SupernaturalNumber {
    /// The constant `1 = ∏ p^0`.
    pub fn one() -> Self {
        Self::constant(Exponent::ZERO)
    }

    /// `∏ p^∞`, the characteristic of `ℚ` and the row of `Ẑ`.
    pub fn all_inf() -> Self {
        Self::constant(Exponent::Inf)
    }

    pub fn constant(default: Exponent) -> Self {
        SupernaturalNumber(PrimeMap::constant(default))
    }

    /// Builds the canonical form, rejecting non-prime keys.
    pub fn new(
        default: Exponent,
        exceptions: impl IntoIterator<Item = (u64, Exponent)>,
    ) -> Result<Self> {
        let mut map = PrimeMap::constant(default);
        for (p, e) in exceptions {
            map.set(check_prime(p)?, e);
        }
        Ok(SupernaturalNumber(map))
    }

    /// `∏ p^{e}` over the listed primes, exponent 0 elsewhere.
    pub fn from_factors(factors: impl IntoIterator<Item = (u64, Exponent)>) -> Result<Self> {
        Self::new(Exponent::ZERO, factors)
    }

    pub(crate) fn from_map(map: PrimeMap<Exponent>) -> Self {
        SupernaturalNumber(map)
    }

    pub(crate) fn as_map(&self) -> &PrimeMap<Exponent> {
        &self.0
    }

    pub fn default_exponent(&self) -> Exponent {
        *self.0.default_value()
    }

    /// The finitely many primes whose exponent differs from the default.
    pub fn exceptions(&self) -> &BTreeMap<u64, Exponent> {
        self.0.exceptions()
    }

    /// `n_p`.
    pub fn exponent(&self, p: u64) -> Result<Exponent> {
        check_prime(p)?;
        Ok(self.at(p))
    }

    /// `n_p` without the primality check; callers guarantee `p` is prime.
    pub(crate) fn at(&self, p: u64) -> Exponent {
        *self.0.get(p)
    }

    /// `r·n = ∏ p^{r_p + n_p}`, or `None` if a finite exponent overflows.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut overflow = false;
        let map = self.0.zip_with(&other.0, |a, b| {
            a.checked_add(*b).unwrap_or_else(|| {
                overflow = true;
                Exponent::ZERO
            })
        });
        (!overflow).then_some(SupernaturalNumber(map))
    }

    /// Pointwise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        SupernaturalNumber(self.0.zip_with(&other.0, |a, b| *a.min(b)))
    }

    /// Pointwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        SupernaturalNumber(self.0.zip_with(&other.0, |a, b| *a.max(b)))
    }

    /// `self | other`, i.e. `self_p <= other_p` at every prime.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.all_with(&other.0, |a, b| a <= b)
    }

    /// The predicate `n < ∞`: every exponent is finite.
    ///
    /// This does not mean the formal product is an integer; `{default 1}` is
    /// finite in this sense.
    pub fn is_finite(&self) -> bool {
        self.0.values().all(|e| e.is_finite())
    }

    /// Whether `Δ(n) = ∏_p Ẑ(p^{n_p})` is a finite group, i.e. `n` is an
    /// ordinary positive integer. Equivalent to being type-equivalent to 1.
    pub fn is_integer(&self) -> bool {
        self.default_exponent().is_zero() && self.exceptions().values().all(|e| e.is_finite())
    }

    /// The integer named by `self` when it is one and fits in `u128`.
    pub fn to_integer(&self) -> Option<u128> {
        if !self.is_integer() {
            return None;
        }
        self.exceptions().iter().try_fold(1u128, |acc, (&p, e)| {
            crate::primes::checked_prime_power(p, e.finite()?).and_then(|q| acc.checked_mul(q))
        })
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Characteristics `a`, `b` have the same type: they differ at only
    /// finitely many primes, and only where both exponents are finite.
    ///
    /// On eventually-constant data this means equal defaults and finite values
    /// on both sides at every exceptional prime where they disagree.
    pub fn type_equivalent(&self, other: &Self) -> bool {
        self.default_exponent() == other.default_exponent()
            && self.0.all_with(&other.0, |a, b| a == b || (a.is_finite() && b.is_finite()))
    }
}

impl Default for SupernaturalNumber {
    fn default() -> Self {
        Self::one()
    }
}

impl Mul for &SupernaturalNumber {
    type Output = SupernaturalNumber;

    /// Panics if a finite exponent overflows `u64`; see
    /// [`SupernaturalNumber::checked_mul`].
    fn mul(self, rhs: Self) -> SupernaturalNumber {
        self.checked_mul(rhs).expect("supernatural exponent overflow")
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_sn(self))
    }
}

impl FromStr for SupernaturalNumber {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::dsl::parse_sn(s)
    }
}
