//! Eventually-constant maps indexed by the primes.

use std::collections::{BTreeMap, BTreeSet};

/// A map `prime -> V` that takes the value `default` at all but finitely many
/// primes.
///
/// The sparse form is canonical: no entry in `exceptions` equals `default`, so
/// structural equality coincides with pointwise equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeMap<V> {
    default: V,
    exceptions: BTreeMap<u64, V>,
}

impl<V: Clone + Eq> PrimeMap<V> {
    pub fn constant(default: V) -> Self {
        Self { default, exceptions: BTreeMap::new() }
    }

    /// Builds a canonical map. Keys are not checked for primality here.
    pub fn from_parts(default: V, exceptions: impl IntoIterator<Item = (u64, V)>) -> Self {
        let mut map = Self::constant(default);
        for (p, v) in exceptions {
            map.set(p, v);
        }
        map
    }

    pub fn default_value(&self) -> &V {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, V> {
        &self.exceptions
    }

    pub fn get(&self, p: u64) -> &V {
        self.exceptions.get(&p).unwrap_or(&self.default)
    }

    pub fn set(&mut self, p: u64, value: V) {
        if value == self.default {
            self.exceptions.remove(&p);
        } else {
            self.exceptions.insert(p, value);
        }
    }

    /// Every value the map takes (the default first, then exceptions by prime).
    pub fn values(&self) -> impl Iterator<Item = &V> {
        std::iter::once(&self.default).chain(self.exceptions.values())
    }

    pub fn map<W: Clone + Eq>(&self, mut f: impl FnMut(&V) -> W) -> PrimeMap<W> {
        PrimeMap::from_parts(
            f(&self.default),
            self.exceptions.iter().map(|(&p, v)| (p, f(v))),
        )
    }

    /// Pointwise combination: the result at `p` is `f(self[p], other[p])`.
    pub fn zip_with<U: Clone + Eq, W: Clone + Eq>(
        &self,
        other: &PrimeMap<U>,
        mut f: impl FnMut(&V, &U) -> W,
    ) -> PrimeMap<W> {
        let keys: BTreeSet<u64> =
            self.exceptions.keys().chain(other.exceptions.keys()).copied().collect();
        PrimeMap::from_parts(
            f(&self.default, &other.default),
            keys.into_iter().map(|p| (p, f(self.get(p), other.get(p)))),
        )
    }

    /// Whether `pred(self[p], other[p])` holds at every prime.
    pub fn all_with<U: Clone + Eq>(
        &self,
        other: &PrimeMap<U>,
        mut pred: impl FnMut(&V, &U) -> bool,
    ) -> bool {
        pred(&self.default, &other.default)
            && self
                .exceptions
                .keys()
                .chain(other.exceptions.keys())
                .all(|&p| pred(self.get(p), other.get(p)))
    }
}

/// Union of the exceptional primes of several maps.
pub fn exceptional_primes<'a, V: 'a>(maps: impl IntoIterator<Item = &'a PrimeMap<V>>) -> BTreeSet<u64> {
    maps.into_iter().flat_map(|m| m.exceptions.keys().copied()).collect()
}
