//! Completely decomposable torsion-free groups `ℚ^a ⊕ ℤ^b ⊕ R(τ_1) ⊕ ⋯`
//! and the duality with completely factorable protori.
//!
//! Under Pontryagin duality `ℚ ↔ ℚ^∨`, `ℤ ↔ 𝕋`, and the rank-1 group with
//! characteristic `χ` corresponds to the solenoid with characteristic `χ`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protorus::{type_multisets_match, ProtorusDescriptor};
use crate::supernatural::SupernaturalNumber;

/// Descriptor of a completely decomposable finite-rank torsion-free group.
///
/// Stored types are never the type of `ℤ` (those live in `free_rank`) nor
/// the type of `ℚ` (those live in `divisible_rank`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CdJson", into = "CdJson")]
pub struct CdGroupDescriptor {
    divisible_rank: usize,
    free_rank: usize,
    types: Vec<SupernaturalNumber>,
}

#[derive(Serialize, Deserialize)]
struct CdJson {
    divisible_rank: usize,
    free_rank: usize,
    #[serde(default)]
    types: Vec<SupernaturalNumber>,
}

impl TryFrom<CdJson> for CdGroupDescriptor {
    type Error = Error;

    fn try_from(j: CdJson) -> Result<Self> {
        CdGroupDescriptor::new(j.divisible_rank, j.free_rank, j.types)
    }
}

impl From<CdGroupDescriptor> for CdJson {
    fn from(a: CdGroupDescriptor) -> Self {
        CdJson { divisible_rank: a.divisible_rank, free_rank: a.free_rank, types: a.types }
    }
}

impl CdGroupDescriptor {
    pub fn new(
        divisible_rank: usize,
        free_rank: usize,
        types: Vec<SupernaturalNumber>,
    ) -> Result<Self> {
        for t in &types {
            if t.is_integer() {
                return Err(Error::InvalidCharacteristic(
                    t.to_string(),
                    "type of ℤ; count it in the free rank",
                ));
            }
            if *t == SupernaturalNumber::all_inf() {
                return Err(Error::InvalidCharacteristic(
                    t.to_string(),
                    "type of ℚ; count it in the divisible rank",
                ));
            }
        }
        let mut types = types;
        types.sort();
        Ok(CdGroupDescriptor { divisible_rank, free_rank, types })
    }

    /// `⊕ R(χ)` over the given characteristics, routing `ℤ`-types to the
    /// free rank and the `ℚ`-type to the divisible rank.
    pub fn from_summands(characteristics: impl IntoIterator<Item = SupernaturalNumber>) -> Self {
        let mut a = CdGroupDescriptor { divisible_rank: 0, free_rank: 0, types: Vec::new() };
        for c in characteristics {
            if c.is_integer() {
                a.free_rank += 1;
            } else if c == SupernaturalNumber::all_inf() {
                a.divisible_rank += 1;
            } else {
                a.types.push(c);
            }
        }
        a.types.sort();
        a
    }

    pub fn integers() -> Self {
        CdGroupDescriptor { divisible_rank: 0, free_rank: 1, types: Vec::new() }
    }

    pub fn rationals() -> Self {
        CdGroupDescriptor { divisible_rank: 1, free_rank: 0, types: Vec::new() }
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible_rank
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn types(&self) -> &[SupernaturalNumber] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.divisible_rank + self.free_rank + self.types.len()
    }

    /// The Pontryagin dual.
    pub fn dual(&self) -> ProtorusDescriptor {
        ProtorusDescriptor::new(self.divisible_rank, self.free_rank, self.types.clone())
            .expect("types are never type-equivalent to 1")
    }

    /// The Pontryagin dual of a completely factorable protorus. Solenoids
    /// with characteristic `∏ p^∞` are copies of `ℚ^∨` and dualize to `ℚ`.
    pub fn from_dual(k: &ProtorusDescriptor) -> Self {
        let k = k.canonical();
        CdGroupDescriptor {
            divisible_rank: k.divisible_rank(),
            free_rank: k.torus_rank(),
            types: k.solenoids().to_vec(),
        }
    }

    /// Quasi-isomorphism: equal divisible and free ranks and the same types
    /// with multiplicity.
    pub fn quasi_isomorphic(&self, other: &Self) -> bool {
        self.divisible_rank == other.divisible_rank
            && self.free_rank == other.free_rank
            && type_multisets_match(&self.types, &other.types)
    }

    /// A completely decomposable group quasi-isomorphic to `K^∨` when
    /// `dim K = dim_nA K`.
    ///
    /// The types are the row characteristics of the factor-aligned base
    /// `∏ Δ(χ_i)` of `K`, with `Ẑ`-rows routed to the divisible rank.
    pub fn acd_witness(k: &ProtorusDescriptor) -> Result<Self> {
        let (dim, dim_na) = (k.dim(), k.dim_na());
        if dim != dim_na {
            return Err(Error::DimMismatch { dim, dim_na });
        }
        let base = k.base_group();
        debug_assert!(base.rows().iter().all(|r| !r.is_integer()));
        Ok(Self::from_summands(base.rows().iter().cloned()))
    }
}

impl fmt::Display for CdGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_cd(self))
    }
}

impl FromStr for CdGroupDescriptor {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::dsl::parse_cd(s)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::supernatural::Exponent::{self, Finite as F};
    use crate::supernatural::INF;
    use proptest::prelude::*;

    fn sn(default: Exponent, ex: &[(u64, Exponent)]) -> SupernaturalNumber {
        SupernaturalNumber::new(default, ex.iter().copied()).unwrap()
    }

    #[test]
    fn constructor_invariants() {
        assert!(CdGroupDescriptor::new(0, 0, vec![sn(F(0), &[(3, F(1))])]).is_err());
        assert!(CdGroupDescriptor::new(0, 0, vec![SupernaturalNumber::all_inf()]).is_err());
        let a = CdGroupDescriptor::from_summands([
            SupernaturalNumber::all_inf(),
            SupernaturalNumber::one(),
            sn(F(0), &[(2, INF)]),
        ]);
        assert_eq!((a.divisible_rank(), a.free_rank(), a.types().len()), (1, 1, 1));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(CdGroupDescriptor::integers().dual(), ProtorusDescriptor::torus(1));
        assert_eq!(
            CdGroupDescriptor::rationals().dual(),
            ProtorusDescriptor::new(1, 0, vec![]).unwrap()
        );
        let t = sn(F(0), &[(2, INF)]);
        let a = CdGroupDescriptor::new(0, 0, vec![t.clone()]).unwrap();
        assert_eq!(a.dual(), ProtorusDescriptor::solenoid(t).unwrap());
        assert_eq!(CdGroupDescriptor::from_dual(&a.dual()), a);
    }

    #[test]
    fn from_dual_examples() {
        assert_eq!(CdGroupDescriptor::from_dual(&ProtorusDescriptor::torus(1)), CdGroupDescriptor::integers());
        let q = ProtorusDescriptor::new(1, 0, vec![]).unwrap();
        assert_eq!(CdGroupDescriptor::from_dual(&q), CdGroupDescriptor::rationals());
        let full = ProtorusDescriptor::solenoid(SupernaturalNumber::all_inf()).unwrap();
        assert_eq!(CdGroupDescriptor::from_dual(&full), CdGroupDescriptor::rationals());
    }

    #[test]
    fn quasi_isomorphism_examples() {
        let a = CdGroupDescriptor::new(1, 2, vec![sn(F(1), &[])]).unwrap();
        assert!(a.quasi_isomorphic(&a));
        assert!(!CdGroupDescriptor::integers().quasi_isomorphic(&CdGroupDescriptor::rationals()));
        let x = CdGroupDescriptor::new(0, 0, vec![sn(F(0), &[(2, INF)])]).unwrap();
        let y = CdGroupDescriptor::new(0, 0, vec![sn(F(0), &[(2, INF), (5, F(3))])]).unwrap();
        assert!(x.quasi_isomorphic(&y));
    }

    #[test]
    fn acd_witness_examples() {
        let k = ProtorusDescriptor::new(0, 0, vec![sn(F(1), &[(2, INF)]), sn(F(0), &[(3, INF)])])
            .unwrap();
        let w = CdGroupDescriptor::acd_witness(&k).unwrap();
        assert_eq!(w, CdGroupDescriptor::from_dual(&k));

        let zhat2 = crate::profinite::FgProfiniteGroup::zhat_power(2);
        let k = ProtorusDescriptor::from_profinite(&zhat2).protorus;
        assert_eq!(CdGroupDescriptor::acd_witness(&k).unwrap(), CdGroupDescriptor::new(2, 0, vec![]).unwrap());

        assert_eq!(
            CdGroupDescriptor::acd_witness(&ProtorusDescriptor::torus(1)),
            Err(Error::DimMismatch { dim: 1, dim_na: 0 })
        );
    }

    pub(crate) fn arb_cd() -> impl Strategy<Value = CdGroupDescriptor> {
        (0usize..3, 0usize..3, prop::collection::vec(crate::protorus::tests::arb_characteristic(), 0..4))
            .prop_map(|(a, b, t)| {
                let mut g = CdGroupDescriptor::from_summands(t);
                g.divisible_rank += a;
                g.free_rank += b;
                g
            })
    }

    proptest! {
        #[test]
        fn duality_round_trips(a in arb_cd()) {
            prop_assert_eq!(CdGroupDescriptor::from_dual(&a.dual()), a.clone());
            let k = a.dual();
            prop_assert_eq!(CdGroupDescriptor::from_dual(&k).dual(), k);
        }

        #[test]
        fn quasi_isomorphism_matches_dual_isogeny(a in arb_cd(), b in arb_cd()) {
            prop_assert_eq!(a.quasi_isomorphic(&b), a.dual().isogenous(&b.dual()));
        }
    }
}
