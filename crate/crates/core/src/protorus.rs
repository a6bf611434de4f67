//! Completely factorable protori `ℚ^∨^a × 𝕋^b × S_1 × ⋯ × S_k`, where each
//! `S_i = [Δ(χ_i) × ℝ] / ℤ(1, 1)` is the solenoid with characteristic `χ_i`.
//!
//! Descriptors are exact up to topological isomorphism of the factors; no
//! gluing data is stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::prime_map::PrimeMap;
use crate::profinite::{FgProfiniteGroup, KernelDescriptor};
use crate::supernatural::{Exponent, SupernaturalNumber};

/// Whether two multisets of characteristics agree up to type equivalence.
///
/// Type equivalence is an equivalence relation, so greedy matching is exact.
pub fn type_multisets_match(a: &[SupernaturalNumber], b: &[SupernaturalNumber]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut unused: Vec<&SupernaturalNumber> = b.iter().collect();
    a.iter().all(|x| match unused.iter().position(|y| x.type_equivalent(y)) {
        Some(i) => {
            unused.swap_remove(i);
            true
        }
        None => false,
    })
}

/// Descriptor of a completely factorable protorus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProtorusJson", into = "ProtorusJson")]
pub struct ProtorusDescriptor {
    divisible_rank: usize,
    torus_rank: usize,
    solenoids: Vec<SupernaturalNumber>,
}

#[derive(Serialize, Deserialize)]
struct ProtorusJson {
    divisible_rank: usize,
    torus_rank: usize,
    #[serde(default)]
    solenoids: Vec<SupernaturalNumber>,
}

impl TryFrom<ProtorusJson> for ProtorusDescriptor {
    type Error = Error;

    fn try_from(j: ProtorusJson) -> Result<Self> {
        ProtorusDescriptor::new(j.divisible_rank, j.torus_rank, j.solenoids)
    }
}

impl From<ProtorusDescriptor> for ProtorusJson {
    fn from(k: ProtorusDescriptor) -> Self {
        ProtorusJson {
            divisible_rank: k.divisible_rank,
            torus_rank: k.torus_rank,
            solenoids: k.solenoids,
        }
    }
}

/// `K ≅ K_ℚ × K_𝕋 × G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub divisible_rank: usize,
    pub torus_rank: usize,
    pub torus_free_part: ProtorusDescriptor,
}

/// The ranks of the `p`-primary part `ℚ̂_p^r × ℤ(p^∞)^c` of `Δ̃_G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimaryRanks {
    pub padic_rank: usize,
    pub torsion_rank: usize,
}

/// `Δ̃_G ≅ ∏_p [ℚ̂_p^{r_p} × ℤ(p^∞)^{c_p}]`, eventually constant in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeDeltaStructure {
    ranks: PrimeMap<PrimaryRanks>,
    dim_na: usize,
}

impl TildeDeltaStructure {
    pub fn at(&self, p: u64) -> PrimaryRanks {
        *self.ranks.get(p)
    }

    pub fn padic_rank(&self, p: u64) -> usize {
        self.at(p).padic_rank
    }

    pub fn torsion_rank(&self, p: u64) -> usize {
        self.at(p).torsion_rank
    }

    pub fn dim_na(&self) -> usize {
        self.dim_na
    }

    pub fn ranks(&self) -> &PrimeMap<PrimaryRanks> {
        &self.ranks
    }

    /// `tor(G) ≅ ⊕_p ℤ(p^∞)^{c_p}` as the map `p ↦ c_p`.
    pub fn torsion(&self) -> PrimeMap<usize> {
        self.ranks.map(|r| r.torsion_rank)
    }
}

/// The data produced when a profinite group is embedded in a protorus with
/// torus quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfiniteEmbedding {
    pub protorus: ProtorusDescriptor,
    /// The infinite rows, embedded in the solenoid factors.
    pub lattice: LatticeElement,
    /// The finite rows `ℤ(r) ≅ (1/r)ℤ/ℤ`, one per torus factor.
    pub torus_subgroups: Vec<SupernaturalNumber>,
}

impl ProfiniteEmbedding {
    /// The embedded subgroup `Δ` as an abstract group.
    pub fn subgroup(&self) -> FgProfiniteGroup {
        self.lattice.realize().product(&FgProfiniteGroup::new(self.torus_subgroups.clone()))
    }
}

/// `K ↣ Ẑ^r ↠ Δ(n)` for a torus-free protorus of dimension `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveResolution {
    pub kernel: KernelDescriptor,
    pub free_rank: usize,
}

impl ProtorusDescriptor {
    /// Rejects characteristics naming a finite group (type-equivalent to 1),
    /// since such a "solenoid" is a torus.
    pub fn new(
        divisible_rank: usize,
        torus_rank: usize,
        solenoids: Vec<SupernaturalNumber>,
    ) -> Result<Self> {
        if let Some(bad) = solenoids.iter().find(|c| c.is_integer()) {
            return Err(Error::InvalidCharacteristic(
                bad.to_string(),
                "type-equivalent to 1, so the factor is a torus",
            ));
        }
        let mut solenoids = solenoids;
        solenoids.sort();
        Ok(ProtorusDescriptor { divisible_rank, torus_rank, solenoids })
    }

    /// Like [`new`](Self::new) but converts characteristics of finite groups
    /// into torus factors.
    pub fn from_factors(
        divisible_rank: usize,
        torus_rank: usize,
        characteristics: Vec<SupernaturalNumber>,
    ) -> Self {
        let (tori, solenoids): (Vec<_>, Vec<_>) =
            characteristics.into_iter().partition(SupernaturalNumber::is_integer);
        Self::new(divisible_rank, torus_rank + tori.len(), solenoids)
            .expect("finite characteristics were moved to the torus part")
    }

    pub fn torus(n: usize) -> Self {
        ProtorusDescriptor { divisible_rank: 0, torus_rank: n, solenoids: Vec::new() }
    }

    pub fn solenoid(characteristic: SupernaturalNumber) -> Result<Self> {
        Self::new(0, 0, vec![characteristic])
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible_rank
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Solenoid characteristics, sorted.
    pub fn solenoids(&self) -> &[SupernaturalNumber] {
        &self.solenoids
    }

    /// Product of protori.
    pub fn product(&self, other: &Self) -> Self {
        let mut solenoids = self.solenoids.clone();
        solenoids.extend(other.solenoids.iter().cloned());
        solenoids.sort();
        ProtorusDescriptor {
            divisible_rank: self.divisible_rank + other.divisible_rank,
            torus_rank: self.torus_rank + other.torus_rank,
            solenoids,
        }
    }

    /// Moves solenoids with characteristic `∏ p^∞` (which are copies of
    /// `ℚ^∨`) into the divisible part.
    pub fn canonical(&self) -> Self {
        let (full, solenoids): (Vec<_>, Vec<_>) =
            self.solenoids.iter().cloned().partition(|c| *c == SupernaturalNumber::all_inf());
        ProtorusDescriptor {
            divisible_rank: self.divisible_rank + full.len(),
            torus_rank: self.torus_rank,
            solenoids,
        }
    }

    /// Builds a completely factorable protorus containing `D` as a closed
    /// subgroup with torus quotient: one circle per finite row of the standard
    /// representation and one solenoid per infinite row.
    pub fn from_profinite(d: &FgProfiniteGroup) -> ProfiniteEmbedding {
        let std = d.standardize();
        let (finite, infinite): (Vec<_>, Vec<_>) =
            std.rows().iter().cloned().partition(SupernaturalNumber::is_integer);
        let protorus = ProtorusDescriptor::new(0, finite.len(), infinite.clone())
            .expect("infinite rows are valid solenoid characteristics");
        let lattice = LatticeElement::from_base(&FgProfiniteGroup::new(infinite))
            .expect("every base row is infinite");
        ProfiniteEmbedding { protorus, lattice, torus_subgroups: finite }
    }

    pub fn decompose(&self) -> Decomposition {
        Decomposition {
            divisible_rank: self.divisible_rank,
            torus_rank: self.torus_rank,
            torus_free_part: ProtorusDescriptor {
                divisible_rank: 0,
                torus_rank: 0,
                solenoids: self.solenoids.clone(),
            },
        }
    }

    /// `dim_ℝ 𝔏(K)`: one per factor.
    pub fn dim(&self) -> usize {
        self.divisible_rank + self.torus_rank + self.solenoids.len()
    }

    /// Non-Archimedean dimension counted factor by factor: each `ℚ^∨` and
    /// each solenoid contributes 1, circles contribute 0.
    pub fn dim_na(&self) -> usize {
        self.divisible_rank + self.solenoids.len()
    }

    /// The base `∏ Δ(χ_i)` of the torus-free part, one row per `ℚ^∨` factor
    /// (`Ẑ`) and per solenoid, aligned with the factors.
    pub fn base_group(&self) -> FgProfiniteGroup {
        let mut rows = vec![SupernaturalNumber::all_inf(); self.divisible_rank];
        rows.extend(self.solenoids.iter().cloned());
        FgProfiniteGroup::new(rows)
    }

    fn require_torus_free(&self) -> Result<()> {
        match self.torus_rank {
            0 => Ok(()),
            n => Err(Error::NotTorusFree(n)),
        }
    }

    /// `r_p` counts factors whose characteristic is `∞` at `p` (every `ℚ^∨`
    /// factor included); `c_p = dim_na - r_p`.
    pub fn tilde_delta(&self) -> Result<TildeDeltaStructure> {
        self.require_torus_free()?;
        let dim_na = self.dim_na();
        let padic = self
            .solenoids
            .iter()
            .map(|c| c.as_map().map(|e| usize::from(*e == Exponent::Inf)))
            .fold(PrimeMap::constant(self.divisible_rank), |acc, m| {
                acc.zip_with(&m, |a, b| a + b)
            });
        let ranks = padic.map(|&r| PrimaryRanks { padic_rank: r, torsion_rank: dim_na - r });
        Ok(TildeDeltaStructure { ranks, dim_na })
    }

    /// `p ↦ c_p`, the multiplicity of `ℤ(p^∞)` in `tor(G)`.
    pub fn torsion_structure(&self) -> Result<PrimeMap<usize>> {
        Ok(self.tilde_delta()?.torsion())
    }

    /// The kernel of `Ẑ^r ↠ ∏ Δ(χ_i)` with `r = dim`, row by row.
    ///
    /// Panics if the symbolic exactness check fails, which would be a bug.
    pub fn projective_resolution(&self) -> Result<ProjectiveResolution> {
        self.require_torus_free()?;
        let base = self.base_group();
        let kernel = base.row_kernel();
        assert!(
            kernel.width() == self.dim() && kernel.cokernel() == base,
            "projective resolution failed its exactness check"
        );
        Ok(ProjectiveResolution { kernel, free_rank: self.dim() })
    }

    /// Isogeny of completely factorable protori: same divisible and torus
    /// ranks and the same solenoid types with multiplicity.
    pub fn isogenous(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.divisible_rank == b.divisible_rank
            && a.torus_rank == b.torus_rank
            && type_multisets_match(&a.solenoids, &b.solenoids)
    }
}

impl fmt::Display for ProtorusDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::format_protorus(self))
    }
}

impl FromStr for ProtorusDescriptor {
    type Err = crate::dsl::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        crate::dsl::parse_protorus(s)
    }
}
