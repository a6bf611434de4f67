//! Exact symbolic computation with supernatural numbers, finitely generated
//! profinite abelian groups, completely factorable protori and their
//! Pontryagin duals, completely decomposable torsion-free groups.
//!
//! A finitely generated profinite abelian group is carried as a product of
//! rows `Δ(r) = ∏_p ℤ_p/p^{r_p}ℤ_p` indexed by supernatural numbers `r`.
//!
//! ```
//! use protori::{FgProfiniteGroup, SupernaturalNumber};
//!
//! let g: FgProfiniteGroup = "prod[2^inf * 3^2, rest = inf]".parse().unwrap();
//! let q = g.quotient_mod_k(12).unwrap();
//! assert_eq!(q.standardize().to_string(), "prod[2^2 * 3^1, 2^2 * 3^1]");
//! assert!(q.is_finite());
//!
//! let n: SupernaturalNumber = "3^2 ; rest = inf".parse().unwrap();
//! let m: SupernaturalNumber = "3^7 ; rest = inf".parse().unwrap();
//! assert!(n.type_equivalent(&m));
//! assert!(!n.type_equivalent(&SupernaturalNumber::all_inf()));
//! ```

pub mod cli;
pub mod decomposable;
pub mod dsl;
pub mod error;
pub mod lattice;
pub mod prime_map;
pub mod primes;
pub mod profinite;
pub mod protorus;
pub mod selftest;
pub mod supernatural;
pub mod truncation;

pub use decomposable::CdGroupDescriptor;
pub use error::{Error, Result};
pub use lattice::{Coord, LatticeElement};
pub use prime_map::PrimeMap;
pub use profinite::{FgProfiniteGroup, KernelDescriptor, KernelFactor, NaInvariants};
pub use protorus::{ProtorusDescriptor, TildeDeltaStructure};
pub use supernatural::{Exponent, SupernaturalNumber, INF};
pub use truncation::FiniteAbelianGroup;
