//! Seeded randomized self-checks: the truncation-oracle sweep plus the
//! algebraic properties of every module.
//!
//! [`gen`] holds the value generators; they take any [`rand::Rng`] so runs are
//! reproducible from a seed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposable::CdGroupDescriptor;
use crate::dsl;
use crate::lattice::LatticeElement;
use crate::profinite::FgProfiniteGroup;
use crate::protorus::ProtorusDescriptor;
use crate::supernatural::{Exponent, SupernaturalNumber, INF};
use crate::truncation::{truncate, ENUMERATION_LIMIT};

/// Primes the generators draw exceptional exponents from.
pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Truncation cap used by the oracle sweep.
pub const CAP: u32 = 8;

pub mod gen {
    use super::*;

    /// Uniform over `{0, …, max, ∞}`.
    pub fn exponent(rng: &mut impl Rng, max: u64) -> Exponent {
        let v = rng.gen_range(0..=max + 1);
        if v > max {
            INF
        } else {
            Exponent::Finite(v)
        }
    }

    /// Default and per-prime exponents from `{0..=4, ∞}`, exceptions only at
    /// [`PRIMES`].
    pub fn supernatural(rng: &mut impl Rng) -> SupernaturalNumber {
        let default = exponent(rng, 4);
        let mut ex = Vec::new();
        for p in PRIMES {
            if rng.gen_bool(0.4) {
                ex.push((p, exponent(rng, 4)));
            }
        }
        SupernaturalNumber::new(default, ex).expect("generator primes are prime")
    }

    /// A positive integer supported on [`PRIMES`] with valuations at most 4.
    pub fn scalar(rng: &mut impl Rng) -> u64 {
        let mut k = 1u64;
        for p in PRIMES {
            if rng.gen_bool(0.35) {
                k *= p.pow(rng.gen_range(0..=4));
            }
        }
        k
    }

    pub fn group(rng: &mut impl Rng, max_width: usize) -> FgProfiniteGroup {
        let w = rng.gen_range(0..=max_width);
        FgProfiniteGroup::new((0..w).map(|_| supernatural(rng)).collect())
    }

    /// A finite supernatural number, i.e. a positive integer.
    pub fn integer_row(rng: &mut impl Rng) -> SupernaturalNumber {
        let mut ex = Vec::new();
        for p in PRIMES {
            if rng.gen_bool(0.3) {
                ex.push((p, Exponent::Finite(rng.gen_range(0..=4))));
            }
        }
        SupernaturalNumber::new(Exponent::ZERO, ex).expect("generator primes are prime")
    }

    /// A characteristic that is not type-equivalent to 1.
    pub fn characteristic(rng: &mut impl Rng) -> SupernaturalNumber {
        loop {
            let c = supernatural(rng);
            if !c.is_integer() {
                return c;
            }
        }
    }

    /// A type that is neither that of `ℤ` nor that of `ℚ`.
    pub fn proper_type(rng: &mut impl Rng) -> SupernaturalNumber {
        loop {
            let c = characteristic(rng);
            if c != SupernaturalNumber::all_inf() {
                return c;
            }
        }
    }

    pub fn protorus(rng: &mut impl Rng, torus_free: bool) -> ProtorusDescriptor {
        let torus = if torus_free { 0 } else { rng.gen_range(0..3) };
        let n = rng.gen_range(0..4);
        let sols = (0..n).map(|_| characteristic(rng)).collect();
        ProtorusDescriptor::new(rng.gen_range(0..3), torus, sols).expect("characteristics are not integers")
    }

    pub fn cd(rng: &mut impl Rng) -> CdGroupDescriptor {
        let n = rng.gen_range(0..4);
        let types = (0..n).map(|_| proper_type(rng)).collect();
        CdGroupDescriptor::new(rng.gen_range(0..3), rng.gen_range(0..3), types).expect("types are proper")
    }

    /// A base of width 1 to `max_width` whose standard rows are all
    /// infinite, which nonzero defaults guarantee.
    pub fn lattice_base(rng: &mut impl Rng, max_width: usize) -> FgProfiniteGroup {
        let w = rng.gen_range(1..=max_width);
        let rows = (0..w)
            .map(|_| {
                let r = supernatural(rng);
                let d = match r.default_exponent() {
                    Exponent::Finite(0) => Exponent::Finite(1),
                    d => d,
                };
                SupernaturalNumber::new(d, r.exceptions().clone()).expect("primes are prime")
            })
            .collect();
        FgProfiniteGroup::new(rows)
    }

    fn small_scalar(rng: &mut impl Rng) -> u64 {
        const S: [u64; 14] = [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 30, 36];
        S[rng.gen_range(0..S.len())]
    }

    /// `μ_c^{-1}(b · μ_a^{-1}(base))` for small random `a, b, c`.
    pub fn lattice_element(rng: &mut impl Rng, base: &FgProfiniteGroup) -> LatticeElement {
        LatticeElement::from_base(base)
            .and_then(|x| x.preimage_mu(small_scalar(rng)))
            .and_then(|x| x.scale(small_scalar(rng)))
            .and_then(|x| x.preimage_mu(small_scalar(rng)))
            .expect("generated base rows are infinite")
    }

    pub fn lattice_scalar(rng: &mut impl Rng) -> u64 {
        small_scalar(rng)
    }

    /// A group isogenous to `d`: finite exponents changed at finitely many
    /// primes, finite rows added and removed.
    pub fn perturb(rng: &mut impl Rng, d: &FgProfiniteGroup) -> FgProfiniteGroup {
        let mut rows = Vec::new();
        for r in d.rows() {
            if r.is_integer() && rng.gen_bool(0.3) {
                continue;
            }
            let mut ex = r.exceptions().clone();
            for p in PRIMES {
                if r.at(p).is_finite() && rng.gen_bool(0.3) {
                    ex.insert(p, Exponent::Finite(rng.gen_range(0..=6)));
                }
            }
            rows.push(SupernaturalNumber::new(r.default_exponent(), ex).expect("primes are prime"));
        }
        for _ in 0..rng.gen_range(0..3) {
            rows.insert(rng.gen_range(0..=rows.len()), integer_row(rng));
        }
        FgProfiniteGroup::new(rows)
    }

    /// A group that is not isogenous to `d`: one free `p`-rank or one default
    /// exponent differs.
    pub fn break_isogeny(rng: &mut impl Rng, d: &FgProfiniteGroup) -> FgProfiniteGroup {
        let mut rows = d.rows().to_vec();
        if rows.is_empty() || rng.gen_bool(0.2) {
            // a new infinite row changes a free rank or the default column
            rows.push(characteristic(rng));
            return FgProfiniteGroup::new(rows);
        }
        let j = rng.gen_range(0..rows.len());
        let r = &rows[j];
        let changed = if rng.gen_bool(0.5) {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            let flipped = if r.at(p).is_finite() { INF } else { Exponent::Finite(rng.gen_range(0..=4)) };
            let mut ex = r.exceptions().clone();
            ex.insert(p, flipped);
            SupernaturalNumber::new(r.default_exponent(), ex)
        } else {
            let d = r.default_exponent();
            let other = loop {
                let e = exponent(rng, 4);
                if e != d {
                    break e;
                }
            };
            SupernaturalNumber::new(other, r.exceptions().clone())
        };
        rows[j] = changed.expect("primes are prime");
        FgProfiniteGroup::new(rows)
    }
}

/// The truncation-oracle comparison for one `(D, k)`.
///
/// Returns a description of the disagreement, if any. Both the gcd route and,
/// when the truncated group is small enough, coset enumeration are checked.
pub fn quotient_agrees(d: &FgProfiniteGroup, k: u64) -> Result<(), String> {
    let symbolic = d.quotient_mod_k(k).map_err(|e| e.to_string())?;
    let lhs = truncate(&symbolic, &PRIMES, CAP).map_err(|e| e.to_string())?;
    let small = truncate(d, &PRIMES, CAP).map_err(|e| e.to_string())?;
    let rhs = small.quotient_mod_k(k).map_err(|e| e.to_string())?;
    if !lhs.is_isomorphic(&rhs) {
        return Err(format!("symbolic {lhs} but oracle {rhs}"));
    }
    if let Some(enumerated) = small.quotient_mod_k_enumerated(k) {
        if !enumerated.is_isomorphic(&lhs) {
            return Err(format!("symbolic {lhs} but coset enumeration {enumerated}"));
        }
    }
    Ok(())
}

/// Whether the truncation of `d` is small enough to enumerate.
pub fn enumerable(d: &FgProfiniteGroup) -> bool {
    truncate(d, &PRIMES, CAP)
        .ok()
        .and_then(|g| g.order())
        .is_some_and(|n| n <= ENUMERATION_LIMIT as u128)
}

/// Greedily shrinks a failing group: drops rows, resets exceptions to the
/// default, lowers finite exponents.
pub fn shrink_group(mut g: FgProfiniteGroup, fails: impl Fn(&FgProfiniteGroup) -> bool) -> FgProfiniteGroup {
    'outer: loop {
        for cand in smaller_groups(&g) {
            if fails(&cand) {
                g = cand;
                continue 'outer;
            }
        }
        return g;
    }
}

fn smaller_groups(g: &FgProfiniteGroup) -> Vec<FgProfiniteGroup> {
    let rows = g.rows();
    let mut out = Vec::new();
    for j in 0..rows.len() {
        let mut r = rows.to_vec();
        r.remove(j);
        out.push(FgProfiniteGroup::new(r));
    }
    for (j, row) in rows.iter().enumerate() {
        for (&p, &e) in row.exceptions() {
            let mut variants = Vec::new();
            let mut ex = row.exceptions().clone();
            ex.remove(&p);
            variants.push(SupernaturalNumber::new(row.default_exponent(), ex));
            if let Exponent::Finite(n) = e {
                if n > 0 {
                    let mut ex = row.exceptions().clone();
                    ex.insert(p, Exponent::Finite(n - 1));
                    variants.push(SupernaturalNumber::new(row.default_exponent(), ex));
                }
            }
            for v in variants.into_iter().flatten() {
                let mut r = rows.to_vec();
                r[j] = v;
                out.push(FgProfiniteGroup::new(r));
            }
        }
        if let Exponent::Finite(n) = row.default_exponent() {
            if n > 0 {
                let mut r = rows.to_vec();
                r[j] = SupernaturalNumber::new(Exponent::Finite(n - 1), row.exceptions().clone())
                    .expect("primes are prime");
                out.push(FgProfiniteGroup::new(r));
            }
        }
    }
    out
}

/// Outcome of one named property over a number of random cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// The first counterexample, shrunk where a shrinker exists.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed {}", self.seed)?;
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAILED" };
            writeln!(f, "{:<30} {:>6} cases  {status}", c.name, c.cases)?;
            if let Some(why) = &c.failure {
                writeln!(f, "  counterexample: {why}")?;
            }
        }
        Ok(())
    }
}

fn check<R: Rng>(
    name: &'static str,
    cases: usize,
    rng: &mut R,
    mut one: impl FnMut(&mut R) -> Result<(), String>,
) -> CheckOutcome {
    for _ in 0..cases {
        if let Err(why) = one(rng) {
            return CheckOutcome { name, cases, failure: Some(why) };
        }
    }
    CheckOutcome { name, cases, failure: None }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn group_property(
    name: &'static str,
    cases: usize,
    rng: &mut ChaCha8Rng,
    prop: impl Fn(&FgProfiniteGroup) -> bool,
) -> CheckOutcome {
    check(name, cases, rng, |rng| {
        let g = gen::group(rng, 3);
        ensure(prop(&g), || dsl::format_group(&shrink_group(g.clone(), |h| !prop(h))))
    })
}

/// Runs every property `cases` times from `seed`.
pub fn run(seed: u64, cases: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let mut checks = Vec::new();

    checks.push(check("quotient vs truncation oracle", cases, rng, |rng| {
        let g = gen::group(rng, 3);
        let k = gen::scalar(rng);
        quotient_agrees(&g, k).map_err(|why| {
            let g = shrink_group(g.clone(), |h| quotient_agrees(h, k).is_err());
            format!("k = {k}, D = {}: {why}", dsl::format_group(&g))
        })
    }));

    checks.push(group_property("standard form", cases, rng, |g| {
        let s = g.standardize();
        let mut reversed = g.rows().to_vec();
        reversed.reverse();
        s.standardize().rows() == s.rows()
            && s.rows().last().is_none_or(|r| !r.is_one())
            && FgProfiniteGroup::new(reversed).na_invariants() == g.na_invariants()
    }));

    checks.push(group_property("exactness", cases, rng, |g| g.standardize().verify_exactness()));

    checks.push(check("isogeny under perturbation", cases, rng, |rng| {
        let d = gen::group(rng, 3);
        let e = gen::perturb(rng, &d);
        let f = gen::break_isogeny(rng, &d);
        ensure(
            d.isogenous(&e) && d.na_invariants().dimension == e.na_invariants().dimension && !d.isogenous(&f),
            || format!("D = {d}, perturbed {e}, broken {f}"),
        )
    }));

    checks.push(check("lattice laws", cases, rng, |rng| {
        let base = gen::lattice_base(rng, 3);
        let x = gen::lattice_element(rng, &base);
        let y = gen::lattice_element(rng, &base);
        let k = gen::lattice_scalar(rng);
        let laws = || -> crate::Result<bool> {
            let m = x.meet(&y)?;
            let j = x.join(&y)?;
            Ok(m == y.meet(&x)?
                && j == y.join(&x)?
                && x.join(&m)? == x
                && x.meet(&j)? == x
                && x.scale(k)?.leq(&x)?
                && m.index(&j)? == m.index(&x)? * x.index(&j)?)
        };
        ensure(laws() == Ok(true), || format!("x = {x}, y = {y}, k = {k}"))
    }));

    checks.push(check("tilde-delta ranks", cases, rng, |rng| {
        let k = gen::protorus(rng, true);
        let t = k.tilde_delta().map_err(|e| e.to_string())?;
        let ok = std::iter::once(1_000_003u64)
            .chain(PRIMES)
            .all(|p| t.padic_rank(p) + t.torsion_rank(p) == k.dim_na());
        ensure(ok, || k.to_string())
    }));

    checks.push(check("duality", cases, rng, |rng| {
        let a = gen::cd(rng);
        let b = gen::cd(rng);
        let k = gen::protorus(rng, false);
        ensure(
            CdGroupDescriptor::from_dual(&a.dual()) == a
                && CdGroupDescriptor::from_dual(&k).dual() == k.canonical()
                && a.quasi_isomorphic(&b) == a.dual().isogenous(&b.dual()),
            || format!("A = {a}, B = {b}, K = {k}"),
        )
    }));

    checks.push(check("text round trip", cases, rng, |rng| {
        let n = gen::supernatural(rng);
        let g = gen::group(rng, 3).standardize();
        let k = gen::protorus(rng, false);
        let ok = dsl::parse_sn(&dsl::format_sn(&n)).as_ref() == Ok(&n)
            && dsl::parse_group(&dsl::format_group(&g)).map(|h| h.rows().to_vec()).as_deref() == Ok(g.rows())
            && dsl::parse_protorus(&dsl::format_protorus(&k)).as_ref() == Ok(&k);
        ensure(ok, || format!("{n} | {g} | {k}"))
    }));

    Report { seed, checks }
}
