//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! Set `PROTORI_UPDATE_GOLDEN=1` to rewrite `tests/golden/cli.txt`.

use std::collections::BTreeSet;
use std::time::Instant;

use protori::dsl::{self, ParseErrorKind};
use protori::selftest::{gen, quotient_agrees, CAP, PRIMES};
use protori::truncation::{truncate, FiniteAbelianGroup};
use protori::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

const EXPONENTS: [Exponent; 6] = [
    Exponent::Finite(0),
    Exponent::Finite(1),
    Exponent::Finite(2),
    Exponent::Finite(3),
    Exponent::Finite(4),
    INF,
];

fn quotient_sweep() -> Outcome {
    let mut exhaustive = 0usize;
    for pair in PRIMES.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        for d in EXPONENTS {
            for ep in EXPONENTS {
                for eq in EXPONENTS {
                    let row = SupernaturalNumber::new(d, [(p, ep), (q, eq)]).unwrap();
                    let g = FgProfiniteGroup::new(vec![row]);
                    for a in 0..=4 {
                        for b in 0..=4 {
                            let k = p.pow(a) * q.pow(b);
                            quotient_agrees(&g, k).map_err(|e| format!("D = {g}, k = {k}: {e}"))?;
                            exhaustive += 1;
                        }
                    }
                }
            }
        }
    }
    let mut r = rng(1);
    let mut enumerated = 0usize;
    let sampled = 12_000;
    for _ in 0..sampled {
        let g = gen::group(&mut r, 3);
        let k = gen::scalar(&mut r);
        if protori::selftest::enumerable(&g) {
            enumerated += 1;
        }
        quotient_agrees(&g, k).map_err(|e| format!("D = {g}, k = {k}: {e}"))?;
    }
    // groups supported on the sweep primes, small enough to enumerate
    let mut small = 0usize;
    while small < 2_000 {
        let rows = (0..r.gen_range(1..=3))
            .map(|_| {
                let ex: Vec<_> = PRIMES[..3].iter().map(|&p| (p, gen::exponent(&mut r, 2))).collect();
                SupernaturalNumber::new(Exponent::ZERO, ex).unwrap()
            })
            .collect();
        let g = FgProfiniteGroup::new(rows);
        if !protori::selftest::enumerable(&g) {
            continue;
        }
        let k = gen::scalar(&mut r);
        quotient_agrees(&g, k).map_err(|e| format!("D = {g}, k = {k}: {e}"))?;
        small += 1;
        enumerated += 1;
    }
    Ok(format!(
        "{} cases ({exhaustive} exhaustive width 1, {sampled} sampled width <= 3, {small} small; {enumerated} also by coset enumeration), cap {CAP}",
        exhaustive + sampled + small
    ))
}

fn padic_anchor() -> Outcome {
    let mut n_cases = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=6u32 {
            let q = FgProfiniteGroup::padic(p).unwrap().quotient_mod_k(p.pow(n)).unwrap();
            let expected = FgProfiniteGroup::cyclic(p.pow(n)).unwrap();
            require(q == expected && q.rows().len() == 1, || format!("Z_{p} / {p}^{n} gave {q}"))?;
            let oracle = truncate(&q, &PRIMES, CAP).unwrap();
            require(oracle == FiniteAbelianGroup::new([(p, n)]).unwrap(), || format!("p = {p}, n = {n}: {oracle}"))?;
            n_cases += 1;
        }
    }
    Ok(format!("{n_cases} cases, each exactly Z(p^n)"))
}

fn columns_non_increasing(g: &FgProfiniteGroup) -> bool {
    let rows = g.rows();
    let primes: BTreeSet<u64> = rows.iter().flat_map(|r| r.exceptions().keys().copied()).collect();
    let sorted = |col: Vec<Exponent>| col.windows(2).all(|w| w[0] >= w[1]);
    sorted(rows.iter().map(|r| r.default_exponent()).collect())
        && primes.into_iter().all(|p| sorted(rows.iter().map(|r| r.exponent(p).unwrap()).collect()))
}

fn normal_form() -> Outcome {
    let mut r = rng(3);
    for _ in 0..10_000 {
        let g = gen::group(&mut r, 4);
        let s = g.standardize();
        require(s.standardize().rows() == s.rows(), || format!("not idempotent on {g}"))?;
        require(columns_non_increasing(&s), || format!("columns not sorted: {s}"))?;
        require(s.rows().last().is_none_or(|row| !row.is_one()), || format!("trailing zero row: {s}"))?;
        let mut shuffled = g.rows().to_vec();
        shuffled.shuffle(&mut r);
        let h = FgProfiniteGroup::new(shuffled);
        require(h.na_invariants() == g.na_invariants() && h.standardize() == s, || {
            format!("row order changed the invariants of {g}")
        })?;
    }
    Ok("10000 random groups of width <= 4".into())
}

fn isogeny_perturbation() -> Outcome {
    let mut r = rng(4);
    for _ in 0..1_000 {
        let d = gen::group(&mut r, 3);
        let e = gen::perturb(&mut r, &d);
        require(d.isogenous(&e) && e.isogenous(&d), || format!("{d} vs perturbed {e}"))?;
        require(d.na_invariants().dimension == e.na_invariants().dimension, || format!("dimension of {d} vs {e}"))?;
        let f = gen::break_isogeny(&mut r, &d);
        require(!d.isogenous(&f), || format!("{d} vs broken {f}"))?;
    }
    Ok("1000 isogenous pairs, 1000 non-isogenous pairs".into())
}

fn perturb_type(r: &mut ChaCha8Rng, t: &SupernaturalNumber) -> SupernaturalNumber {
    let mut ex = t.exceptions().clone();
    for p in PRIMES {
        if t.exponent(p).unwrap().is_finite() && r.gen_bool(0.4) {
            ex.insert(p, Exponent::Finite(r.gen_range(0..=5)));
        }
    }
    SupernaturalNumber::new(t.default_exponent(), ex).unwrap()
}

fn perturb_cd(r: &mut ChaCha8Rng, a: &CdGroupDescriptor) -> CdGroupDescriptor {
    let mut types: Vec<_> = a.types().iter().map(|t| perturb_type(r, t)).collect();
    types.shuffle(r);
    CdGroupDescriptor::new(a.divisible_rank(), a.free_rank(), types).unwrap()
}

fn perturb_protorus(r: &mut ChaCha8Rng, k: &ProtorusDescriptor) -> ProtorusDescriptor {
    let sols = k.solenoids().iter().map(|c| perturb_type(r, c)).collect();
    ProtorusDescriptor::new(k.divisible_rank(), k.torus_rank(), sols).unwrap()
}

fn equivalence<T: std::fmt::Display>(
    name: &str,
    r: &mut ChaCha8Rng,
    fresh: impl Fn(&mut ChaCha8Rng) -> T,
    nearby: impl Fn(&mut ChaCha8Rng, &T) -> T,
    rel: impl Fn(&T, &T) -> bool,
) -> Result<usize, String> {
    let mut related = 0;
    for _ in 0..1_000 {
        let a = fresh(r);
        let b = if r.gen_bool(0.7) { nearby(r, &a) } else { fresh(r) };
        let c = if r.gen_bool(0.7) { nearby(r, &b) } else { fresh(r) };
        let bad = |what: &str| format!("{name} not {what} on {a} | {b} | {c}");
        require(rel(&a, &a), || bad("reflexive"))?;
        require(rel(&a, &b) == rel(&b, &a), || bad("symmetric"))?;
        require(!(rel(&a, &b) && rel(&b, &c)) || rel(&a, &c), || bad("transitive"))?;
        if rel(&a, &b) && rel(&b, &c) {
            related += 1;
        }
    }
    Ok(related)
}

fn equivalence_relations() -> Outcome {
    let mut r = rng(5);
    let g = equivalence("isogeny", &mut r, |r| gen::group(r, 3), gen::perturb, |a, b| a.isogenous(b))?;
    let k = equivalence(
        "protorus isogeny",
        &mut r,
        |r| gen::protorus(r, false),
        perturb_protorus,
        |a, b| a.isogenous(b),
    )?;
    let q = equivalence("quasi-isomorphism", &mut r, gen::cd, perturb_cd, |a, b| a.quasi_isomorphic(b))?;
    Ok(format!(
        "1000 triples each; fully related chains: {g} groups, {k} protori, {q} cd groups"
    ))
}

fn lattice_axioms() -> Outcome {
    let mut r = rng(6);
    let e = |x: Result<LatticeElement>| x.map_err(|e| e.to_string());
    for _ in 0..1_000 {
        let base = gen::lattice_base(&mut r, 3);
        let x = gen::lattice_element(&mut r, &base);
        let y = gen::lattice_element(&mut r, &base);
        let z = gen::lattice_element(&mut r, &base);
        let k = gen::lattice_scalar(&mut r);
        let bad = |law: &str| format!("{law} fails for x = {x}, y = {y}, z = {z}, k = {k}");
        let (m, j) = (e(x.meet(&y))?, e(x.join(&y))?);
        require(m == e(y.meet(&x))? && j == e(y.join(&x))?, || bad("commutativity"))?;
        require(
            e(m.meet(&z))? == e(x.meet(&e(y.meet(&z))?))? && e(j.join(&z))? == e(x.join(&e(y.join(&z))?))?,
            || bad("associativity"),
        )?;
        require(e(x.meet(&x))? == x && e(x.join(&x))? == x, || bad("idempotence"))?;
        require(e(x.join(&m))? == x && e(x.meet(&j))? == x, || bad("absorption"))?;
        let kx = e(x.scale(k))?;
        require(kx.leq(&x) == Ok(true), || bad("k x <= x"))?;

        // chain kx ∧ y ⊆ x ∧ y ⊆ x ⊆ x ∨ y ⊆ x ∨ y ∨ z
        let chain = [e(kx.meet(&y))?, m.clone(), x.clone(), j.clone(), e(j.join(&z))?];
        let mut total = 1u128;
        for w in chain.windows(2) {
            total *= w[0].index(&w[1]).map_err(|err| format!("{}: {err}", bad("finite index")))?;
        }
        require(chain[0].index(&chain[4]) == Ok(total), || bad("index multiplicativity"))?;

        let c = x.find_conductor(&y).map_err(|err| err.to_string())?;
        require(e(x.scale(c as u64))?.leq(&y) == Ok(true), || bad("conductor"))?;
        for p in protori::primes::factorize(c as u64).into_keys() {
            require(e(x.scale(c as u64 / p))?.leq(&y) == Ok(false), || bad("conductor minimality"))?;
        }
    }
    Ok("1000 triples per law over bases of width <= 3".into())
}

fn exactness() -> Outcome {
    let mut r = rng(7);
    for _ in 0..1_000 {
        let g = gen::group(&mut r, 3).standardize();
        require(g.verify_exactness(), || format!("not exact: {g}"))?;
        require(g.kernel_descriptor().cokernel() == g, || format!("cokernel differs: {g}"))?;
    }
    Ok("1000 random normalized groups".into())
}

fn tilde_delta() -> Outcome {
    let mut r = rng(8);
    let probes: Vec<u64> = PRIMES.iter().copied().chain([17, 101, 1_000_003]).collect();
    for _ in 0..1_000 {
        let k = gen::protorus(&mut r, true);
        let t = k.tilde_delta().map_err(|e| e.to_string())?;
        for &p in &probes {
            require(t.padic_rank(p) + t.torsion_rank(p) == k.dim_na(), || format!("{k} at {p}"))?;
        }
        let d = t.ranks().default_value();
        require(d.padic_rank + d.torsion_rank == k.dim_na(), || format!("{k} at almost all p"))?;
    }
    let all = ProtorusDescriptor::solenoid(SupernaturalNumber::all_inf()).unwrap().tilde_delta().unwrap();
    let two = SupernaturalNumber::new(Exponent::ZERO, [(2, INF)]).unwrap();
    let two = ProtorusDescriptor::solenoid(two).unwrap().tilde_delta().unwrap();
    for &p in &probes {
        require(all.padic_rank(p) == 1, || format!("all-inf solenoid has r_{p} != 1"))?;
        let c = if p == 2 { 0 } else { 1 };
        require(two.torsion_rank(p) == c, || format!("2-adic solenoid has c_{p} != {c}"))?;
    }
    Ok("1000 random torus-free descriptors plus both anchors".into())
}

fn duality() -> Outcome {
    let mut r = rng(9);
    let mut equivalent = 0;
    for _ in 0..1_000 {
        let a = gen::cd(&mut r);
        let b = if r.gen_bool(0.5) { perturb_cd(&mut r, &a) } else { gen::cd(&mut r) };
        require(CdGroupDescriptor::from_dual(&a.dual()) == a, || format!("round trip from {a}"))?;
        let k = gen::protorus(&mut r, false).canonical();
        require(CdGroupDescriptor::from_dual(&k).dual() == k, || format!("round trip from {k}"))?;
        let qi = a.quasi_isomorphic(&b);
        require(qi == a.dual().isogenous(&b.dual()), || format!("{a} vs {b}"))?;
        equivalent += qi as usize;
    }
    Ok(format!("1000 pairs ({equivalent} quasi-isomorphic)"))
}

fn dsl_round_trips() -> Result<usize, String> {
    let mut r = rng(10);
    let mut values = 0;
    for _ in 0..10_000 {
        let n = gen::supernatural(&mut r);
        let text = dsl::format_sn(&n);
        require(dsl::parse_sn(&text).as_ref() == Ok(&n), || format!("sn {text}"))?;
        require(dsl::format_sn(&dsl::parse_sn(&text).unwrap()) == text, || format!("sn text {text}"))?;

        let g = gen::group(&mut r, 3).standardize();
        let text = dsl::format_group(&g);
        let back = dsl::parse_group(&text).map_err(|e| format!("{text}: {e}"))?;
        require(back.rows() == g.rows() && dsl::format_group(&back) == text, || format!("group {text}"))?;

        let k = gen::protorus(&mut r, false);
        let text = dsl::format_protorus(&k);
        require(dsl::parse_protorus(&text).as_ref() == Ok(&k), || format!("protorus {text}"))?;

        let a = gen::cd(&mut r);
        let text = dsl::format_cd(&a);
        require(dsl::parse_cd(&text).as_ref() == Ok(&a), || format!("cd {text}"))?;

        let base = gen::lattice_base(&mut r, 3);
        let x = gen::lattice_element(&mut r, &base);
        let text = dsl::format_lattice(&x);
        require(dsl::parse_lattice(&text).as_ref() == Ok(&x), || format!("lattice {text}"))?;
        values += 5;
    }
    Ok(values)
}

fn dsl_errors() -> Result<usize, String> {
    use ParseErrorKind::*;
    type P = fn(&str) -> std::result::Result<(), dsl::ParseError>;
    let sn: P = |s| dsl::parse_sn(s).map(drop);
    let group: P = |s| dsl::parse_group(s).map(drop);
    let protorus: P = |s| dsl::parse_protorus(s).map(drop);
    let cd: P = |s| dsl::parse_cd(s).map(drop);
    let lattice: P = |s| dsl::parse_lattice(s).map(drop);
    let cases: &[(P, &str, ParseErrorKind, (usize, usize))] = &[
        (sn, "4^2", NonPrimeBase, (0, 1)),
        (sn, "2^1 * 9^1", NonPrimeBase, (6, 7)),
        (group, "prod[1^1]", NonPrimeBase, (5, 6)),
        (sn, "2^1 * 3^1 * 2^2", DuplicatePrime, (12, 13)),
        (group, "prod[5^inf * 5^1]", DuplicatePrime, (13, 14)),
        (sn, "3^-2", BadExponent, (2, 4)),
        (sn, "rest = -1", BadExponent, (7, 9)),
        (sn, "2^18446744073709551616", BadExponent, (2, 22)),
        (sn, "2^", UnexpectedToken, (2, 2)),
        (sn, "2^1 3^1", UnexpectedToken, (4, 5)),
        (sn, "2^infinity", UnexpectedToken, (2, 10)),
        (sn, "", UnexpectedToken, (0, 0)),
        (group, "prod(2^1)", UnexpectedToken, (4, 5)),
        (group, "prod[]", UnexpectedToken, (5, 6)),
        (group, "prod[2^1", UnexpectedToken, (8, 8)),
        (group, "2^1", UnexpectedToken, (0, 1)),
        (group, "prod[2^1] ?", UnexpectedToken, (10, 11)),
        (protorus, "protorus{torus: 1, torus: 2}", UnexpectedToken, (19, 24)),
        (protorus, "protorus{solenoids: [3^1]}", InvalidValue, (21, 24)),
        (cd, "cd{types: [rest = inf]}", InvalidValue, (11, 21)),
        (lattice, "lattice{base: prod[2^inf], torsion: [(0, 2, 1)]}", InvalidValue, (37, 46)),
        (lattice, "lattice{base: prod[2^inf], free: [(1, 2, 0)]}", InvalidValue, (34, 43)),
    ];
    let mut seen = BTreeSet::new();
    for (parse, src, kind, (start, end)) in cases {
        let e = match parse(src) {
            Ok(()) => return Err(format!("{src:?} parsed")),
            Err(e) => e,
        };
        require(e.span.start <= e.span.end && e.span.end <= src.len(), || format!("{src:?}: span out of bounds"))?;
        require(e.kind == *kind && (e.span.start, e.span.end) == (*start, *end), || {
            format!("{src:?}: got {:?} at {}..{}", e.kind, e.span.start, e.span.end)
        })?;
        seen.insert(format!("{kind:?}"));
    }
    require(seen.len() == 5, || format!("kinds covered: {seen:?}"))?;
    Ok(cases.len())
}

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/cli.txt");

fn golden_invocations() -> Vec<Vec<&'static str>> {
    let g = "prod[2^inf * 3^1 ; rest = 2, 5^inf, 7^3]";
    let k = "protorus{divisible: 1, torus: 1, solenoids: [2^inf, 3^2 ; rest = inf]}";
    let tf = "protorus{solenoids: [2^inf, 3^inf * 5^1 ; rest = 1]}";
    let x = "lattice{base: prod[rest = inf, 2^inf ; rest = 1], free: [(0, 3, 1)], torsion: [(1, 5, 2)]}";
    let y = "lattice{base: prod[rest = inf, 2^inf ; rest = 1], free: [(0, 2, -1)], torsion: []}";
    vec![
        vec!["quotient", "--k", "12", "prod[2^inf ; rest=inf]"],
        vec!["normalize", "0"],
        vec!["quotient", "--k", "0", "prod[rest = inf]"],
        vec!["normalize", "prod[rest = 1, 2^2]"],
        vec!["normalize", g],
        vec!["invariants", g],
        vec!["--output", "json", "invariants", g],
        vec!["quotient", "--k", "360", g],
        vec!["scale", "--k", "6", g],
        vec!["isogeny", g, "prod[5^inf * 7^1, 2^inf * 3^4 ; rest = 2, 11^3]"],
        vec!["isogeny", "prod[rest = inf]", "prod[rest = inf, rest = inf]"],
        vec!["typeq", "2^5 * 3^inf", "3^inf"],
        vec!["typeq", "rest = 1", "1"],
        vec!["kernel", g],
        vec!["verify-exact", g],
        vec!["lattice", "meet", x, y],
        vec!["lattice", "join", x, y],
        vec!["lattice", "leq", x, y],
        vec!["lattice", "index", "lattice{base: prod[rest = inf], free: [(0, 2, 2), (0, 3, 1)], torsion: []}", "lattice{base: prod[rest = inf], free: [], torsion: []}"],
        vec!["lattice", "conductor", x, y],
        vec!["lattice", "scale", "--k", "10", x],
        vec!["lattice", "preimage", "--n", "10", x],
        vec!["build-protorus", g],
        vec!["decompose", k],
        vec!["dim", k],
        vec!["dim-na", k],
        vec!["tilde-delta", tf],
        vec!["torsion", tf],
        vec!["tilde-delta", k],
        vec!["resolve", tf],
        vec!["--output", "json", "resolve", tf],
        vec!["dual", "cd{divisible: 1, free: 2, types: [2^inf]}"],
        vec!["undual", k],
        vec!["quasi-iso", "cd{types: [2^inf]}", "cd{types: [2^inf * 5^3]}"],
        vec!["acd-witness", tf],
        vec!["acd-witness", k],
        vec!["normalize", "prod[2^1, 6^1]"],
        vec!["typeq", "2^-1", "1"],
        vec!["--output", "json", "normalize", "{\"rows\": [{\"default\": 1, \"exceptions\": {\"2\": \"inf\"}}]}"],
        vec!["normalize", "{\"rows\": [}"],
    ]
}

fn run_golden() -> String {
    let mut transcript = String::new();
    for inv in golden_invocations() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("protori").chain(inv.iter().copied());
        let code = protori::cli::run(argv, &mut std::io::empty(), &mut out, &mut err, false);
        let quoted: Vec<String> = inv.iter().map(|a| format!("'{a}'")).collect();
        transcript.push_str(&format!("$ protori {}\n[exit {code}]\n", quoted.join(" ")));
        transcript.push_str(&String::from_utf8(out).unwrap());
        for line in String::from_utf8(err).unwrap().lines() {
            transcript.push_str(&format!("! {line}\n"));
        }
        transcript.push('\n');
    }
    transcript
}

fn dsl_criterion() -> Outcome {
    let values = dsl_round_trips()?;
    let errors = dsl_errors()?;
    let first = run_golden();
    let second = run_golden();
    require(first == second, || "CLI output differs between runs".into())?;
    if std::env::var_os("PROTORI_UPDATE_GOLDEN").is_some() {
        std::fs::write(GOLDEN, &first).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(GOLDEN).map_err(|e| format!("{GOLDEN}: {e}"))?;
    if golden != first {
        let line = golden.lines().zip(first.lines()).position(|(a, b)| a != b).unwrap_or(0) + 1;
        return Err(format!("CLI output differs from the golden file at line {line}"));
    }
    Ok(format!(
        "{values} round trips, {errors} error cases, {} CLI invocations match the golden file",
        golden_invocations().len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("quotient formula vs truncation oracle", quotient_sweep),
        ("Z_p / p^n is cyclic of order p^n", padic_anchor),
        ("standard form", normal_form),
        ("isogeny under bounded perturbation", isogeny_perturbation),
        ("isogeny and quasi-isomorphism are equivalences", equivalence_relations),
        ("lattice axioms, index, conductor", lattice_axioms),
        ("exactness self-check", exactness),
        ("tilde-delta ranks", tilde_delta),
        ("duality", duality),
        ("text notation and CLI golden file", dsl_criterion),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
