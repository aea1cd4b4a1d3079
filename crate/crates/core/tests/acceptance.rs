//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Oracles used here are independent of the decision procedures under
//! test: exhaustive finite-field fiber search, subset elimination for
//! dimension, planted common factors for gcd, and direct exact identities.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use detpoly::detcore::{
    divides_after_composition, Certificate, Decider, DetError, PolyMap, Verdict, VerdictValue, WitnessKind,
};
use detpoly::expr::{parse, parse_list, print};
use detpoly::ideal::{gcd_multivariate, Ideal};
use detpoly::{Ctx, FieldElement, FieldSpec, Monomial, MonomialOrder, Polynomial, VarContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

/// Every polynomial that passes through the suite, for the round-trip check.
#[derive(Default)]
struct Seen(Vec<Polynomial>);

impl Seen {
    fn add(&mut self, p: &Polynomial) {
        self.0.push(p.clone());
    }
}

fn ctx(vars: &[&str], chi: u64) -> Ctx {
    VarContext::new(vars.iter().copied(), MonomialOrder::Grevlex, FieldSpec::from_characteristic(chi).unwrap())
        .unwrap()
}

fn map(vars: &[&str], chi: u64, text: &str, seen: &mut Seen) -> PolyMap {
    let comps = parse_list(text, &ctx(vars, chi)).unwrap();
    comps.iter().for_each(|c| seen.add(c));
    PolyMap::new(comps).unwrap()
}

fn poly(f: &PolyMap, text: &str, seen: &mut Seen) -> Polynomial {
    let p = parse(text, f.ctx()).unwrap();
    seen.add(&p);
    p
}

fn image(f: &PolyMap, k: usize, text: &str) -> Polynomial {
    parse(text, &f.image_ctx(k)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: DetError) -> String {
    e.to_string()
}

fn timed(limit: Duration, label: &str, body: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    body()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("{label} took {took:?}, limit {limit:?}"))
}

fn record_certificate(c: &Certificate, seen: &mut Seen) {
    match c {
        Certificate::InRing(p) => seen.add(p),
        Certificate::RadChi { p, .. } => seen.add(p),
        Certificate::RationalOnly(rep) => {
            seen.add(&rep.r);
            seen.add(&rep.s);
        }
        Certificate::CounterexampleIdeal(j) => j.generators().iter().for_each(|g| seen.add(g)),
        Certificate::NotInRing { normal_form, .. } => seen.add(normal_form),
        Certificate::MultiSheeted { closure, .. } => seen.add(&closure.q),
        Certificate::UnitIdeal | Certificate::Transcendental => {}
    }
}

const T12: &[&str] = &["t1", "t2"];

fn criterion_1(d: &Decider, seen: &mut Seen) -> Check {
    let second = Duration::from_secs(1);
    let f = map(T12, 0, "t1; t1*t2", seen);
    let b = poly(&f, "t1*t2^2", seen);
    timed(second, "t1*t2^2", || {
        let r = d.is_determined(&f, &b).map_err(err)?;
        ensure(r.determined, || "t1*t2^2 should be determined".into())?;
        ensure(d.subalgebra_membership(&f, &b).map_err(err)?.is_none(), || "t1*t2^2 must not lie in k[f]".into())?;
        let rep = d.rational_membership(&f, &b).map_err(err)?.ok_or("no rational certificate")?;
        ensure(rep.r == image(&f, 2, "x2^2") && rep.s == image(&f, 2, "x1"), || {
            format!("rational certificate ({}, {})", rep.r, rep.s)
        })?;
        ensure(b.mul(&f.apply(&rep.s).unwrap()) == f.apply(&rep.r).unwrap(), || "identity fails".into())?;
        seen.add(&rep.r);
        seen.add(&rep.s);
        Ok(())
    })?;
    let t2 = poly(&f, "t2", seen);
    timed(second, "t2", || {
        let r = d.is_determined(&f, &t2).map_err(err)?;
        ensure(!r.determined, || "t2 should not be determined".into())?;
        // (0, 0) and (0, 1) share a fiber
        let z = FieldSpec::Rationals;
        let a = [z.zero(), z.zero()];
        let c = [z.zero(), z.one()];
        for fi in f.components() {
            ensure(fi.evaluate(&a).unwrap() == fi.evaluate(&c).unwrap(), || "pair not in one fiber".into())?;
        }
        ensure(t2.evaluate(&a).unwrap() != t2.evaluate(&c).unwrap(), || "pair does not separate".into())?;
        let rep = d.rational_membership(&f, &t2).map_err(err)?.ok_or("no rational certificate")?;
        ensure(rep.r == image(&f, 2, "x2") && rep.s == image(&f, 2, "x1"), || {
            format!("rational certificate ({}, {})", rep.r, rep.s)
        })?;
        seen.add(&rep.r);
        seen.add(&rep.s);
        Ok(())
    })?;
    for chi in [2u64, 3] {
        let f = map(&["t1"], chi, &format!("t1^{chi}"), seen);
        let t1 = poly(&f, "t1", seen);
        timed(second, &format!("char {chi}"), || {
            let r = d.is_determined(&f, &t1).map_err(err)?;
            ensure(r.determined, || format!("t1 should be determined over char {chi}"))?;
            match &r.certificate {
                Certificate::RadChi { p, nu } if *p == image(&f, 1, "x1") && *nu == 1 => {
                    seen.add(p);
                    Ok(())
                }
                other => Err(format!("char {chi}: certificate {other:?}")),
            }
        })?;
    }
    Ok(())
}

struct Case {
    f: PolyMap,
    gs: Vec<Polynomial>,
}

fn rational_corpus(seen: &mut Seen) -> Vec<Case> {
    let table: [(&str, &[&str]); 5] = [
        (
            "t1 + t2; t1*t2",
            &["t1^2 + t2^2", "t1^3 + t2^3", "t1", "t1 - t2", "(t1 - t2)^2", "t1*t2^2 + t1^2*t2", "t1^2*t2^2"],
        ),
        ("t1; t2", &["t1*t2", "t1^3 - t2", "3", "1/2*t1^2 - t2^2"]),
        ("t1^2; t2", &["t1", "t1^2*t2", "t1^4 + t2", "t1*t2", "t1^3 - t2"]),
        ("t1; t1*t2", &["t1*t2^2", "t2", "t1^2*t2", "t1 + t2"]),
        ("t1^2; t1^3", &["t1", "t1^5", "t1^2 + t1^3"]),
    ];
    table.iter()
        .map(|(ftext, gs)| {
            let vars: &[&str] = if ftext.contains("t2") { T12 } else { &["t1"] };
            let f = map(vars, 0, ftext, seen);
            let gs = gs.iter().map(|g| poly(&f, g, seen)).collect();
            Case { f, gs }
        })
        .collect()
}

fn modular_corpus(seen: &mut Seen) -> Vec<Case> {
    let table: [(u64, &str, &[&str]); 4] = [
        (2, "t1^2", &["t1", "t1^3", "t1^2 + t1"]),
        (2, "t1 + t2; t1*t2", &["t1^2 + t2^2", "t1", "t1^2*t2 + t1*t2^2"]),
        (3, "t1^3", &["t1", "t1^2", "t1 + t1^3"]),
        (3, "t1 + t2; t1*t2", &["t1^3 + t2^3", "t1*t2 + t1", "t1"]),
    ];
    table.iter()
        .map(|(chi, ftext, gs)| {
            let vars: &[&str] = if ftext.contains("t2") { T12 } else { &["t1"] };
            let f = map(vars, *chi, ftext, seen);
            let gs = gs.iter().map(|g| poly(&f, g, seen)).collect();
            Case { f, gs }
        })
        .collect()
}

fn criterion_2(d: &Decider, corpus: &[Case], seen: &mut Seen) -> Check {
    let start = Instant::now();
    let pairs: usize = corpus.iter().map(|c| c.gs.len()).sum();
    ensure(pairs >= 20, || format!("only {pairs} pairs"))?;
    let (mut compared, mut witnesses) = (0, 0);
    for case in corpus {
        let f = &case.f;
        let verdict = d.almost_surjectivity(f).map_err(err)?;
        match &verdict {
            Verdict::Yes { .. } => {
                for g in &case.gs {
                    let det = d.is_determined(f, g).map_err(err)?;
                    record_certificate(&det.certificate, seen);
                    let member = d.subalgebra_membership(f, g).map_err(err)?;
                    ensure(det.determined == member.is_some(), || {
                        format!("f = {:?}, g = {g}: determined {} but member {:?}", f.components(), det.determined, member)
                    })?;
                    compared += 1;
                }
            }
            Verdict::No(w) => {
                seen.add(&w.p);
                seen.add(&w.q);
                ensure(w.verify(f).map_err(err)?, || "witness fails to verify".into())?;
                if w.kind == WitnessKind::Divisibility {
                    let b = d.non_almost_surjective_witness(f, &w.p, &w.q).map_err(err)?;
                    seen.add(&b);
                    ensure(d.is_determined(f, &b).map_err(err)?.determined, || format!("b = {b} not determined"))?;
                    ensure(d.subalgebra_membership(f, &b).map_err(err)?.is_none(), || format!("b = {b} in k[f]"))?;
                    witnesses += 1;
                }
            }
            Verdict::Unknown { .. } => {}
        }
    }
    ensure(compared >= 15, || format!("only {compared} pairs compared"))?;
    ensure(witnesses >= 1, || "no divisibility witness exercised".into())?;
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(60), || format!("took {took:?}"))
}

fn criterion_3(d: &Decider, corpus: &[Case], seen: &mut Seen) -> Check {
    let pairs: usize = corpus.iter().map(|c| c.gs.len()).sum();
    ensure(pairs >= 10, || format!("only {pairs} pairs"))?;
    let mut agreed = 0;
    for case in corpus {
        let f = &case.f;
        for g in &case.gs {
            let direct = d.is_determined(f, g).map_err(err)?;
            record_certificate(&direct.certificate, seen);
            ensure(direct.verify(d, f, g).map_err(err)?, || format!("certificate for {g} fails"))?;
            match d.determined_theorem_route(f, g) {
                Ok(theorem) => {
                    record_certificate(&theorem.certificate, seen);
                    ensure(theorem.verify(d, f, g).map_err(err)?, || format!("theorem certificate for {g} fails"))?;
                    ensure(theorem.determined == direct.determined, || {
                        format!("routes disagree on g = {g}: {:?} vs {:?}", theorem.certificate, direct.certificate)
                    })?;
                    let radchi = d.radchi_membership(f, g, None).map_err(err)?;
                    ensure(radchi.is_some() == direct.determined, || format!("rad_χ disagrees on {g}"))?;
                    agreed += 1;
                }
                Err(DetError::HypothesisNotVerified(_)) => {}
                Err(e) => return Err(err(e)),
            }
        }
    }
    ensure(agreed == pairs, || format!("preconditions verified on only {agreed} of {pairs} pairs"))
}

/// Closure generator after the Frobenius recursion, checked by identity.
fn criterion_4(d: &Decider, corpora: &[&[Case]], seen: &mut Seen) -> Check {
    let mut checked = 0;
    for corpus in corpora {
        for case in corpus.iter() {
            let f = &case.f;
            if !d.algebraically_independent(f).map_err(err)? {
                continue;
            }
            let m = f.codomain_arity();
            let chi = f.field().characteristic();
            for g in &case.gs {
                if !d.is_determined(f, g).map_err(err)?.determined {
                    continue;
                }
                let mut h = g.clone();
                let mut nu = 0u32;
                let cert = loop {
                    let c = d.irr_of_closure(f, &h).map_err(err)?;
                    if chi == 0 || !c.q.partial_derivative(m).is_zero() {
                        break c;
                    }
                    h = h.pow(chi);
                    nu += 1;
                };
                seen.add(&cert.q);
                ensure(cert.d == 1, || format!("g = {g}: closure degree {} after {nu} steps", cert.d))?;
                ensure(chi != 0 || nu == 0, || "recursion in characteristic zero".into())?;
                let rep = d.rational_membership(f, &h).map_err(err)?.ok_or("no rational representation")?;
                let lhs = h.mul(&f.apply(&rep.s).map_err(err)?);
                ensure(lhs == f.apply(&rep.r).map_err(err)?, || format!("g = {g}: g^(χ^ν)·s(f) ≠ r(f)"))?;
                checked += 1;
            }
        }
    }
    ensure(checked >= 10, || format!("only {checked} determined pairs"))
}

fn criterion_5(d: &Decider, seen: &mut Seen) -> Check {
    let limit = Duration::from_secs(10);
    let f = map(T12, 0, "t1; t1*t2", seen);
    timed(limit, "(t1, t1*t2)", || match d.almost_surjectivity(&f).map_err(err)? {
        Verdict::No(w) => {
            seen.add(&w.p);
            seen.add(&w.q);
            ensure(w.verify(&f).map_err(err)?, || "witness fails".into())?;
            ensure(divides_after_composition(&w.p, &w.q, &f).map_err(err)?, || "no divisibility".into())?;
            ensure(w.q.exact_divide(&w.p).map_err(|e| e.to_string())?.is_none(), || "p divides q".into())
        }
        other => Err(format!("expected No, got {:?}", other.value())),
    })?;
    for text in ["t1 + t2; t1*t2", "t1^2; t2"] {
        let f = map(T12, 0, text, seen);
        timed(limit, text, || {
            let v = d.almost_surjectivity(&f).map_err(err)?;
            ensure(v.value() == VerdictValue::Yes, || format!("{text}: got {}", v.value()))?;
            ensure(v.verify(d, &f).map_err(err)?, || format!("{text}: Yes fails to verify"))
        })?;
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Ctx, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = ctx.arity();
    let terms = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let mut e = vec![0u32; n];
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(-4i64..=4);
            (Monomial(e), ctx.field().from_i64(if c == 0 { 1 } else { c }))
        })
        .collect();
    Polynomial::from_terms(ctx, terms)
}

/// Largest variable subset whose elimination ideal is zero; −1 for ⟨1⟩.
fn dimension_by_elimination(ideal: &Ideal) -> i64 {
    let n = ideal.ctx().arity();
    let mut best = -1;
    for mask in 0u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if keep.len() as i64 > best && ideal.elimination(&keep).unwrap().is_zero_ideal().unwrap() {
            best = keep.len() as i64;
        }
    }
    best
}

fn criterion_6(seen: &mut Seen) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let names = ["a", "b", "c"];
    for round in 0..16 {
        let n = 1 + round % 3;
        let c = ctx(&names[..n], if round % 4 == 3 { 7 } else { 0 });
        let gens: Vec<Polynomial> =
            (0..rng.gen_range(1..=n)).map(|_| random_poly(&mut rng, &c, 2, 3)).collect();
        gens.iter().for_each(|g| seen.add(g));
        let ideal = Ideal::new(&c, gens.clone()).unwrap();
        let fast = ideal.dimension().map_err(|e| e.to_string())?;
        let slow = dimension_by_elimination(&ideal);
        ensure(fast == slow, || format!("dimension {fast} vs oracle {slow} for {gens:?}"))?;
    }
    for round in 0..60 {
        let n = 1 + round % 3;
        let c = ctx(&names[..n], [0, 0, 5, 13][round % 4]);
        let common = random_poly(&mut rng, &c, 2, 3);
        let a = random_poly(&mut rng, &c, 2, 3);
        let b = random_poly(&mut rng, &c, 2, 3);
        let p = a.mul(&common);
        let q = b.mul(&common);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        seen.add(&p);
        seen.add(&q);
        let g = gcd_multivariate(&p, &q).map_err(|e| e.to_string())?;
        seen.add(&g);
        let divides = |x: &Polynomial, y: &Polynomial| y.exact_divide(x).unwrap().is_some();
        ensure(divides(&g, &p) && divides(&g, &q), || format!("gcd {g} does not divide {p} and {q}"))?;
        ensure(divides(&common, &g), || format!("planted factor {common} does not divide gcd {g}"))?;
        let cofactor_gcd = gcd_multivariate(&p.exact_divide(&g).unwrap().unwrap(), &q.exact_divide(&g).unwrap().unwrap())
            .map_err(|e| e.to_string())?;
        ensure(cofactor_gcd.is_one(), || format!("cofactors of {p}, {q} share {cofactor_gcd}"))?;
        let h = random_poly(&mut rng, &c, 1, 2);
        if !h.is_zero() {
            ensure(divides(&g, &p.mul(&h).add(&q)), || "gcd fails to divide a combination".into())?;
        }
    }
    Ok(())
}

/// All points of 𝔽_p^n.
fn grid(field: FieldSpec, n: usize) -> Vec<Vec<FieldElement>> {
    let p = field.characteristic() as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|pt| {
                (0..p).map(move |v| {
                    let mut pt = pt.clone();
                    pt.push(field.from_i64(v));
                    pt
                })
            })
            .collect();
    }
    out
}

/// Searches the grid for `a, b` with `f(a) = f(b)` and `g(a) ≠ g(b)`.
fn grid_counterexample(f: &PolyMap, g: &Polynomial) -> Option<(Vec<FieldElement>, Vec<FieldElement>)> {
    let mut fibers: HashMap<String, (Vec<FieldElement>, FieldElement)> = HashMap::new();
    for pt in grid(f.field(), f.domain_arity()) {
        let key: Vec<String> = f.components().iter().map(|c| c.evaluate(&pt).unwrap().to_string()).collect();
        let val = g.evaluate(&pt).unwrap();
        match fibers.get(&key.join(",")) {
            Some((other, v)) if *v != val => return Some((other.clone(), pt)),
            Some(_) => {}
            None => {
                fibers.insert(key.join(","), (pt, val));
            }
        }
    }
    None
}

fn criterion_7(d: &Decider, seen: &mut Seen) -> Check {
    let start = Instant::now();
    let t123: &[&str] = &["t1", "t2", "t3"];
    let table: [(&[&str], &str, &[&str]); 6] = [
        (T12, "t1; t1*t2", &["t2", "t1*t2^2", "t1 + t2"]),
        (T12, "t1 + t2; t1*t2", &["t1", "t1^2 + t2^2", "t1 - t2"]),
        (&["t1"], "t1^3", &["t1", "t1^3 + t1^6"]),
        (T12, "t1^2; t2", &["t1", "t1^2*t2"]),
        (t123, "t1; t1*t2; t3", &["t2*t3", "t1*t2^2*t3"]),
        (t123, "t1 + t2 + t3; t1*t2 + t2*t3 + t1*t3; t1*t2*t3", &["t1^2 + t2^2 + t3^2", "t1"]),
    ];
    let (mut found, mut total) = (0, 0);
    for chi in [5u64, 7, 11] {
        for (vars, ftext, gs) in table.iter() {
            let f = map(vars, chi, ftext, seen);
            for gtext in gs.iter() {
                let g = poly(&f, gtext, seen);
                let det = d.is_determined(&f, &g).map_err(err)?;
                total += 1;
                if let Some((a, b)) = grid_counterexample(&f, &g) {
                    found += 1;
                    ensure(!det.determined, || {
                        format!("F{chi}: {gtext} reported determined but {a:?} and {b:?} separate a fiber")
                    })?;
                }
            }
        }
    }
    ensure(found >= total / 3, || format!("grid found only {found} of {total} counterexamples"))?;
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(120), || format!("took {took:?}"))
}

fn criterion_8(seen: &Seen) -> Check {
    ensure(seen.0.len() >= 100, || format!("only {} polynomials collected", seen.0.len()))?;
    for p in &seen.0 {
        let text = print(p);
        let back = parse(&text, p.ctx()).map_err(|e| format!("`{text}` failed to parse: {e}"))?;
        ensure(back == *p, || format!("`{text}` reparsed as `{}`", print(&back)))?;
    }
    Ok(())
}

fn main() {
    let d = Decider::default();
    let mut seen = Seen::default();
    let mut failures = 0;
    let mut report = |n: u32, title: &str, started: Instant, outcome: Check| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {n} PASS ({secs:.2}s): {title}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {n} FAIL ({secs:.2}s): {title}: {msg}");
            }
        }
    };

    let t = Instant::now();
    report(1, "worked examples", t, criterion_1(&d, &mut seen));

    let rational = rational_corpus(&mut seen);
    let modular = modular_corpus(&mut seen);
    let t = Instant::now();
    report(2, "determined iff in k[f] under almost-surjectivity, over Q", t, criterion_2(&d, &rational, &mut seen));
    let t = Instant::now();
    report(3, "route agreement and rad_chi over F2, F3", t, criterion_3(&d, &modular, &mut seen));
    let t = Instant::now();
    report(4, "closure degree one and rational identity", t, criterion_4(&d, &[&rational, &modular], &mut seen));
    let t = Instant::now();
    report(5, "almost-surjectivity verdicts", t, criterion_5(&d, &mut seen));
    let t = Instant::now();
    report(6, "dimension and gcd oracles", t, criterion_6(&mut seen));
    let t = Instant::now();
    report(7, "finite-field sampling consistency", t, criterion_7(&d, &mut seen));
    let t = Instant::now();
    report(8, "parse/print round trip", t, criterion_8(&seen));

    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
