//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::process::Command;
use std::time::Instant;

use matroid_divisors::chip_firing::{dhar_reduce, rr_check, Divisor, MultiGraph};
use matroid_divisors::error::Error;
use matroid_divisors::field::{primes_up_to, Field, FiniteField, Rationals};
use matroid_divisors::matroid::{
    by_name, enumerate_rank3_simple, fano, five_point, four_lines, non_fano, pg2, two_flat, u2ext, u34, uniform,
    Matroid,
};
use matroid_divisors::matroid_divisor::{
    build_harmonic_modification, central_fiber, check_harmonic, classify, flat_name, levi_graph, matroid_divisor,
    rho_matroid, verify_rank2, Classification,
};
use matroid_divisors::mnev::{
    bound_check, compile, gadget_check, witness, witness_random, GadgetKind, GadgetOutput, WitnessOptions,
};
use matroid_divisors::monic_slp::{compile_algebra, sqrt_floor_below, zmodp_rep, MonicRep, PolyZ, PresentedAlgebra};
use matroid_divisors::projective::{collinearity_matroid, frobenius_closed, realization_search, SearchBudget};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, start: Instant, result: Result<String, String>) {
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => println!("criterion {n:>2} PASS ({secs:.1}s) {name}: {detail}"),
        Err(why) => {
            println!("criterion {n:>2} FAIL ({secs:.1}s) {name}: {why}");
            panic!("criterion {n} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_01_rank_two() {
    let start = Instant::now();
    let mut named: Vec<(String, Matroid)> = vec![
        ("fano".into(), fano()),
        ("non_fano".into(), non_fano()),
        ("u34".into(), u34()),
        ("five_point".into(), five_point()),
        ("four_lines".into(), four_lines()),
    ];
    named.extend((5..=7).map(|n| (format!("u2ext({n})"), u2ext(n))));
    let result = (|| {
        for (name, m) in &named {
            let t = Instant::now();
            ensure(verify_rank2(m).map_err(|e| e.to_string())?, || format!("{name} does not have rank 2"))?;
            ensure(t.elapsed().as_secs() < 60, || format!("{name} took {:?}", t.elapsed()))?;
        }
        Ok(format!("rank(Γ_M, D_M) = 2 for {} matroids", named.len()))
    })();
    report(1, "rank-2 certification", start, result);
}

#[test]
fn criterion_02_reduced_divisor() {
    let start = Instant::now();
    let result = (|| {
        let m = fano();
        let [e1, e2, e3] = m.find_basis().ok_or("no basis")?;
        let lg = levi_graph(&m);
        let fv = |a: usize, b: usize| lg.flat_vertex(m.flat_index(a, b));
        let (f12, f13, f23) = (fv(e1, e2), fv(e1, e3), fv(e2, e3));
        let mut d = matroid_divisor(&m);
        for f in [f12, f13, f23] {
            d.add_point(f, -1);
        }
        let got = dhar_reduce(&lg.graph, &d, f23).divisor;

        let mut want = Divisor::zero(lg.graph.len());
        want.add_point(e1, 1);
        want.add_point(f23, -1);
        for fi in m.flats_through(e1) {
            let size = m.flats()[fi].len() as i64;
            let v = lg.flat_vertex(fi);
            want.add_point(v, if v == f12 || v == f13 { size - 2 } else { size - 1 });
        }
        ensure(got == want, || {
            format!("got {}, expected {}", got.display(&lg.graph), want.display(&lg.graph))
        })?;
        let third: Vec<String> = m
            .flats_through(e1)
            .into_iter()
            .filter(|&fi| lg.flat_vertex(fi) != f12 && lg.flat_vertex(fi) != f13)
            .map(|fi| flat_name(&m, fi))
            .collect();
        Ok(format!("{} (third flat {})", got.display(&lg.graph), third.join(",")))
    })();
    report(2, "reduced divisor", start, result);
}

fn random_divisor(rng: &mut ChaCha8Rng, n: usize, degree: i64) -> Divisor {
    let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
    let mut diff = degree - c.iter().sum::<i64>();
    while diff != 0 {
        let v = rng.gen_range(0..n);
        let step = diff.signum();
        c[v] += step;
        diff -= step;
    }
    Divisor::from_coeffs(c)
}

#[test]
fn criterion_03_riemann_roch() {
    let start = Instant::now();
    let graphs: Vec<(&str, MultiGraph)> = vec![
        ("Γ_fano", levi_graph(&fano()).graph),
        ("Γ_u34", levi_graph(&u34()).graph),
        ("K3", MultiGraph::complete(3)),
    ];
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (name, g) in &graphs {
            for i in 0..100 {
                let degree = -2 + (i % 13) as i64;
                let d = random_divisor(&mut rng, g.len(), degree);
                ensure(rr_check(g, &d).map_err(|e| e.to_string())?, || {
                    format!("Riemann-Roch fails on {name} for {}", d.display(g))
                })?;
            }
        }
        Ok("300 divisors of degree -2..10".into())
    })();
    report(3, "Riemann-Roch", start, result);
}

#[test]
fn criterion_04_count_table() {
    let start = Instant::now();
    let expected = "\
fano: counts (7,7,21) threshold 8
non_fano: counts (7,9,24) threshold 11
u34: (g,d,rho) = (3,4,0)
rho_matroid(u2ext(4)) = 2
rho_matroid(u2ext(5)) = 3
rho_matroid(u2ext(6)) = 4
rho_matroid(u2ext(7)) = 5
rho_matroid(u2ext(8)) = 6
rho_matroid(u2ext(9)) = 7
rho_matroid(u2ext(10)) = 8
two_flat_rho(2,2) = 1
two_flat_rho(2,3) = 0
";
    let out = Command::new(env!("CARGO_BIN_EXE_matroid-divisors")).args(["--table", "counts"]).output().unwrap();
    let got = String::from_utf8(out.stdout).unwrap();
    let result = ensure(out.status.success() && got == expected, || format!("table was:\n{got}"))
        .map(|()| "table matches exactly".to_string());
    report(4, "count table", start, result);
}

#[test]
fn criterion_05_classification() {
    let start = Instant::now();
    let result = (|| {
        let mut total = 0;
        let mut nonneg = 0;
        for n in 3..=7 {
            for m in enumerate_rank3_simple(n).map_err(|e| e.to_string())? {
                total += 1;
                let rho = rho_matroid(&m);
                let class = classify(&m);
                ensure((rho >= 0) == (class != Classification::NotInList), || {
                    format!("rho = {rho} but classified {class:?}: {m:?}")
                })?;
                let want = match class {
                    Classification::Extension => Some(n as i64 - 2),
                    Classification::FivePoint => Some(1),
                    Classification::NotInList => None,
                    _ => Some(0),
                };
                ensure(want.is_none_or(|w| w == rho), || format!("{class:?} should have rho {want:?}, got {rho}"))?;
                nonneg += (rho >= 0) as usize;
            }
        }
        Ok(format!("{nonneg} of {total} matroids have rho >= 0, all in the list"))
    })();
    report(5, "classification for n <= 7", start, result);
}

#[test]
fn criterion_06_realizability() {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let search = |m: &Matroid, p: u32, k: u32| {
        let f = FiniteField::new(p, k).unwrap();
        realization_search(m, &f, budget)
    };
    let result = (|| {
        for (name, m, p, k, found) in [
            ("fano", fano(), 2, 1, true),
            ("fano", fano(), 2, 2, true),
            ("fano", fano(), 3, 1, false),
            ("fano", fano(), 5, 1, false),
            ("non_fano", non_fano(), 3, 1, true),
            ("non_fano", non_fano(), 2, 1, false),
        ] {
            let out = search(&m, p, k);
            let ok = if found {
                out.found().is_some_and(|c| collinearity_matroid(c).is_ok_and(|g| g == m))
            } else {
                out.label() == "none"
            };
            ensure(ok, || format!("{name} over F_{{{p}^{k}}}: {}", out.label()))?;
        }
        let pg = pg2(4).map_err(|e| e.to_string())?;
        let out = search(&pg, 2, 2);
        let cfg = out.found().ok_or_else(|| format!("pg2(4) over F4: {}", out.label()))?;
        ensure(frobenius_closed(cfg, 2).map_err(|e| e.to_string())?, || "pg2(4) realization not Frobenius-closed".into())?;
        ensure(search(&pg, 2, 1).label() == "none", || "pg2(4) realized over F2".into())?;
        Ok("fano/non_fano/pg2(4) verdicts as expected".into())
    })();
    report(6, "realizability oracles", start, result);
}

fn random_poly(rng: &mut ChaCha8Rng) -> String {
    let terms = rng.gen_range(1..=3);
    (0..terms)
        .map(|_| format!("{}*y1^{}*y2^{}", rng.gen_range(1..=3), rng.gen_range(0..=2), rng.gen_range(0..=2)))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[test]
fn criterion_07_monic_reps() {
    let start = Instant::now();
    let result = (|| {
        let primes = primes_up_to(1000);
        for &p in &primes {
            let rep = zmodp_rep(p as u32).map_err(|e| e.to_string())?;
            ensure(rep.validate().is_empty(), || format!("zmodp_rep({p}) invalid"))?;
            let d = rep.equality_differences().map_err(|e| e.to_string())?;
            ensure(d.len() == 1 && d[0].as_constant() == Some(BigInt::from(p)), || {
                format!("zmodp_rep({p}) difference {:?}", d.iter().map(ToString::to_string).collect::<Vec<_>>())
            })?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 20 {
            let (f, g) = (random_poly(&mut rng), random_poly(&mut rng));
            let (pf, pg) = (PolyZ::parse(2, &f).unwrap(), PolyZ::parse(2, &g).unwrap());
            if pf == pg {
                continue;
            }
            let alg = PresentedAlgebra::new(2).relation(&f, &g).map_err(|e| e.to_string())?;
            let rep = compile_algebra(&alg).map_err(|e| e.to_string())?;
            ensure(rep.validate().is_empty(), || format!("{f} = {g}: invalid rep"))?;
            let d = rep.equality_differences().map_err(|e| e.to_string())?;
            ensure(d == vec![pf.sub(&pg)], || format!("{f} = {g}: difference {}", d[0]))?;
            done += 1;
        }
        Ok(format!("{} primes and 20 random relations", primes.len()))
    })();
    report(7, "monic representations", start, result);
}

fn gadget_input(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let v = Rationals.random(rng, 50);
        if !v.is_zero() && !v.is_one() && v != -BigRational::one() {
            return v;
        }
    }
}

#[test]
fn criterion_08_gadgets() {
    let start = Instant::now();
    let result = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let value = |kind, inputs: &[BigRational], seed| match gadget_check(kind, inputs, seed) {
            Ok(GadgetOutput::Value(v)) => Ok(v),
            other => Err(format!("{kind:?} {inputs:?}: {other:?}")),
        };
        for seed in 0..1000 {
            let (a, b) = (gadget_input(&mut rng), gadget_input(&mut rng));
            ensure(value(GadgetKind::Mul, &[a.clone(), b.clone()], seed)? == &a * &b, || format!("mul {a} {b}"))?;
            let b2 = if a == b { gadget_input(&mut rng) } else { b.clone() };
            if a != b2 {
                ensure(value(GadgetKind::Add, &[a.clone(), b2.clone()], seed)? == &a + &b2, || format!("add {a} {b2}"))?;
            }
            ensure(value(GadgetKind::Inc, &[a.clone()], seed)? == &a + BigRational::one(), || format!("inc {a}"))?;
            let c = if seed % 2 == 0 { a.clone() } else { b.clone() };
            for kind in [GadgetKind::Eq, GadgetKind::Ne] {
                let got = gadget_check(kind, &[a.clone(), c.clone()], seed);
                ensure(got == Ok(GadgetOutput::Coincide(a == c)), || format!("{kind:?} {a} {c}: {got:?}"))?;
            }
        }
        Ok("1000 inputs per gadget".into())
    })();
    report(8, "gadget contracts", start, result);
}

#[test]
fn criterion_09_end_to_end_witness() {
    let start = Instant::now();
    let c = compile(&zmodp_rep(5).unwrap()).unwrap();
    let opts = WitnessOptions::default();
    let mut found = None;
    let mut attempts = Vec::new();
    for k in 1..=4 {
        let f = FiniteField::new(5, k).unwrap();
        for seed in 0..4 {
            match witness_random(&c, &f, seed, opts) {
                Ok(w) if collinearity_matroid(&w.config).is_ok_and(|m| m == c.matroid) => {
                    found = Some(k);
                    break;
                }
                Ok(_) => attempts.push(format!("F_5^{k}: round trip failed")),
                Err(e) => attempts.push(format!("F_5^{k} seed {seed}: {e}")),
            }
        }
        if found.is_some() {
            break;
        }
    }
    // Not part of the criterion: the smallest extension that does work.
    let larger = (5..=6).find(|&k| {
        let f = FiniteField::new(5, k).unwrap();
        witness_random(&c, &f, 0, opts).is_ok_and(|w| collinearity_matroid(&w.config).is_ok_and(|m| m == c.matroid))
    });
    let f7 = FiniteField::prime(7).unwrap();
    let wrong = witness_random(&c, &f7, 0, opts);
    let trivial = compile(&MonicRep::free(1)).unwrap();
    let q = Rationals;
    let tw = witness(&trivial, &q, &[q.from_int(7)], &q.from_int(2), 0);

    let result = (|| {
        ensure(matches!(wrong, Err(Error::EqualityViolated(..))), || format!("F7 gave {:?}", wrong.as_ref().err()))?;
        let tw = tw.map_err(|e| format!("trivial rep over Q: {e}"))?;
        ensure(collinearity_matroid(&tw.config).is_ok_and(|m| m == trivial.matroid), || "trivial round trip".into())?;
        match found {
            Some(k) => Ok(format!("witness over F_5^{k}; F7 violates the equality; trivial Q-witness ok")),
            None => Err(format!(
                "no witness over F_5^k for k <= 4 ({}); smallest working extension tried: {}",
                attempts.last().cloned().unwrap_or_default(),
                larger.map_or("none up to k = 6".into(), |k| format!("F_5^{k}"))
            )),
        }
    })();
    report(9, "end-to-end witness", start, result);
}

#[test]
fn criterion_10_bound() {
    let start = Instant::now();
    let result = (|| {
        let formula = |p: u64, extra: u64| {
            let l = sqrt_floor_below(p);
            7 * (l + p - l * l) + extra
        };
        let primes: Vec<u64> = primes_up_to(20011).into_iter().filter(|&p| p >= 443).collect();
        for &p in &primes {
            let r = bound_check(p as u32).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("p = {p} fails: {r}"))?;
            ensure(r.equality_count as u64 == formula(p, 63) && r.inequality_count as u64 == formula(p, 64), || {
                format!("p = {p}: {r}")
            })?;
        }
        let r = bound_check(439).map_err(|e| e.to_string())?;
        ensure(!r.pass && r.max_count == 477, || format!("p = 439: {r}"))?;
        for p in [443u32, 1009] {
            let c = compile(&zmodp_rep(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let r = bound_check(p).unwrap();
            ensure(c.matroid.len() == r.equality_count && c.certificate.elements == r.equality_count, || {
                format!("p = {p}: compiled {} elements, bound says {}", c.matroid.len(), r.equality_count)
            })?;
        }
        ensure(start.elapsed().as_secs_f64() < 5.0, || format!("took {:?}", start.elapsed()))?;
        Ok(format!("{} primes pass, 439 fails with 477", primes.len()))
    })();
    report(10, "characteristic bound", start, result);
}

#[test]
fn criterion_11_harmonic() {
    let start = Instant::now();
    let mut named: Vec<Matroid> = vec![fano(), non_fano(), u34(), five_point(), four_lines(), two_flat(2, 2), two_flat(2, 3)];
    named.extend((4..=7).map(u2ext));
    named.extend((4..=6).map(uniform));
    named.push(pg2(2).unwrap());
    named.push(pg2(3).unwrap());
    named.push(by_name("two_flat:3,3").unwrap());
    let result = (|| {
        let mut cases = 0;
        for m in &named {
            let d = matroid_divisor(m);
            for e in 0..m.len() {
                let h = build_harmonic_modification(m, e).map_err(|err| err.to_string())?;
                check_harmonic(&h).map_err(|err| format!("{m:?} at {}: {err}", m.element(e)))?;
                let mut want = d.clone();
                want.add_point(h.levi.element_vertex(e), -1);
                ensure(central_fiber(&h) == want, || format!("central fiber at {}", m.element(e)))?;
                let deg = h.local_degree[h.levi.element_vertex(e)] as usize;
                ensure(deg == m.flats_through(e).len(), || format!("local degree {deg} at {}", m.element(e)))?;
                cases += 1;
            }
        }
        Ok(format!("{cases} (matroid, element) pairs"))
    })();
    report(11, "harmonic modification", start, result);
}
