//! Properties of monic representations and their compiler.

use matroid_divisors::field::{primes_up_to, Field, FiniteField, Rationals};
use matroid_divisors::monic_slp::{compile_algebra, sqrt_floor_below, zinvp_rep, zmodp_rep, Instr, MonicRep, PolyZ, PresentedAlgebra};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn zmodp_for_all_primes_below_ten_thousand() {
    for p in primes_up_to(10_000) {
        let l = sqrt_floor_below(p);
        assert!(l * l < p && p <= (l + 1) * (l + 1), "p = {p}");
        let rep = zmodp_rep(p as u32).unwrap();
        assert!(rep.validate().is_empty(), "p = {p}");
        let diffs = rep.equality_differences().unwrap();
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].as_constant(), Some(BigInt::from(p)), "p = {p}");
        for v in rep.eval_symbolic_all().unwrap() {
            assert!(v.is_monic_in_t());
        }
    }
}

#[test]
fn zinvp_inverts_p() {
    for p in [2u32, 3, 5, 7, 101] {
        let rep = zinvp_rep(p).unwrap();
        assert!(rep.eq.is_empty());
        assert_eq!(rep.ineq.len(), 1);
        let vals = rep.eval_symbolic_all().unwrap();
        let (i, j) = rep.ineq[0];
        assert_eq!(vals[i].sub(&vals[j]).as_constant(), Some(BigInt::from(p)));
    }
}

fn instr_strategy(len: usize) -> impl Strategy<Value = Vec<(u8, prop::sample::Index, prop::sample::Index)>> {
    proptest::collection::vec((0u8..3, any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..=len)
}

fn build_rep(n: usize, raw: &[(u8, prop::sample::Index, prop::sample::Index)]) -> MonicRep {
    let mut rep = MonicRep::free(n);
    for (op, a, b) in raw {
        let avail = rep.last_index() + 1;
        let (j, k) = (a.index(avail), b.index(avail));
        rep.push(match op {
            0 => Instr::Mul(j, k),
            1 => Instr::Add(j, k),
            _ => Instr::Inc(j),
        });
    }
    rep
}

fn poly_string() -> impl Strategy<Value = String> {
    proptest::collection::vec((1u32..4, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
        terms.iter().map(|(c, a, b)| format!("{c}*y1^{a}*y2^{b}")).collect::<Vec<_>>().join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_is_a_homomorphic_image(n in 0usize..=2, raw in instr_strategy(6), seed in any::<u64>()) {
        let rep = build_rep(n, &raw);
        prop_assume!(rep.validate().is_empty());
        let vals = rep.eval_symbolic_all().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::new(101, 1).unwrap();
        let y: Vec<u32> = (0..n).map(|_| rng.gen_range(0..101)).collect();
        let t = rng.gen_range(0..101);
        let ev = rep.eval_at(&f, &y, &t).unwrap();
        for (i, v) in vals.iter().enumerate() {
            prop_assert_eq!(ev.values[i], v.eval(&f, &y, &t));
        }
        let q = Rationals;
        let y: Vec<_> = (0..n).map(|_| q.random(&mut rng, 20)).collect();
        let t = q.random(&mut rng, 20);
        let ev = rep.eval_at(&q, &y, &t).unwrap();
        for (i, v) in vals.iter().enumerate() {
            prop_assert_eq!(&ev.values[i], &v.eval(&q, &y, &t));
        }
    }

    #[test]
    fn compiled_relations_round_trip(f in poly_string(), g in poly_string(), h in poly_string()) {
        let (pf, pg) = (PolyZ::parse(2, &f).unwrap(), PolyZ::parse(2, &g).unwrap());
        prop_assume!(pf != pg);
        let alg = PresentedAlgebra::new(2).relation(&f, &g).unwrap().inversion(&h, "0").unwrap();
        let rep = compile_algebra(&alg).unwrap();
        prop_assert!(rep.validate().is_empty());
        prop_assert_eq!(rep.equality_differences().unwrap(), vec![pf.sub(&pg)]);
        let vals = rep.eval_symbolic_all().unwrap();
        let (i, j) = rep.ineq[0];
        prop_assert_eq!(vals[i].sub(&vals[j]), PolyZ::parse(2, &h).unwrap());
    }

    #[test]
    fn json_round_trip(n in 0usize..=2, raw in instr_strategy(6)) {
        let rep = build_rep(n, &raw);
        prop_assert_eq!(MonicRep::from_json(&rep.to_json()).unwrap(), rep);
    }
}

#[test]
fn flagged_parameters_are_finite() {
    // For fixed y some t avoids every flag once the field is large enough.
    let alg = PresentedAlgebra::new(1).relation("y1^2 + 1", "2*y1").unwrap();
    let rep = compile_algebra(&alg).unwrap();
    let f = FiniteField::new(7, 3).unwrap();
    let y = [f.from_int(1)];
    let clean = (0..f.size()).filter(|t| rep.eval_at(&f, &y, t).unwrap().is_clean()).count();
    assert!(clean > 0);
    assert!(clean < f.size() as usize);
}
