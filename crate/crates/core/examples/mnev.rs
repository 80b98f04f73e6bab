//! Compiling a representation to a matroid and realizing it.

use matroid_divisors::field::Rationals;
use matroid_divisors::mnev::{compile, witness_random, WitnessOptions};
use matroid_divisors::monic_slp::{zmodp_rep, Instr, MonicRep};
use matroid_divisors::projective::collinearity_matroid;

fn main() {
    let mut rep = MonicRep::free(1);
    let s = rep.push(Instr::Mul(1, 1));
    rep.push(Instr::Add(s, 1));
    let c = compile(&rep).unwrap();
    println!("y^2 + y: {} elements, {} flats", c.matroid.len(), c.matroid.counts().l);

    let q = Rationals;
    let w = witness_random(&c, &q, 1, WitnessOptions::default()).unwrap();
    assert!(collinearity_matroid(&w.config).unwrap() == c.matroid);
    println!("realized over Q after {} redraws; last value {}", w.redraws, w.values.last().unwrap());

    let c5 = compile(&zmodp_rep(5).unwrap()).unwrap();
    println!("Z/5: {} elements, {} forced extra lines", c5.matroid.len(), c5.forced.len());
}
