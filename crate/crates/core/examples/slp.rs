//! Monic straight-line programs: the Z/p template and a compiled algebra.

use matroid_divisors::field::{Field, FiniteField};
use matroid_divisors::monic_slp::{compile_algebra, zmodp_rep, PresentedAlgebra};

fn main() {
    let rep = zmodp_rep(13).unwrap();
    let c = rep.counts();
    println!("zmodp_rep(13): {} additions, {} products, {} increments", c.a, c.m, c.o);
    println!("difference: {}", rep.equality_differences().unwrap()[0]);

    let alg = PresentedAlgebra::new(1).relation("y1^2 + 1", "2*y1").unwrap();
    let rep = compile_algebra(&alg).unwrap();
    println!("y1^2 + 1 = 2*y1 compiles to {} instructions", rep.counts().a + rep.counts().m + rep.counts().o);

    // Over F_7 every t hits a degenerate step; a larger field has room.
    for k in [1, 3] {
        let f = FiniteField::new(7, k).unwrap();
        let y = [f.from_int(1)];
        let ts = f.elements().unwrap();
        let clean = ts.iter().filter(|t| rep.eval_at(&f, &y, t).is_ok_and(|e| e.is_clean())).count();
        println!("F_7^{k}, y1 = 1: {clean} of {} values of t are clean", ts.len());
    }
}
