//! Named matroids, their counts, and the enumeration of small ones.

use matroid_divisors::matroid::{enumerate_rank3_simple, fano, non_fano, u2ext, u34};
use matroid_divisors::matroid_divisor::{classify, genus, rho_matroid};

fn main() {
    for (name, m) in [("fano", fano()), ("non_fano", non_fano()), ("u34", u34()), ("u2ext(6)", u2ext(6))] {
        let c = m.counts();
        println!("{name:>9}: n = {}, lines = {}, flags = {}, genus = {}, rho = {}", c.n, c.l, c.m, genus(&m), rho_matroid(&m));
    }

    for n in 3..=7 {
        let all = enumerate_rank3_simple(n).expect("small n");
        let listed = all.iter().filter(|m| classify(m).case().is_some()).count();
        println!("n = {n}: {} simple rank-3 matroids, {listed} with rho >= 0", all.len());
    }
}
