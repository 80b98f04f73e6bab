//! Lifting verdicts in a few characteristics.

use matroid_divisors::matroid::{fano, u2ext};
use matroid_divisors::projective::{lifting_verdict, u2ext_galois_realization, SearchBudget, VerdictRequest};

fn main() {
    let req = |p| VerdictRequest { characteristic: p, extension_bound: 3, field_degree: None, budget: SearchBudget::default() };
    for p in [2, 3] {
        println!("fano, p = {p}: {}", lifting_verdict(&fano(), req(p)).unwrap().label());
    }
    println!("u2ext(6), p = 3: {}", lifting_verdict(&u2ext(6), req(3)).unwrap().label());

    let g = u2ext_galois_realization(6, 3).unwrap();
    println!("u2ext(6) via roots of {:?} in a field of {} elements", g.polynomial, g.config.field.size());
}
