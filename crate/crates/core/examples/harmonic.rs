//! The harmonic modification at one element, printed as Graphviz.

use matroid_divisors::matroid::non_fano;
use matroid_divisors::matroid_divisor::{build_harmonic_modification, central_fiber, check_harmonic};

fn main() {
    let m = non_fano();
    let e = 0;
    let h = build_harmonic_modification(&m, e).unwrap();
    check_harmonic(&h).unwrap();
    let fiber = central_fiber(&h);
    eprintln!("element {}: central fiber {}", m.element(e), fiber.display(&h.levi.graph));
    println!("{}", h.to_dot());
}
