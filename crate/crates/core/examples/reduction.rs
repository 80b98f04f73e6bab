//! Dhar's burning algorithm on the Fano Levi graph.

use matroid_divisors::chip_firing::{dhar_reduce, is_q_reduced};
use matroid_divisors::matroid::fano;
use matroid_divisors::matroid_divisor::{levi_graph, matroid_divisor};

fn main() {
    let m = fano();
    let [e1, e2, e3] = m.find_basis().unwrap();
    let lg = levi_graph(&m);
    let g = &lg.graph;
    let flat = |a, b| lg.flat_vertex(m.flat_index(a, b));

    let mut d = matroid_divisor(&m);
    for f in [flat(e1, e2), flat(e1, e3), flat(e2, e3)] {
        d.add_point(f, -1);
    }
    let q = flat(e2, e3);
    let red = dhar_reduce(g, &d, q);
    println!("start:   {}", d.display(g));
    println!("reduced: {}", red.divisor.display(g));
    println!("{} firings, reduced at {}: {}", red.script.len(), g.vertices()[q], is_q_reduced(g, &red.divisor, q));
    assert_eq!(red.replay(g, &d), red.divisor);
}
