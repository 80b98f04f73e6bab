//! Baker-Norine rank of the matroid divisor, and Riemann-Roch on a few divisors.

use matroid_divisors::chip_firing::{rank, rr_report, Divisor};
use matroid_divisors::matroid::fano;
use matroid_divisors::matroid_divisor::{levi_graph, matroid_divisor};

fn main() {
    let m = fano();
    let lg = levi_graph(&m);
    let d = matroid_divisor(&m);
    println!("Levi graph of the Fano plane: {} vertices, genus {}", lg.graph.len(), lg.graph.genus());
    println!("deg D_M = {}, rank = {}", d.degree(), rank(&lg.graph, &d).unwrap());

    for k in [0, 3, 7] {
        let mut e = Divisor::zero(lg.graph.len());
        e.add_point(0, k);
        let r = rr_report(&lg.graph, &e).unwrap();
        println!("D = {k}[{}]: r(D) = {}, r(K - D) = {}, holds = {}", m.element(0), r.rank, r.dual_rank, r.holds);
    }
}
