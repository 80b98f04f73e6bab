//! Searching for realizations over small fields.

use matroid_divisors::field::FiniteField;
use matroid_divisors::matroid::{fano, non_fano, pg2};
use matroid_divisors::projective::{frobenius_closed, realization_search, SearchBudget};

fn main() {
    let budget = SearchBudget::default();
    for (name, m) in [("fano", fano()), ("non_fano", non_fano())] {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            println!("{name} over F_{}: {}", p.pow(k), realization_search(&m, &f, budget).label());
        }
    }

    let pg = pg2(4).unwrap();
    let f4 = FiniteField::new(2, 2).unwrap();
    if let Some(cfg) = realization_search(&pg, &f4, budget).found() {
        println!("PG(2,4) over F_4, Frobenius-closed: {}", frobenius_closed(cfg, 2).unwrap());
    }
}
