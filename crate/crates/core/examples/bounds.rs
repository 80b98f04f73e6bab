//! Element counts against the characteristic, around the crossover.

use matroid_divisors::field::primes_up_to;
use matroid_divisors::mnev::bound_check;

fn main() {
    for p in primes_up_to(470).into_iter().filter(|&p| p >= 420) {
        println!("{}", bound_check(p as u32).unwrap());
    }
}
