//! The singular series for 5-term progressions of primes against a count.

use gowerslab::primes::{compare_asymptotic, count_prime_5aps, hl_gamma};

fn main() -> gowerslab::error::Result<()> {
    let g = hl_gamma(5)?;
    println!("gamma over p <= 5: {}", g.exact.unwrap());
    let g = hl_gamma(1_000_000)?;
    println!("gamma ~ {}  (tail <= {:.1e})", g.digits, g.tail_bound);
    println!("5-APs of primes up to 1000: {}", count_prime_5aps(1000)?);
    let c = compare_asymptotic(100_000)?;
    for p in [&c.at_n, &c.at_2n] {
        println!("N = {:>6}  count {:>8}  predicted {:>10.1}  ratio {:.3}", p.n, p.count, p.prediction, p.ratio);
    }
    Ok(())
}
