//! Weyl sums, the equidistribution scan, integer relations and rational
//! approximation.

use gowerslab::equidist::{equidist_test, integer_relation, rational_approx, weyl_sum, TorusOrbit};
use gowerslab::real::{Exact, Real};

fn main() -> gowerslab::error::Result<()> {
    let s = weyl_sum(&[Exact::zero(), Exact::new(1, 3), Exact::new(1, 5)], 1000)?;
    println!("|E e(n/3 + n^2/5)| over [1000] = {:.4}", s.norm());

    let golden = Exact::from_f64_decimal(0.6180339887)?;
    let orbit = TorusOrbit::linear(&[golden.clone()], 2000);
    let r = equidist_test(&orbit, 0.1, 8)?;
    println!("golden rotation equidistributed at eps 0.1: {}", r.equidistributed);

    let rational = TorusOrbit::linear(&[Exact::new(2, 7), Exact::new(1, 3)], 2000);
    let r = equidist_test(&rational, 0.1, 8)?;
    println!("(2/7, 1/3) witness: {:?}", r.witness);

    let rel = integer_relation(&[Exact::new(1, 2), Exact::new(1, 3)], 5, 1e-12)?;
    println!("relation for (1/2, 1/3): {:?}", rel.map(|r| r.m));

    let a = rational_approx(&golden, 100)?;
    println!("best a/q with q <= 100: {}/{}  ||q alpha|| = {:.2e}", a.a, a.q, a.dist);
    Ok(())
}
