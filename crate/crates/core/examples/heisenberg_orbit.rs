//! An orbit in the Heisenberg group (free 2-step, two generators) and the
//! matching orbit in the free 3-step group.

use gowerslab::nilgroup::{f312_closed_form, f312_orbit, nilchar2, nilchar2_closed_form, PolySeq2};
use gowerslab::real::{Exact, Real};

fn main() {
    let seq = PolySeq2 { xi: vec![Exact::new(1, 3), Exact::new(2, 5)], quad: vec![[Exact::new(1, 7), Exact::zero(), Exact::zero()]] };
    println!("n  group-path  closed-form");
    for n in 1..=10 {
        let a: Exact = nilchar2(&seq, 2, 1, n);
        let b: Exact = nilchar2_closed_form(&seq, 2, 1, n);
        println!("{n:<2} {a:<11} {b}");
    }

    let (a, b, c) = (Exact::new(1, 3), Exact::new(2, 5), Exact::new(1, 7));
    let agree = (0..=200).all(|n| f312_orbit(&a, &b, &c, n) == f312_closed_form(&a, &b, &c, n));
    println!("F_312 orbit matches its closed form for n <= 200: {agree}");
}
