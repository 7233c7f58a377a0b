//! Checks the bracket-polynomial identities in exact arithmetic.

use gowerslab::bracket::{symmetrize_trilinear, verify_bracket_lemma, verify_trilinear, LemmaCase, TrilinearForm};
use gowerslab::real::{Exact, Scaled, Real};

fn main() -> gowerslab::error::Result<()> {
    let q = Exact::new;
    let params: [Vec<Exact>; 6] = [
        vec![q(2, 7), q(-9, 4)],
        vec![q(1, 3), q(5, 11), q(7, 13)],
        vec![q(3, 5), q(1, 9), q(-2, 7)],
        vec![q(1, 3), q(1, 7)],
        vec![q(2, 5)],
        vec![q(1, 6), q(4, 9), q(7, 10)],
    ];
    for (case, p) in LemmaCase::all().into_iter().zip(params) {
        let v: Vec<Scaled> = p.iter().map(Scaled::from_exact).collect();
        let r = verify_bracket_lemma(case, &v, 1..=2000)?;
        println!("{:>6}  passed={}  corrections: {}", r.case, r.passed, r.corrections.join(", "));
    }

    let t = TrilinearForm::new(vec![[q(1, 2), q(1, 3), q(1, 5)]], vec![[q(2, 9), q(3, 7)]]);
    let s = symmetrize_trilinear(&t);
    println!("beta~ = {:?}", s.beta_tilde.iter().map(|b| b.to_string()).collect::<Vec<_>>());
    let r = verify_trilinear::<Exact>(&t, 60)?;
    println!("trilinear: symmetric={} diagonal={}", r.symmetric, r.diagonal);
    Ok(())
}
