//! Nilsequence phases keep a large U^{s+1} norm as N grows, and the
//! quadruple count of the Cauchy-Schwarz step meets its bound.

use gowerslab::real::{Exact, Real};
use gowerslab::seqfun::{PhaseSpec, Precision};
use gowerslab::verify::{check_necessity, run_gowers_pipeline, NecessityParams, PipelineParams};

fn main() -> gowerslab::error::Result<()> {
    let phase: PhaseSpec = serde_json::from_str(r#"{"kind":"bracket","expr":"floor(1/3*n)*2/7*n"}"#)?;
    let p = NecessityParams { s: 2, phase, n_grid: vec![16, 32, 64], precision: Precision::Rational };
    let r = check_necessity(&p, 0)?;
    println!("{}: passed={} measured={}", r.claim, r.passed, r.measured);

    let f = PhaseSpec::poly(&[Exact::zero(), Exact::zero(), Exact::new(3, 7)]);
    let p = PipelineParams { n: 32, f: Some(f), shifts: None, delta: None, c: 0.01, samples: 4, floor: None };
    let r = run_gowers_pipeline(&p, 1)?;
    println!("{}: passed={} margin={:.3}", r.claim, r.passed, r.margin);
    println!("reproduce: {}", r.invocation);
    Ok(())
}
