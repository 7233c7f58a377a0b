//! U^k norms of a few phases on Z_M and on [N].

use gowerslab::gowers::{gowers_norm_group, gowers_norm_interval, Method};
use gowerslab::real::{Exact, Real};
use gowerslab::seqfun::{Domain, PhaseSpec, Precision};

fn main() -> gowerslab::error::Result<()> {
    let quad = PhaseSpec::poly(&[Exact::zero(), Exact::new(1, 97), Exact::new(5, 97)]);
    let cubic = PhaseSpec::poly(&[Exact::zero(), Exact::zero(), Exact::zero(), Exact::new(1, 11)]);

    // a quadratic phase on Z_97 is small in U^2 but has U^3 norm 1
    let f = quad.sample(Domain::Cyclic(97), Precision::Rational)?;
    for k in 2..=4 {
        let r = gowers_norm_group(&f, k, Method::Recursion)?;
        println!("Z_97  quadratic  U^{k} = {:.6}", r.norm);
    }

    let g = cubic.sample(Domain::Interval(48), Precision::Rational)?;
    for k in 2..=4 {
        let r = gowers_norm_interval(&g, k, None, Method::Recursion)?;
        println!("[48]  cubic      U^{k} = {:.6}  (embedded in Z_{})", r.norm, r.embedded_modulus.unwrap());
    }

    let fft = gowers_norm_group(&f, 2, Method::Fft)?;
    println!("U^2 via Fourier: {:.6}", fft.norm);
    Ok(())
}
