//! Seeded random inputs shared by the verification harness and tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::real::Exact;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational `p/q` with `1 <= q <= max_den` and `|p/q| <= bound`.
pub fn rational(rng: &mut impl Rng, max_den: i64, bound: i64) -> Exact {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-bound * q..=bound * q);
    Exact::new(p, q)
}

/// Random rational in `[0, 1)`.
pub fn unit_rational(rng: &mut impl Rng, max_den: i64) -> Exact {
    let q = rng.gen_range(1..=max_den);
    Exact::new(rng.gen_range(0..q), q)
}

/// Uniform point of the closed unit disc.
pub fn disc_point(rng: &mut impl Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, std::f64::consts::TAU * rng.gen::<f64>())
}

pub fn disc_vec(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| disc_point(rng)).collect()
}
