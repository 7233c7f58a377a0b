//! Prime 5-term progressions: sieve, exact census, the singular-series
//! constant `gamma = 27/16 prod_{p >= 5} p^3 (p - 4) / (p - 1)^4`, and the
//! comparison with `gamma N^2 / log^5 N`.

use rayon::prelude::*;
use serde::Serialize;

use crate::additive::Bits;
use crate::error::{Error, Result};
use crate::real::Exact;
use crate::sum::check_budget;

pub const SIEVE_MAX: u128 = 100_000_000;
pub const COUNT_MAX: u128 = 1_000_000;
/// Largest `P` for which `gamma` is also carried as an exact rational.
pub const EXACT_GAMMA_MAX: u64 = 1_000;
/// Truncation of the product used by [`compare_asymptotic`].
pub const GAMMA_P: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct PrimeTable {
    pub n: u64,
    bits: Bits,
    pub primes: Vec<u64>,
}

impl PrimeTable {
    pub fn is_prime(&self, x: u64) -> bool {
        x <= self.n && self.bits.get(x as usize)
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }
}

pub fn sieve(n: u64) -> Result<PrimeTable> {
    check_budget("sieve bound N", n as u128, SIEVE_MAX)?;
    let len = n as usize + 1;
    let mut composite = vec![false; len];
    let mut i = 2;
    while i * i < len {
        if !composite[i] {
            for j in (i * i..len).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    let mut bits = Bits::new(len);
    let mut primes = Vec::new();
    for (x, &c) in composite.iter().enumerate().skip(2) {
        if !c {
            bits.set(x);
            primes.push(x as u64);
        }
    }
    Ok(PrimeTable { n, bits, primes })
}

/// Double-double arithmetic: `hi + lo` with `|lo| <= ulp(hi) / 2`, about
/// 106 bits of significand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact for `|x| < 2^106`.
    pub fn from_u128(x: u128) -> Self {
        let hi = x as f64;
        let rest = x as i128 - hi as i128;
        let (hi, lo) = quick_two_sum(hi, rest as f64);
        DoubleDouble { hi, lo }
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    pub fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        self.mul(DoubleDouble::from_f64(b))
    }

    pub fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }.add(DoubleDouble::from_f64(q3))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// First `digits` decimals of a value in `[0, 10)`.
    pub fn to_decimal(self, digits: usize) -> String {
        let mut x = self;
        let int = x.to_f64().floor();
        x = x.sub(DoubleDouble::from_f64(int));
        let mut s = format!("{}.", int as i64);
        for _ in 0..digits {
            x = x.mul_f64(10.0);
            let mut d = x.to_f64().floor();
            if d < 0.0 {
                d = 0.0;
            }
            x = x.sub(DoubleDouble::from_f64(d));
            s.push(char::from(b'0' + d.min(9.0) as u8));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub p_max: u64,
    pub value: f64,
    /// `[hi, lo]` of the double-double product.
    pub value_dd: [f64; 2],
    pub digits: String,
    /// Bound on `value(P) - gamma`.
    pub tail_bound: f64,
    pub primes_used: usize,
    /// The same truncation as an exact rational, for `P <= EXACT_GAMMA_MAX`.
    pub exact: Option<Exact>,
}

/// `(p - 1)^4 - p^3 (p - 4) = 6p^2 - 4p + 1`, so each factor is `1 - x_p`.
fn factor_deficit(p: u64) -> DoubleDouble {
    let p = p as u128;
    let num = 6 * p * p - 4 * p + 1;
    let den = (p - 1).pow(4);
    DoubleDouble::from_u128(num).div(DoubleDouble::from_u128(den))
}

/// `sum_{p > P} -log(1 - x_p) <= c sum_{n > P} 1/n^2 < c / P`, with `c = 7`
/// valid for `p >= 29` and `c = 12` for `p >= 7`.
fn tail_constant(p_max: u64) -> f64 {
    if p_max >= 28 {
        7.0
    } else {
        12.0
    }
}

pub fn hl_gamma(p_max: u64) -> Result<GammaEstimate> {
    if p_max < 5 {
        return Err(Error::param("P", "must be at least 5"));
    }
    let table = sieve(p_max)?;
    let ps: Vec<u64> = table.primes.iter().copied().filter(|&p| p >= 5).collect();
    let mut v = DoubleDouble::from_f64(27.0).div(DoubleDouble::from_f64(16.0));
    for &p in &ps {
        v = v.mul(DoubleDouble::ONE.sub(factor_deficit(p)));
    }
    let exact = (p_max <= EXACT_GAMMA_MAX).then(|| {
        ps.iter().fold(Exact::new(27, 16), |acc, &p| {
            let p = p as i64;
            acc * Exact::new(p.pow(3) * (p - 4), (p - 1).pow(4))
        })
    });
    let s = tail_constant(p_max) / p_max as f64;
    let value = v.to_f64();
    Ok(GammaEstimate {
        p_max,
        value,
        value_dd: [v.hi, v.lo],
        digits: v.to_decimal(30),
        // value - gamma = value (1 - exp(-tail)) <= value * tail
        tail_bound: value * s,
        primes_used: ps.len(),
        exact,
    })
}

/// Number of `(p, d)`, `d >= 1`, with `p, p + d, .., p + 4d` prime and at most `N`.
pub fn count_prime_5aps(n: u64) -> Result<u64> {
    check_budget("5-AP census bound N", n as u128, COUNT_MAX)?;
    let t = sieve(n)?;
    Ok(count_with_table(&t, n))
}

fn count_with_table(t: &PrimeTable, n: u64) -> u64 {
    let ps = &t.primes;
    ps.par_iter()
        .enumerate()
        .map(|(i, &p1)| {
            let mut c = 0u64;
            for &p2 in &ps[i + 1..] {
                let d = p2 - p1;
                if p1 + 4 * d > n {
                    break;
                }
                if t.is_prime(p1 + 2 * d) && t.is_prime(p1 + 3 * d) && t.is_prime(p1 + 4 * d) {
                    c += 1;
                }
            }
            c
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticPoint {
    pub n: u64,
    pub count: u64,
    /// `gamma N^2 / ln^5 N`
    pub prediction: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticComparison {
    pub gamma: f64,
    pub gamma_p_max: u64,
    pub at_n: AsymptoticPoint,
    /// The same at `2N`, for the trend.
    pub at_2n: AsymptoticPoint,
}

pub fn prediction(gamma: f64, n: u64) -> f64 {
    let x = n as f64;
    gamma * x * x / x.ln().powi(5)
}

pub fn compare_asymptotic(n: u64) -> Result<AsymptoticComparison> {
    if n < 1000 {
        return Err(Error::param("N", "must be at least 1000"));
    }
    check_budget("5-AP census bound 2N", 2 * n as u128, COUNT_MAX)?;
    let gamma = hl_gamma(GAMMA_P)?.value;
    let t = sieve(2 * n)?;
    let point = |m: u64| {
        let count = count_with_table(&t, m);
        let prediction = prediction(gamma, m);
        AsymptoticPoint { n: m, count, prediction, ratio: count as f64 / prediction }
    };
    Ok(AsymptoticComparison { gamma, gamma_p_max: GAMMA_P, at_n: point(n), at_2n: point(2 * n) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Real;

    fn trial(x: u64) -> bool {
        x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve(10).unwrap().primes, vec![2, 3, 5, 7]);
        assert_eq!(sieve(100).unwrap().count(), 25);
        let t = sieve(10_000).unwrap();
        assert!((0..=10_000).all(|x| t.is_prime(x) == trial(x)));
        assert_eq!(sieve(100_000).unwrap().count(), (0..=100_000).filter(|&x| trial(x)).count());
        assert!(sieve(0).unwrap().primes.is_empty());
    }

    #[test]
    fn gamma_small_p_is_exact() {
        let g = hl_gamma(5).unwrap();
        assert_eq!(g.exact, Some(Exact::new(3375, 4096)));
        assert_eq!(g.value, 0.823974609375);
        assert_eq!(g.value_dd[1], 0.0);
        let g7 = hl_gamma(7).unwrap();
        assert_eq!(g7.exact, Some(Exact::new(3375, 4096) * Exact::new(1029, 1296)));
        assert!(hl_gamma(4).is_err());
    }

    #[test]
    fn gamma_double_double_matches_exact() {
        for p in [11, 97, 500, 1000] {
            let g = hl_gamma(p).unwrap();
            let ex = g.exact.clone().unwrap();
            let diff = Exact::from_f64_exact(g.value_dd[0]).unwrap() + Exact::from_f64_exact(g.value_dd[1]).unwrap() - ex;
            assert!(diff.abs().to_f64() < 1e-28, "P={p}: {diff}");
        }
    }

    #[test]
    fn gamma_decreases_within_tail_bound() {
        let ps = [5, 7, 13, 28, 29, 100, 1000, 10_000];
        let gs: Vec<GammaEstimate> = ps.iter().map(|&p| hl_gamma(p).unwrap()).collect();
        for w in gs.windows(2) {
            assert!(w[1].value <= w[0].value);
            assert!(w[1].value >= w[0].value - w[0].tail_bound);
        }
        assert!(gs[0].value > gs[1].value);
    }

    #[test]
    fn tail_constant_dominates_each_factor() {
        for p in sieve(10_000).unwrap().primes.into_iter().filter(|&p| p >= 7) {
            let x = factor_deficit(p).to_f64();
            let c = if p >= 29 { 7.0 } else { 12.0 };
            assert!(-(1.0 - x).ln() <= c / (p * p) as f64, "p = {p}");
        }
    }

    fn brute_5aps(n: u64) -> u64 {
        let mut c = 0;
        for p in (2..=n).filter(|&x| trial(x)) {
            for d in 1.. {
                if p + 4 * d > n {
                    break;
                }
                if (1..=4).all(|j| trial(p + j * d)) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn census_examples() {
        assert_eq!(count_prime_5aps(28).unwrap(), 0);
        assert_eq!(count_prime_5aps(29).unwrap(), 1);
        for n in [100, 1000, 3000] {
            assert_eq!(count_prime_5aps(n).unwrap(), brute_5aps(n), "N = {n}");
        }
        let c: Vec<u64> = (20..200).map(|n| count_prime_5aps(n).unwrap()).collect();
        assert!(c.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn double_double_basics() {
        let third = DoubleDouble::ONE.div(DoubleDouble::from_f64(3.0));
        let back = third.mul_f64(3.0).sub(DoubleDouble::ONE);
        assert!(back.to_f64().abs() < 1e-31);
        assert_eq!(third.to_decimal(25), "0.3333333333333333333333333");
        let big = DoubleDouble::from_u128((1u128 << 100) + 3);
        assert_eq!(big.hi as u128 + big.lo as i128 as u128, (1u128 << 100) + 3);
    }
}
