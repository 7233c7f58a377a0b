//! Abelian equidistribution: Weyl sums, frequency scans on tori, best
//! rational approximation, and bounded integer relations. The exact linear
//! algebra behind bounded lifts lives in [`linsolve`].

pub mod linsolve;

pub use linsolve::{solve_bounded_rational, BoundedSolution, RationalMatrixSystem};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{e, Exact, Real, Scaled};
use crate::sum::{check_budget, pairwise_sum};

/// `sum_j coeffs[j] n^j mod 1`, exactly, as a float in `[0, 1)`.
pub fn poly_phase(coeffs: &[Exact], n: i64) -> f64 {
    let nn = Scaled::from_i64(n);
    coeffs.iter().rev().fold(Scaled::zero(), |acc, c| acc * nn.clone() + Scaled::from_exact(c)).frac().to_f64()
}

/// `E_{n in [N]} e(alpha_d n^d + ... + alpha_0)`.
pub fn weyl_sum(coeffs: &[Exact], n: usize) -> Result<Complex64> {
    if coeffs.len() > 4 {
        return Err(Error::param("coeffs", "degree at most 3"));
    }
    if n == 0 {
        return Err(Error::param("N", "must be positive"));
    }
    let terms: Vec<Complex64> = (1..=n as i64).into_par_iter().map(|k| e(poly_phase(coeffs, k))).collect();
    Ok(pairwise_sum(&terms) / n as f64)
}

/// `n -> (P_1(n), ..., P_d(n)) mod 1` for `n in [N]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusOrbit {
    /// Coefficients `alpha_0..alpha_deg` of each coordinate.
    pub coords: Vec<Vec<Exact>>,
    pub n: usize,
}

impl TorusOrbit {
    /// The linear orbit `(alpha_1 n, ..., alpha_d n)`.
    pub fn linear(alphas: &[Exact], n: usize) -> Self {
        TorusOrbit { coords: alphas.iter().map(|a| vec![Exact::zero(), a.clone()]).collect(), n }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.coords.iter().any(|c| c.len() > 4) {
            return Err(Error::param("coords", "degree at most 3"));
        }
        if self.n == 0 {
            return Err(Error::param("N", "must be positive"));
        }
        Ok(())
    }

    /// `points[n-1][i]` in `[0, 1)`.
    pub fn points(&self) -> Vec<Vec<f64>> {
        (1..=self.n as i64).into_par_iter().map(|k| self.coords.iter().map(|c| poly_phase(c, k)).collect()).collect()
    }
}

/// `E_n e(m . x_n)`.
pub fn orbit_exponential_sum(points: &[Vec<f64>], m: &[i64]) -> Complex64 {
    let terms: Vec<Complex64> = points
        .iter()
        .map(|x| e(x.iter().zip(m).map(|(xi, &mi)| (mi as f64 * xi).fract()).sum::<f64>()))
        .collect();
    pairwise_sum(&terms) / points.len() as f64
}

/// Nonzero integer vectors of max-norm exactly `r` whose first nonzero
/// entry is positive, in lexicographic order.
pub fn shell(d: usize, r: i64) -> Vec<Vec<i64>> {
    fn go(d: usize, r: i64, cur: &mut Vec<i64>, hit: bool, seen_nonzero: bool, out: &mut Vec<Vec<i64>>) {
        if cur.len() == d {
            if hit {
                out.push(cur.clone());
            }
            return;
        }
        let last = cur.len() + 1 == d;
        for v in -r..=r {
            if !seen_nonzero && v < 0 {
                continue;
            }
            let h = hit || v.abs() == r;
            if last && !h {
                continue;
            }
            cur.push(v);
            go(d, r, cur, h, seen_nonzero || v != 0, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 && d > 0 {
        go(d, r, &mut Vec::with_capacity(d), false, false, &mut out);
    }
    out
}

/// Budget on `(2M + 1)^d * N` for frequency scans.
pub const SCAN_BUDGET: u128 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquidistReport {
    pub equidistributed: bool,
    /// Smallest frequency (max-norm, then lexicographic, first nonzero
    /// entry positive) whose exponential sum reaches `eps`.
    pub witness: Option<Vec<i64>>,
    pub witness_modulus: Option<f64>,
    /// Largest modulus among the frequencies scanned.
    pub max_modulus: f64,
    pub frequencies_scanned: usize,
}

/// Scans `0 < |m|_inf <= m_freq`; since `|S(-m)| = |S(m)|` only one of each
/// `+-m` is evaluated.
pub fn equidist_test(orbit: &TorusOrbit, eps: f64, m_freq: i64) -> Result<EquidistReport> {
    orbit.validate()?;
    if m_freq < 0 {
        return Err(Error::param("m_freq", "must be nonnegative"));
    }
    let d = orbit.dim();
    let boxed = (2 * m_freq as u128 + 1).checked_pow(d as u32).unwrap_or(u128::MAX);
    check_budget("frequency scan (2M+1)^d N", boxed.saturating_mul(orbit.n as u128), SCAN_BUDGET)?;
    let points = orbit.points();
    let mut max_modulus = 0.0f64;
    let mut scanned = 0;
    for r in 1..=m_freq {
        let cands = shell(d, r);
        let mods: Vec<f64> = cands.par_iter().map(|m| orbit_exponential_sum(&points, m).norm()).collect();
        scanned += cands.len();
        max_modulus = mods.iter().cloned().fold(max_modulus, f64::max);
        if let Some(i) = mods.iter().position(|&v| v >= eps) {
            return Ok(EquidistReport {
                equidistributed: false,
                witness: Some(cands[i].clone()),
                witness_modulus: Some(mods[i]),
                max_modulus,
                frequencies_scanned: scanned,
            });
        }
    }
    Ok(EquidistReport {
        equidistributed: true,
        witness: None,
        witness_modulus: None,
        max_modulus,
        frequencies_scanned: scanned,
    })
}

/// Extreme discrepancy `sup_I |#{x_i in I} / N - |I||` over intervals
/// `I ⊆ [0, 1)`, exact for the given points.
pub fn discrepancy(points: &[f64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let mut x = points.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    let above = x.iter().enumerate().map(|(i, &v)| (i + 1) as f64 / n - v).fold(f64::NEG_INFINITY, f64::max);
    let below = x.iter().enumerate().map(|(i, &v)| v - i as f64 / n).fold(f64::NEG_INFINITY, f64::max);
    above.max(0.0) + below.max(0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalApprox {
    pub a: i64,
    pub q: i64,
    /// `|alpha - a/q|`
    pub err: f64,
    /// `||q alpha||_{R/Z}`
    pub dist: f64,
}

/// Last continued-fraction convergent `a/q` of `alpha` with `q <= q_max`;
/// it minimises `||q alpha||` over `1 <= q <= q_max`.
pub fn rational_approx(alpha: &Exact, q_max: i64) -> Result<RationalApprox> {
    if q_max < 1 {
        return Err(Error::param("Q", "must be at least 1"));
    }
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::zero());
    let mut p1 = alpha.floor_big();
    let mut q1 = BigInt::from(1);
    let mut x = alpha.to_big() - num_rational::BigRational::from_integer(p1.clone());
    let qmax = BigInt::from(q_max);
    while !x.is_zero() {
        x = x.recip();
        let a = x.floor().to_integer();
        x -= num_rational::BigRational::from_integer(a.clone());
        let q2 = &a * &q1 + &q0;
        if q2 > qmax {
            break;
        }
        let p2 = &a * &p1 + &p0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    let a = p1.to_i64().ok_or_else(|| Error::param("alpha", "numerator exceeds 64 bits"))?;
    let q = q1.to_i64().expect("q <= q_max");
    let approx = Exact::new(a, q);
    let err = (alpha.clone() - approx).abs().to_f64();
    let dist = crate::real::dist_to_int_exact(&(alpha.clone() * Exact::from_integer(q))).to_f64();
    Ok(RationalApprox { a, q, err, dist })
}

pub const MAX_RELATION_DIM: usize = 6;
pub const MAX_RELATION_COEF: i64 = 20;
pub const RELATION_BUDGET: u128 = 300_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub m: Vec<i64>,
    /// `||sum m_i alpha_i||_{R/Z}`
    pub residual: f64,
}

/// Exhaustive search for `0 < |m|_inf <= max_coef` with
/// `||sum m_i alpha_i|| <= tol`, in the order of [`shell`]. `None`
/// certifies that no such relation exists.
pub fn integer_relation<R: Real>(alphas: &[R], max_coef: i64, tol: f64) -> Result<Option<Relation>> {
    let d = alphas.len();
    if d > MAX_RELATION_DIM || !(0..=MAX_RELATION_COEF).contains(&max_coef) {
        return Err(Error::param(
            "alphas",
            format!("need d <= {MAX_RELATION_DIM} and M <= {MAX_RELATION_COEF}, got d = {d}, M = {max_coef}"),
        ));
    }
    let size = (2 * max_coef as u128 + 1).pow(d as u32);
    check_budget("integer relation box (2M+1)^d", size, RELATION_BUDGET)?;
    for r in 1..=max_coef {
        let cands = shell(d, r);
        let res: Vec<f64> = cands
            .par_iter()
            .map(|m| alphas.iter().zip(m).fold(R::zero(), |acc, (a, &mi)| acc + a.scale(mi)).dist_int())
            .collect();
        if let Some(i) = res.iter().position(|&v| v <= tol) {
            return Ok(Some(Relation { m: cands[i].clone(), residual: res[i] }));
        }
    }
    Ok(None)
}

/// `max_i |m_i|`
pub fn max_norm(m: &[i64]) -> i64 {
    m.iter().map(|x| x.abs()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Exact {
        Exact::new(p, d)
    }

    fn is_canonical(m: &[i64]) -> bool {
        m.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    #[test]
    fn weyl_examples() {
        assert!((weyl_sum(&[Exact::zero()], 10).unwrap() - 1.0).norm() < 1e-15);
        assert!(weyl_sum(&[Exact::zero(), q(1, 2)], 10).unwrap().norm() < 1e-15);
        let c = [Exact::zero(), Exact::zero(), q(1, 4)];
        let direct: Complex64 =
            (1..=16).map(|n| Complex64::from_polar(1.0, std::f64::consts::TAU * (n * n) as f64 / 4.0)).sum::<Complex64>()
                / 16.0;
        assert!((weyl_sum(&c, 16).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn geometric_closed_form() {
        let a = q(3, 101);
        let n = 500;
        let z = e(a.to_f64());
        let closed = z * (Complex64::new(1.0, 0.0) - z.powu(n as u32)) / (Complex64::new(1.0, 0.0) - z) / n as f64;
        assert!((weyl_sum(&[Exact::zero(), a], n).unwrap() - closed).norm() < 1e-12);
    }

    #[test]
    fn shell_order() {
        assert_eq!(shell(2, 1), vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
        for d in 1..=3 {
            for r in 1..=3 {
                let s = shell(d, r);
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                assert!(s.iter().all(|m| max_norm(m) == r && is_canonical(m)));
                // together with negatives, the shells tile the box
                let expect = (2 * r + 1).pow(d as u32) - (2 * r - 1).pow(d as u32);
                assert_eq!(2 * s.len() as i64, expect);
            }
        }
        assert!(shell(0, 1).is_empty());
    }

    #[test]
    fn equidist_examples() {
        let golden = Exact::from_f64_decimal(0.6180339887).unwrap();
        let r = equidist_test(&TorusOrbit::linear(&[golden], 10_000), 0.1, 10).unwrap();
        assert!(r.equidistributed, "{r:?}");
        let r = equidist_test(&TorusOrbit::linear(&[q(1, 3), q(2, 3)], 300), 0.1, 3).unwrap();
        assert_eq!(r.witness, Some(vec![1, 1]));
        let r = equidist_test(&TorusOrbit::linear(&[], 10), 0.1, 3).unwrap();
        assert!(r.equidistributed && r.frequencies_scanned == 0);
    }

    #[test]
    fn discrepancy_examples() {
        let grid: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
        assert!((discrepancy(&grid) - 0.1).abs() < 1e-15);
        assert!((discrepancy(&[0.5; 4]) - 1.0).abs() < 1e-15);
        // brute force over intervals with endpoints at the points and 0, 1
        let pts = [0.13, 0.71, 0.72, 0.05, 0.9];
        let mut ends: Vec<f64> = pts.to_vec();
        ends.extend([0.0, 1.0]);
        let mut worst = 0.0f64;
        for &a in &ends {
            for &b in &ends {
                if a < b {
                    let closed = pts.iter().filter(|&&x| a <= x && x <= b).count() as f64 / 5.0;
                    let open = pts.iter().filter(|&&x| a < x && x < b).count() as f64 / 5.0;
                    worst = worst.max(closed - (b - a)).max((b - a) - open);
                }
            }
        }
        assert!((discrepancy(&pts) - worst).abs() < 1e-12);
    }

    #[test]
    fn ratapprox_examples() {
        let r = rational_approx(&q(3, 7), 10).unwrap();
        assert_eq!((r.a, r.q, r.err), (3, 7, 0.0));
        let alpha = Exact::from_f64_exact(3.0 / 7.0 + 1e-9).unwrap();
        let r = rational_approx(&alpha, 10).unwrap();
        assert_eq!((r.a, r.q), (3, 7));
        assert!((r.err - 1e-9).abs() < 1e-15);
        let r = rational_approx(&q(1, 2), 1).unwrap();
        assert_eq!((r.a, r.q, r.err), (0, 1, 0.5));
        let r = rational_approx(&q(-7, 3), 5).unwrap();
        assert_eq!((r.a, r.q), (-7, 3));
    }

    #[test]
    fn ratapprox_is_best() {
        let alpha = Exact::from_f64_decimal(0.41421356237).unwrap();
        for qmax in [1, 2, 5, 12, 29, 100, 999] {
            let r = rational_approx(&alpha, qmax).unwrap();
            for qq in 1..=r.q {
                let d = crate::real::dist_to_int_exact(&(alpha.clone() * Exact::from_integer(qq))).to_f64();
                assert!(r.dist <= d + 1e-15, "Q={qmax}: q'={qq}");
            }
        }
    }

    #[test]
    fn relation_examples() {
        let r = integer_relation(&[q(1, 2), q(1, 3)], 3, 1e-9).unwrap().unwrap();
        assert_eq!(r.m, vec![2, 0]);
        // the relation (2, 3) also holds and is reachable in the same box
        let s = q(1, 2) * Exact::from_integer(2) + q(1, 3) * Exact::from_integer(3);
        assert!(s.is_integer());
        assert!(integer_relation(&[0.1234567f64], 5, 1e-6).unwrap().is_none());
        let r = integer_relation(&[q(2, 7), Exact::zero(), q(1, 9)], 4, 0.0).unwrap().unwrap();
        assert_eq!((r.m, r.residual), (vec![0, 1, 0], 0.0));
        assert!(integer_relation(&[0.1f64; 7], 1, 0.0).is_err());
        assert!(integer_relation(&[0.1f64; 6], 20, 0.0).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn approximant_is_optimal(p in -10_000i64..10_000, d in 1i64..5000, q_max in 1i64..60) {
            let alpha = Exact::new(p, d);
            let r = rational_approx(&alpha, q_max).unwrap();
            prop_assert!(1 <= r.q && r.q <= q_max);
            let best = (1..=q_max)
                .map(|q| crate::real::dist_to_int_exact(&(alpha.clone() * Exact::from_integer(q))))
                .min()
                .unwrap();
            prop_assert_eq!(crate::real::dist_to_int_exact(&(alpha * Exact::from_integer(r.q))).to_f64(), best.to_f64());
        }

        #[test]
        fn relations_are_genuine(ps in proptest::collection::vec((-50i64..50, 1i64..12), 1..4)) {
            let alphas: Vec<Exact> = ps.iter().map(|&(p, q)| Exact::new(p, q)).collect();
            if let Some(rel) = integer_relation(&alphas, 6, 0.0).unwrap() {
                let s = rel.m.iter().zip(&alphas).fold(Exact::zero(), |acc, (&m, a)| acc + a.clone() * Exact::from_integer(m));
                prop_assert!(s.is_integer());
                prop_assert!(max_norm(&rel.m) > 0);
            } else {
                // rationals always satisfy q * alpha_1 = 0 mod 1 with q <= 11 < 12
                prop_assert!(ps.iter().all(|&(_, q)| q > 6));
            }
        }
    }
}
