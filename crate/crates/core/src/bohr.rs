//! Bohr sets `B(S, rho, N) = {n in [rho N] : ||n theta|| <= rho, theta in S}`
//! inside `[N]`: enumeration, regular radii, the smoothed cutoff, and
//! shrinking a Bohr set until a locally linear phase is small on it.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{dist_to_int, mul_mod1};
use crate::sample;
use crate::seqfun::{Domain, SeqFn};
use crate::sum::pairwise_sum;

pub const DEFAULT_C_REG: f64 = 100.0;
pub const REGULAR_CANDIDATES: usize = 64;
/// Each step of a radius shrink multiplies it by this factor.
pub const SHRINK: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BohrSet {
    pub s: Vec<f64>,
    pub rho: f64,
    pub n: usize,
    pub members: Vec<i64>,
}

impl BohrSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// `d`, floored at 1 so that the regularity bound is not vacuous for `S = {}`.
    pub fn dim(&self) -> usize {
        self.s.len().max(1)
    }
}

fn in_frequency_box(s: &[f64], rho: f64, x: i64) -> bool {
    s.iter().all(|&t| dist_to_int(mul_mod1(t, x as f64)) <= rho)
}

fn members(s: &[f64], rho: f64, n: usize) -> Vec<i64> {
    let top = (rho * n as f64).floor() as i64;
    (1..=top).filter(|&x| in_frequency_box(s, rho, x)).collect()
}

fn size(s: &[f64], rho: f64, n: usize) -> usize {
    let top = (rho * n as f64).floor() as i64;
    (1..=top).filter(|&x| in_frequency_box(s, rho, x)).count()
}

pub fn build_bohr(s: &[f64], rho: f64, n: usize) -> Result<BohrSet> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::param("rho", format!("must lie in (0, 1), got {rho}")));
    }
    if n == 0 {
        return Err(Error::param("N", "must be positive"));
    }
    if s.iter().any(|t| !t.is_finite()) {
        return Err(Error::param("S", "frequencies must be finite"));
    }
    Ok(BohrSet { s: s.to_vec(), rho, n, members: members(s, rho, n) })
}

/// `kappa in {+-1/d, +-1/(2d), +-1/(4d), +-1/(8d)}`.
pub fn default_kappa_grid(d: usize) -> Vec<f64> {
    let d = d.max(1) as f64;
    [1.0, 0.5, 0.25, 0.125].iter().flat_map(|&f| [-f / d, f / d]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityCheck {
    pub rho: f64,
    pub size: usize,
    /// `max_kappa | |B((1+kappa) rho)| / |B(rho)| - 1 | / (d |kappa|)`
    pub constant: f64,
    pub worst_kappa: f64,
    pub passed: bool,
}

pub fn check_regular(s: &[f64], rho: f64, n: usize, c_reg: f64, grid: &[f64]) -> RegularityCheck {
    let d = s.len().max(1) as f64;
    let base = size(s, rho, n);
    let mut constant = if base == 0 { f64::INFINITY } else { 0.0 };
    let mut worst_kappa = 0.0;
    if base > 0 {
        for &k in grid.iter().filter(|k| k.abs() <= 1.0 / d && **k != 0.0) {
            let r = size(s, (1.0 + k) * rho, n) as f64 / base as f64;
            let c = (r - 1.0).abs() / (d * k.abs());
            if c > constant {
                constant = c;
                worst_kappa = k;
            }
        }
    }
    RegularityCheck { rho, size: base, constant, worst_kappa, passed: base > 0 && constant <= c_reg }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularSearch {
    /// Smallest passing candidate.
    pub rho: Option<f64>,
    /// Candidate with the smallest constant, reported when none passes.
    pub best: RegularityCheck,
    pub rejected: Vec<RegularityCheck>,
    pub c_reg: f64,
    pub grid: Vec<f64>,
}

/// Scans [`REGULAR_CANDIDATES`] log-spaced radii in `[rho0, 2 rho0]`.
pub fn find_regular(s: &[f64], rho0: f64, n: usize, c_reg: f64, grid: Option<&[f64]>) -> Result<RegularSearch> {
    if !(rho0 > 0.0 && rho0 < 0.5) {
        return Err(Error::param("rho0", format!("must lie in (0, 1/2), got {rho0}")));
    }
    let grid = grid.map(<[f64]>::to_vec).unwrap_or_else(|| default_kappa_grid(s.len()));
    let mut rejected = Vec::new();
    let mut best: Option<RegularityCheck> = None;
    for i in 0..REGULAR_CANDIDATES {
        let rho = rho0 * 2f64.powf(i as f64 / (REGULAR_CANDIDATES - 1) as f64);
        let c = check_regular(s, rho, n, c_reg, &grid);
        if best.as_ref().map_or(true, |b| c.constant < b.constant) {
            best = Some(c.clone());
        }
        if c.passed {
            return Ok(RegularSearch { rho: Some(rho), best: c, rejected, c_reg, grid });
        }
        rejected.push(c);
    }
    Ok(RegularSearch { rho: None, best: best.expect("at least one candidate"), rejected, c_reg, grid })
}

/// `{m : |m| <= rho' N, ||m theta|| <= rho'}`, symmetric about 0.
pub fn symmetric_bohr(s: &[f64], rho: f64, n: usize) -> Vec<i64> {
    let top = (rho * n as f64).floor() as i64;
    (-top..=top).filter(|&x| in_frequency_box(s, rho, x)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutoffDecomposition {
    pub rho_prime: f64,
    pub b_prime_size: usize,
    /// `psi_1(n)` for `n in [N]`, real and in `[0, 1]`.
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    /// `sum_n |psi_2(n)|`
    pub psi2_mass: f64,
    /// `sum_xi |c_xi|`, `c_xi` the coefficients of `psi_1` on `Z_{2N}`.
    pub l1_fourier_mass: f64,
    pub eps: f64,
}

impl CutoffDecomposition {
    pub fn psi1_seq(&self) -> Result<SeqFn> {
        let n = self.psi1.len();
        SeqFn::new(Domain::Interval(n), self.psi1.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }
}

/// Integer convolution counts `sum_m a(x - m) b(m)` via FFT, rounded.
fn convolve_counts(a: &[bool], b: &[bool]) -> Vec<i64> {
    let len = (a.len() + b.len()).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    let lift = |v: &[bool]| {
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for (i, &x) in v.iter().enumerate() {
            if x {
                buf[i] = Complex64::new(1.0, 0.0);
            }
        }
        buf
    };
    let (mut fa, mut fb) = (lift(a), lift(b));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    fa.iter().map(|v| (v.re / len as f64).round() as i64).collect()
}

/// `psi_1(n) = |B'|^-1 sum_{m in B'} 1_B(n + m)` with `B'` the symmetric
/// Bohr set of radius `rho'`; `rho'` shrinks by [`SHRINK`] from `rho` until
/// `sum |1_B - psi_1| <= eps N`, keeping `|B'| > 1`.
pub fn cutoff_decomposition(b: &BohrSet, eps: f64) -> Result<CutoffDecomposition> {
    if !(eps > 0.0) {
        return Err(Error::param("eps", "must be positive"));
    }
    let n = b.n;
    let ind: Vec<bool> = (1..=n as i64).map(|x| b.contains(x)).collect();
    let mut rho_p = b.rho;
    while rho_p * n as f64 >= 1.0 {
        let bp = symmetric_bohr(&b.s, rho_p, n);
        if bp.len() <= 1 {
            break;
        }
        let top = (rho_p * n as f64).floor() as i64;
        // reversed B' shifted into [0, 2 top]: sum_m 1_B(n+m) 1_B'(m)
        let mut rev = vec![false; 2 * top as usize + 1];
        for &m in &bp {
            rev[(top - m) as usize] = true;
        }
        let conv = convolve_counts(&ind, &rev);
        // conv[i + j] collects ind[i] rev[j]; n = i + 1, m = top - j,
        // so n + m = i + 1 means index = (n - 1) + top
        let psi1: Vec<f64> = (1..=n)
            .map(|x| {
                let idx = x - 1 + top as usize;
                conv.get(idx).copied().unwrap_or(0) as f64 / bp.len() as f64
            })
            .collect();
        let psi2: Vec<f64> = psi1.iter().zip(&ind).map(|(p, &i)| if i { 1.0 } else { 0.0 } - p).collect();
        let abs2: Vec<f64> = psi2.iter().map(|v| v.abs()).collect();
        let mass = pairwise_sum(&abs2);
        if mass <= eps * n as f64 {
            let coeffs: Vec<Complex64> = {
                let mut buf: Vec<Complex64> = psi1.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                buf.resize(2 * n, Complex64::new(0.0, 0.0));
                crate::gowers::fourier(&buf)
            };
            let l1: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
            return Ok(CutoffDecomposition {
                rho_prime: rho_p,
                b_prime_size: bp.len(),
                psi1,
                psi2,
                psi2_mass: mass,
                l1_fourier_mass: pairwise_sum(&l1),
                eps,
            });
        }
        rho_p *= SHRINK;
    }
    Err(Error::param("eps", format!("no radius rho' with |B'| > 1 brings sum |psi_2| below {eps} N")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShrinkResult {
    pub rho_prime: Option<f64>,
    pub size: usize,
    /// `|E_{x in B} e(phi(x))|`
    pub bias: f64,
    pub pairs_checked: usize,
    pub regular: Option<RegularityCheck>,
    pub steps: usize,
}

/// Pairs `(x, y)` of members tested for local linearity.
pub const LINEARITY_PAIRS: usize = 1_000_000;

/// Finds the largest `rho' = rho 0.9^j` that is regular and on whose Bohr
/// set `||phi|| <= eps`.
pub fn locally_linear_shrink(
    b: &BohrSet,
    phi: impl Fn(i64) -> f64,
    eta: f64,
    eps: f64,
    seed: u64,
) -> Result<ShrinkResult> {
    const TOL: f64 = 1e-9;
    let m = &b.members;
    let mut pairs_checked = 0;
    let mut check = |x: i64, y: i64| -> Result<()> {
        pairs_checked += 1;
        if dist_to_int(phi(x + y) - phi(x) - phi(y)) > TOL {
            return Err(Error::NotLocallyLinear { a: x, b: y, sum: x + y });
        }
        Ok(())
    };
    if m.len() * m.len() <= LINEARITY_PAIRS {
        for &x in m {
            for &y in m {
                check(x, y)?;
            }
        }
    } else {
        use rand::Rng;
        let mut r = sample::rng(seed);
        for _ in 0..LINEARITY_PAIRS {
            let (x, y) = (m[r.gen_range(0..m.len())], m[r.gen_range(0..m.len())]);
            check(x, y)?;
        }
    }
    let phases: Vec<Complex64> = m.iter().map(|&x| crate::real::e(phi(x))).collect();
    let bias = if m.is_empty() { 0.0 } else { (pairwise_sum(&phases) / m.len() as f64).norm() };
    if bias < eta {
        return Err(Error::param("eta", format!("|E e(phi)| = {bias} is below eta = {eta}")));
    }
    let grid = default_kappa_grid(b.s.len());
    let mut rho_p = b.rho;
    let mut steps = 0;
    while rho_p * b.n as f64 >= 1.0 {
        steps += 1;
        let sub = members(&b.s, rho_p, b.n);
        if !sub.is_empty() && sub.iter().all(|&x| dist_to_int(phi(x)) <= eps) {
            let reg = check_regular(&b.s, rho_p, b.n, DEFAULT_C_REG, &grid);
            if reg.passed {
                return Ok(ShrinkResult {
                    rho_prime: Some(rho_p),
                    size: sub.len(),
                    bias,
                    pairs_checked,
                    regular: Some(reg),
                    steps,
                });
            }
        }
        rho_p *= SHRINK;
    }
    Ok(ShrinkResult { rho_prime: None, size: 0, bias, pairs_checked, regular: None, steps })
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::collection::vec;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bohr_sets_grow_with_radius(s in vec(0.0f64..1.0, 1..4), r1 in 0.01f64..0.5, r2 in 0.01f64..0.5, n in 10usize..400) {
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let a = build_bohr(&s, lo, n).unwrap();
            let b = build_bohr(&s, hi, n).unwrap();
            prop_assert!(a.members.iter().all(|&x| b.contains(x)));
            prop_assert!(a.members.iter().all(|&x| 1 <= x && (x as f64) <= lo * n as f64));
        }

        #[test]
        fn symmetric_bohr_is_symmetric(s in vec(0.0f64..1.0, 1..4), rho in 0.01f64..0.5, n in 10usize..400) {
            let m = symmetric_bohr(&s, rho, n);
            prop_assert!(m.contains(&0));
            prop_assert!(m.iter().all(|x| m.contains(&-x)));
        }
    }
}
