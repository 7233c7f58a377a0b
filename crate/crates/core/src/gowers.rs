//! Gowers uniformity norms on `Z_M` and on intervals, the Gowers inner
//! product, and the correlated-quadruple count behind the Cauchy-Schwarz
//! step of the inverse argument.
//!
//! Throughout, `raw_k(f) = E_{x,h_1..h_k} Delta_{h_1}..Delta_{h_k} f(x)` is the
//! `2^k`-th power of the norm.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqfun::{Domain, SeqFn};
use crate::sum::{check_budget, pairwise_sum, par_sum};

/// Upper bound on `M^(k+1)` for direct evaluation (64^5 = 1024^3 = 2^30).
pub const DIRECT_BUDGET: u128 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    #[default]
    Recursion,
    Fft,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "recursion" => Ok(Method::Recursion),
            "fft" => Ok(Method::Fft),
            _ => Err(Error::param("method", format!("expected direct, recursion or fft, got {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Recursion => "recursion",
            Method::Fft => "fft",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GowersResult {
    pub norm: f64,
    /// `norm^(2^k)`; for intervals the ratio of the two group averages.
    pub power: f64,
    /// Imaginary part of the defining average (zero up to rounding).
    pub imag: f64,
    pub k: u32,
    pub method: Method,
    pub domain: Domain,
    /// Modulus of the cyclic group the interval was embedded in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedded_modulus: Option<usize>,
}

fn check_k(k: u32) -> Result<()> {
    if !(1..=4).contains(&k) {
        return Err(Error::param("k", format!("must be in 1..=4, got {k}")));
    }
    Ok(())
}

fn mean(xs: &[Complex64]) -> Complex64 {
    pairwise_sum(xs) / xs.len() as f64
}

fn derivative(g: &[Complex64], h: usize) -> Vec<Complex64> {
    let m = g.len();
    (0..m).map(|x| g[(x + h) % m] * g[x].conj()).collect()
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

fn inverse(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

/// `f^(xi) = E_x f(x) e(-x xi / M)`.
pub fn fourier(f: &[Complex64]) -> Vec<Complex64> {
    let m = f.len();
    let mut buf = f.to_vec();
    forward(m).process(&mut buf);
    let s = 1.0 / m as f64;
    buf.iter_mut().for_each(|v| *v *= s);
    buf
}

/// `sum_xi |f^(xi)|^4`.
pub fn u2_fourier(f: &[Complex64]) -> f64 {
    let quartic: Vec<f64> = fourier(f).iter().map(|v| v.norm_sqr() * v.norm_sqr()).collect();
    pairwise_sum(&quartic)
}

/// Shortest cyclic arc `(start, len)` containing the support; `None` when `g = 0`.
fn support_arc(g: &[Complex64]) -> Option<(usize, usize)> {
    let m = g.len();
    let nz: Vec<usize> = (0..m).filter(|&x| g[x] != Complex64::new(0.0, 0.0)).collect();
    if nz.is_empty() {
        return None;
    }
    // the arc starts just after the longest cyclic run of zeros
    let mut best_gap = m - 1 - nz[nz.len() - 1] + nz[0];
    let mut start = nz[0];
    for w in nz.windows(2) {
        let gap = w[1] - w[0] - 1;
        if gap > best_gap {
            best_gap = gap;
            start = w[1];
        }
    }
    Some((start, m - best_gap))
}

/// `raw_2(g)` for `g` on `Z_M`. When the support fits in an arc short enough
/// that the cyclic autocorrelation does not wrap, it is computed as a linear
/// autocorrelation on a smaller FFT.
fn u2_raw(g: &[Complex64]) -> f64 {
    let m = g.len();
    let Some((start, len)) = support_arc(g) else {
        return 0.0;
    };
    if 2 * len - 1 >= m {
        return u2_fourier(g);
    }
    let w: Vec<Complex64> = (0..len).map(|i| g[(start + i) % m]).collect();
    u2_window(&w, m)
}

/// `raw_2` of a function on `Z_M` supported on a window `w` with
/// `2 |w| - 1 < M`: `M^-3 sum_h |A(h)|^2`, `A` the linear autocorrelation.
fn u2_window(w: &[Complex64], m: usize) -> f64 {
    let size = (2 * w.len() - 1).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    buf[..w.len()].copy_from_slice(w);
    forward(size).process(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    inverse(size).process(&mut buf);
    let s = 1.0 / size as f64;
    let sq: Vec<f64> = buf.iter().map(|v| (v * s).norm_sqr()).collect();
    pairwise_sum(&sq) / (m as f64).powi(3)
}

/// Drops leading and trailing zeros.
fn trim(w: &[Complex64]) -> &[Complex64] {
    let z = Complex64::new(0.0, 0.0);
    let Some(a) = w.iter().position(|v| *v != z) else {
        return &[];
    };
    let b = w.iter().rposition(|v| *v != z).expect("nonzero entry");
    &w[a..=b]
}

/// [`recursion_raw`] for a function on `Z_M` vanishing outside the window
/// `w`, `2 |w| - 1 < M`: `Delta_h` is zero for `|h| >= |w|`, and for smaller
/// `h` its support stays inside the window without wrapping.
fn recursion_window(w: &[Complex64], m: usize, k: u32, top: bool) -> f64 {
    let w = trim(w);
    if w.is_empty() {
        return 0.0;
    }
    match k {
        1 => (pairwise_sum(w) / m as f64).norm_sqr(),
        2 if !top => u2_window(w, m),
        _ => {
            let terms: Vec<f64> = (0..w.len())
                .into_par_iter()
                .map(|h| {
                    let wt = if h == 0 { 1.0 } else { 2.0 };
                    let d: Vec<Complex64> = (0..w.len() - h).map(|x| w[x + h] * w[x].conj()).collect();
                    wt * recursion_window(&d, m, k - 1, false)
                })
                .collect();
            pairwise_sum(&terms) / m as f64
        }
    }
}

/// `raw_k` by `raw_k(f) = E_h raw_{k-1}(Delta_h f)`, using
/// `raw(Delta_{-h} f) = raw(Delta_h f)` and skipping vanishing derivatives.
fn recursion_raw(g: &[Complex64], k: u32, top: bool) -> f64 {
    let m = g.len();
    if let Some((start, len)) = support_arc(g) {
        if 2 * len - 1 < m && k >= 2 {
            let w: Vec<Complex64> = (0..len).map(|i| g[(start + i) % m]).collect();
            return recursion_window(&w, m, k, top);
        }
    }
    match k {
        1 => mean(g).norm_sqr(),
        2 if !top => u2_raw(g),
        _ => {
            let half = m / 2;
            let terms: Vec<f64> = (0..=half)
                .into_par_iter()
                .map(|h| {
                    let w = if h == 0 || 2 * h == m { 1.0 } else { 2.0 };
                    let d = derivative(g, h);
                    if d.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
                        0.0
                    } else {
                        w * recursion_raw(&d, k - 1, false)
                    }
                })
                .collect();
            pairwise_sum(&terms) / m as f64
        }
    }
}

/// `E_{h_1..h_k, x}` of the nested derivative, straight from the definition.
fn direct_raw(g: &[Complex64], k: u32) -> Complex64 {
    if k == 0 {
        return mean(g);
    }
    let m = g.len();
    let terms: Vec<Complex64> = (0..m).map(|h| direct_raw(&derivative(g, h), k - 1)).collect();
    mean(&terms)
}

fn direct_raw_par(g: &[Complex64], k: u32) -> Complex64 {
    let m = g.len();
    par_sum(m, |h| direct_raw(&derivative(g, h), k - 1)) / m as f64
}

/// The average `raw_k(f)` on `Z_M` (complex; real up to rounding).
pub fn gowers_raw(f: &SeqFn, k: u32, method: Method) -> Result<Complex64> {
    check_k(k)?;
    let Domain::Cyclic(m) = f.domain() else {
        return Err(Error::DomainMismatch("group norm needs a cyclic function".into()));
    };
    let g = f.values();
    Ok(match method {
        Method::Direct => {
            check_budget("direct Gowers sum M^(k+1)", (m as u128).pow(k + 1), DIRECT_BUDGET)?;
            direct_raw_par(g, k)
        }
        Method::Recursion => Complex64::new(recursion_raw(g, k, true), 0.0),
        Method::Fft => {
            if k != 2 {
                return Err(Error::param("method", "the fft method only computes k = 2"));
            }
            Complex64::new(u2_fourier(g), 0.0)
        }
    })
}

fn root(power: f64, k: u32) -> f64 {
    power.max(0.0).powf(1.0 / f64::from(1u32 << k))
}

pub fn gowers_norm_group(f: &SeqFn, k: u32, method: Method) -> Result<GowersResult> {
    let raw = gowers_raw(f, k, method)?;
    Ok(GowersResult {
        norm: root(raw.re, k),
        power: raw.re,
        imag: raw.im,
        k,
        method,
        domain: f.domain(),
        embedded_modulus: None,
    })
}

/// `||f~||_{U^k(Z_M~)} / ||1_[N]||_{U^k(Z_M~)}` with `M~ >= 2^k N`.
pub fn gowers_norm_interval(f: &SeqFn, k: u32, m_tilde: Option<usize>, method: Method) -> Result<GowersResult> {
    check_k(k)?;
    let Domain::Interval(n) = f.domain() else {
        return Err(Error::DomainMismatch("interval norm needs an interval function".into()));
    };
    let ft = f.embed_interval(k, m_tilde)?;
    let one = SeqFn::constant(Domain::Interval(n), Complex64::new(1.0, 0.0))?.embed_interval(k, m_tilde)?;
    let num = gowers_raw(&ft, k, method)?;
    let den = gowers_raw(&one, k, method)?;
    let power = num.re / den.re;
    Ok(GowersResult {
        norm: root(power, k),
        power,
        imag: num.im / den.re,
        k,
        method,
        domain: f.domain(),
        embedded_modulus: Some(ft.len()),
    })
}

/// `E_{x,h} prod_omega C^{|omega|} f_omega(x + omega.h)`, with `omega` read
/// as a bitmask (bit `j` set means `h_{j+1}` is added).
pub fn gowers_inner_product(fs: &[SeqFn], k: u32) -> Result<Complex64> {
    check_k(k)?;
    if fs.len() != 1 << k {
        return Err(Error::param("functions", format!("need 2^{k} = {} functions, got {}", 1 << k, fs.len())));
    }
    let Domain::Cyclic(m) = fs[0].domain() else {
        return Err(Error::DomainMismatch("inner product needs cyclic functions".into()));
    };
    for f in &fs[1..] {
        fs[0].same_domain(f)?;
    }
    check_budget("Gowers inner product M^k", (m as u128).pow(k), DIRECT_BUDGET)?;
    let vs: Vec<Vec<Complex64>> = fs.iter().map(|f| f.values().to_vec()).collect();
    Ok(inner_rec(&vs))
}

/// Peels the last coordinate: `g_w(x) = f_{w,0}(x) conj f_{w,1}(x + h)`.
fn inner_rec(fs: &[Vec<Complex64>]) -> Complex64 {
    if fs.len() == 2 {
        return mean(&fs[0]) * mean(&fs[1]).conj();
    }
    let m = fs[0].len();
    let half = fs.len() / 2;
    let terms: Vec<Complex64> = (0..m)
        .map(|h| {
            let g: Vec<Vec<Complex64>> =
                (0..half).map(|w| (0..m).map(|x| fs[w][x] * fs[w + half][(x + h) % m].conj()).collect()).collect();
            inner_rec(&g)
        })
        .collect();
    mean(&terms)
}

/// `H ⊆ [N]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftSet {
    pub n: usize,
    pub h: Vec<i64>,
}

impl ShiftSet {
    pub fn new(n: usize, mut h: Vec<i64>) -> Result<Self> {
        h.sort_unstable();
        h.dedup();
        if let Some(&bad) = h.iter().find(|&&x| x < 1 || x > n as i64) {
            return Err(Error::param("H", format!("{bad} is not in [1, {n}]")));
        }
        Ok(ShiftSet { n, h })
    }

    pub fn full(n: usize) -> Self {
        ShiftSet { n, h: (1..=n as i64).collect() }
    }

    pub fn eta(&self) -> f64 {
        self.h.len() as f64 / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

/// `|E_{n in [N]} Delta_h f(n) conj chi_h(n)|` for each `h`, with `f` zero
/// outside `[N]`.
pub fn hypothesis_correlations(f: &SeqFn, shifts: &ShiftSet, chi: &[SeqFn]) -> Result<Vec<f64>> {
    let Domain::Interval(n) = f.domain() else {
        return Err(Error::DomainMismatch("the quadruple count works on intervals".into()));
    };
    if shifts.n != n || chi.len() != shifts.len() {
        return Err(Error::DomainMismatch(format!(
            "need N = {n} and one chi per shift ({} shifts, {} chi)",
            shifts.len(),
            chi.len()
        )));
    }
    shifts
        .h
        .iter()
        .zip(chi)
        .map(|(&h, c)| {
            f.same_domain(c)?;
            let d = f.mult_derivative(h);
            let prods: Vec<Complex64> = d.values().iter().zip(c.values()).map(|(a, b)| a * b.conj()).collect();
            Ok(mean(&prods).norm())
        })
        .collect()
}

/// `chi_h = Delta_h f` for every shift.
pub fn derivative_family(f: &SeqFn, shifts: &ShiftSet) -> Vec<SeqFn> {
    shifts.h.iter().map(|&h| f.mult_derivative(h)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadrupleCount {
    pub count: u64,
    /// Additive quadruples in `H^4`.
    pub total: u64,
    /// `c eta^4 delta^2`
    pub threshold: f64,
    /// `eta^8 delta^4 N^3 / 2`
    pub bound: f64,
    pub eta: f64,
    pub delta: f64,
    pub c: f64,
    pub n_prime: usize,
}

/// `|E_{n in Z_N'} chi_1(n) chi_2(n+s) conj(chi_3(n) chi_4(n+s))|`, `s = h_1 - h_4`.
pub fn quadruple_correlation(chi: [&SeqFn; 4], s: i64) -> f64 {
    let n = chi[0].len() as i64;
    let terms: Vec<Complex64> = (1..=n)
        .filter(|&x| 1 <= x + s && x + s <= n)
        .map(|x| {
            let (i, j) = (x as usize - 1, (x + s) as usize - 1);
            chi[0].values()[i] * chi[1].values()[j] * (chi[2].values()[i] * chi[3].values()[j]).conj()
        })
        .collect();
    pairwise_sum(&terms).norm() / (2 * n + 1) as f64
}

/// Walks every additive quadruple of `H^4` in the order `(h_1, h_3, h_2)`,
/// calling `keep` on those reaching `threshold`; returns `(hits, total)`.
fn scan_quadruples(
    shifts: &ShiftSet,
    chi: &[SeqFn],
    threshold: f64,
    keep: impl Fn([i64; 4]) + Sync,
) -> (u64, u64) {
    let n = shifts.n;
    let mut index = vec![usize::MAX; n + 1];
    for (i, &h) in shifts.h.iter().enumerate() {
        index[h as usize] = i;
    }
    let hs = &shifts.h;
    let counts: Vec<(u64, u64)> = (0..hs.len())
        .into_par_iter()
        .map(|i1| {
            let h1 = hs[i1];
            let (mut hit, mut tot) = (0u64, 0u64);
            for (i3, &h3) in hs.iter().enumerate() {
                for (i2, &h2) in hs.iter().enumerate() {
                    let h4 = h1 + h2 - h3;
                    if h4 < 1 || h4 > n as i64 || index[h4 as usize] == usize::MAX {
                        continue;
                    }
                    let i4 = index[h4 as usize];
                    tot += 1;
                    if quadruple_correlation([&chi[i1], &chi[i2], &chi[i3], &chi[i4]], h1 - h4) >= threshold {
                        hit += 1;
                        keep([h1, h2, h3, h4]);
                    }
                }
            }
            (hit, tot)
        })
        .collect();
    (counts.iter().map(|c| c.0).sum(), counts.iter().map(|c| c.1).sum())
}

/// Additive quadruples of `H^4` whose correlation reaches `threshold`, in
/// lexicographic order of `(h_1, h_3, h_2)`.
pub fn passing_quadruples(shifts: &ShiftSet, chi: &[SeqFn], threshold: f64) -> Result<Vec<[i64; 4]>> {
    if chi.len() != shifts.len() {
        return Err(Error::DomainMismatch("need one chi per shift".into()));
    }
    let found = std::sync::Mutex::new(Vec::new());
    scan_quadruples(shifts, chi, threshold, |q| found.lock().expect("poisoned").push(q));
    let mut v = found.into_inner().expect("poisoned");
    v.sort_unstable_by_key(|q| (q[0], q[2], q[1]));
    Ok(v)
}

/// Counts `h_1 + h_2 = h_3 + h_4` in `H^4` whose correlation
/// `|E_{n in Z_N'} chi_{h1}(n) chi_{h2}(n+s) conj(chi_{h3}(n) chi_{h4}(n+s))|`,
/// `s = h_1 - h_4`, `N' = 2N + 1`, reaches `c eta^4 delta^2`. Every `chi_h`
/// is zero outside `[N]`.
pub fn count_correlated_quadruples(
    f: &SeqFn,
    shifts: &ShiftSet,
    chi: &[SeqFn],
    delta: f64,
    c: f64,
) -> Result<QuadrupleCount> {
    if !(c > 0.0) {
        return Err(Error::param("c", "must be positive"));
    }
    let corr = hypothesis_correlations(f, shifts, chi)?;
    for (&h, &r) in shifts.h.iter().zip(&corr) {
        if r < delta {
            return Err(Error::HypothesisViolated { h, corr: r, delta });
        }
    }
    let n = shifts.n;
    let n_prime = 2 * n + 1;
    let eta = shifts.eta();
    let threshold = c * eta.powi(4) * delta * delta;
    let bound = eta.powi(8) * delta.powi(4) * (n as f64).powi(3) / 2.0;
    let (hit, total) = scan_quadruples(shifts, chi, threshold, |_| {});
    Ok(QuadrupleCount {
        count: hit,
        total,
        threshold,
        bound,
        eta,
        delta,
        c,
        n_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{Exact, Real};
    use crate::sample;
    use crate::seqfun::{PhaseSpec, Precision};

    fn random(m: usize, seed: u64) -> SeqFn {
        SeqFn::new(Domain::Cyclic(m), sample::disc_vec(&mut sample::rng(seed), m)).unwrap()
    }

    fn one(dom: Domain) -> SeqFn {
        SeqFn::constant(dom, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn constant_and_character() {
        for method in [Method::Direct, Method::Recursion, Method::Fft] {
            let r = gowers_norm_group(&one(Domain::Cyclic(16)), 2, method).unwrap();
            assert!((r.norm - 1.0).abs() < 1e-12, "{method}");
        }
        let f = PhaseSpec::poly(&[Exact::zero(), Exact::new(3, 16)]).sample(Domain::Cyclic(16), Precision::Rational).unwrap();
        assert!((gowers_norm_group(&f, 2, Method::Recursion).unwrap().norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn methods_agree_on_random() {
        let f = random(32, 1);
        for k in 1..=3 {
            let d = gowers_raw(&f, k, Method::Direct).unwrap();
            let r = gowers_raw(&f, k, Method::Recursion).unwrap();
            assert!((d - r).norm() < 1e-12, "k={k}: {d} vs {r}");
            assert!(d.im.abs() < 1e-12);
        }
        let fft = gowers_raw(&f, 2, Method::Fft).unwrap();
        assert!((fft - gowers_raw(&f, 2, Method::Direct).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn window_path_matches_direct() {
        // support on a wrapping arc of length 7 inside Z_40, holes included
        let mut r = sample::rng(8);
        let mut g = vec![Complex64::new(0.0, 0.0); 40];
        for (i, v) in sample::disc_vec(&mut r, 7).into_iter().enumerate() {
            if i != 3 {
                g[(36 + i) % 40] = v;
            }
        }
        let f = SeqFn::new(Domain::Cyclic(40), g).unwrap();
        for k in 1..=4 {
            let d = gowers_raw(&f, k, Method::Direct).unwrap();
            let w = gowers_raw(&f, k, Method::Recursion).unwrap();
            assert!((d - w).norm() < 1e-15, "k={k}: {d} vs {w}");
        }
        let f = SeqFn::new(Domain::Interval(3), sample::disc_vec(&mut r, 3)).unwrap();
        let d = gowers_norm_interval(&f, 4, Some(48), Method::Direct).unwrap();
        let w = gowers_norm_interval(&f, 4, Some(48), Method::Recursion).unwrap();
        assert!((d.norm - w.norm).abs() < 1e-12);
    }

    #[test]
    fn arc_shortcut_matches_full_fft() {
        let mut r = sample::rng(5);
        let mut g = vec![Complex64::new(0.0, 0.0); 200];
        for (i, v) in sample::disc_vec(&mut r, 30).into_iter().enumerate() {
            g[(190 + i) % 200] = v;
        }
        assert_eq!(support_arc(&g), Some((190, 30)));
        assert!((u2_raw(&g) - u2_fourier(&g)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_k_and_method() {
        let f = random(8, 2);
        assert!(gowers_norm_group(&f, 0, Method::Recursion).is_err());
        assert!(gowers_norm_group(&f, 5, Method::Recursion).is_err());
        assert!(gowers_norm_group(&f, 3, Method::Fft).is_err());
        assert!(gowers_norm_group(&random(2048, 2), 4, Method::Direct).is_err());
    }

    #[test]
    fn interval_examples() {
        for k in 1..=4 {
            let r = gowers_norm_interval(&one(Domain::Interval(20)), k, None, Method::Recursion).unwrap();
            assert!((r.norm - 1.0).abs() < 1e-12);
        }
        let f = PhaseSpec::poly(&[Exact::zero(), Exact::zero(), Exact::new(5, 17)])
            .sample(Domain::Interval(64), Precision::Rational)
            .unwrap();
        let r = gowers_norm_interval(&f, 3, None, Method::Recursion).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-9, "{}", r.norm);
    }

    #[test]
    fn inner_product_examples() {
        let ones = vec![one(Domain::Cyclic(8)); 4];
        assert!((gowers_inner_product(&ones, 2).unwrap() - 1.0).norm() < 1e-15);
        let f = random(12, 3);
        let all = vec![f.clone(); 4];
        let ip = gowers_inner_product(&all, 2).unwrap();
        assert!((ip.re - gowers_raw(&f, 2, Method::Direct).unwrap().re).abs() < 1e-12);
        let mut with_zero = all.clone();
        with_zero[2] = SeqFn::constant(Domain::Cyclic(12), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(gowers_inner_product(&with_zero, 2).unwrap().norm(), 0.0);
        assert!(gowers_inner_product(&all[..3], 2).is_err());
    }

    #[test]
    fn quadruple_edge_cases() {
        let f = PhaseSpec::poly(&[Exact::zero(), Exact::new(1, 7), Exact::new(1, 5)])
            .sample(Domain::Interval(16), Precision::Rational)
            .unwrap();
        let empty = ShiftSet::new(16, vec![]).unwrap();
        assert_eq!(count_correlated_quadruples(&f, &empty, &[], 0.5, 0.01).unwrap().count, 0);
        let single = ShiftSet::new(16, vec![3]).unwrap();
        let chi = derivative_family(&f, &single);
        let q = count_correlated_quadruples(&f, &single, &chi, 0.5, 0.01).unwrap();
        assert_eq!((q.count, q.total), (1, 1));
        let err = count_correlated_quadruples(&f, &single, &chi, 0.9, 0.01).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated { h: 3, .. }));
        assert!(ShiftSet::new(16, vec![0]).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::sample;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn linear_modulation_and_shift_invariance(seed in any::<u64>(), m in 5usize..14, j in 0i64..14, s in 0i64..14) {
            let mut r = sample::rng(seed);
            let f = SeqFn::new(Domain::Cyclic(m), sample::disc_vec(&mut r, m)).unwrap();
            let g = f.modulate(j as f64 / m as f64);
            let h = SeqFn::from_fn(Domain::Cyclic(m), |x| f.at(x + s)).unwrap();
            for k in 2..=4 {
                let a = gowers_norm_group(&f, k, Method::Recursion).unwrap().norm;
                prop_assert!((a - gowers_norm_group(&g, k, Method::Recursion).unwrap().norm).abs() < 1e-12);
                prop_assert!((a - gowers_norm_group(&h, k, Method::Recursion).unwrap().norm).abs() < 1e-12);
            }
        }

        #[test]
        fn norms_are_ordered_and_bounded(seed in any::<u64>(), m in 2usize..20) {
            let mut r = sample::rng(seed);
            let f = SeqFn::new(Domain::Cyclic(m), sample::disc_vec(&mut r, m)).unwrap();
            let n: Vec<f64> = (1..=4).map(|k| gowers_norm_group(&f, k, Method::Recursion).unwrap().norm).collect();
            for w in n.windows(2) {
                prop_assert!(w[0] <= w[1] + 1e-12);
            }
            prop_assert!(n[3] <= 1.0 + 1e-12);
        }

        #[test]
        fn interval_norm_ignores_modulus(seed in any::<u64>(), n in 1usize..12, extra in 0usize..20, k in 2u32..=3) {
            let mut r = sample::rng(seed);
            let f = SeqFn::new(Domain::Interval(n), sample::disc_vec(&mut r, n)).unwrap();
            let a = gowers_norm_interval(&f, k, None, Method::Recursion).unwrap().norm;
            let b = gowers_norm_interval(&f, k, Some((1 << k) * n + extra), Method::Direct).unwrap().norm;
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
