//! Property checks that tie the modules together: the necessity direction
//! of the inverse theorem, L^1 approximation of bracket phases by genuine
//! nilsequences, and the Cauchy-Schwarz quadruple step followed by a search
//! for the quadratic phase it promises.

use num_complex::Complex64;
use rand::seq::index;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equidist::{discrepancy, equidist_test, rational_approx, TorusOrbit};
use crate::error::{Error, Result};
use crate::gowers::{
    count_correlated_quadruples, derivative_family, gowers_norm_interval, hypothesis_correlations,
    passing_quadruples, Method, ShiftSet,
};
use crate::real::{e, Exact, Real};
use crate::sample;
use crate::seqfun::{Domain, PhaseSpec, Precision};
use crate::sum::pairwise_sum;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Value,
    pub measured: Value,
    pub passed: bool,
    /// Distance to the pass threshold, positive when passing.
    pub margin: f64,
    pub notes: Vec<String>,
    /// CLI call that regenerates this report.
    pub invocation: String,
}

fn invocation(sub: &str, params: &Value, seed: u64) -> String {
    format!("gowerslab verify {sub} --params '{params}' --seed {seed}")
}

fn default_precision() -> Precision {
    Precision::Rational
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NecessityParams {
    /// Degree `s`; the norm checked is `U^{s+1}[N]`.
    pub s: u32,
    pub phase: PhaseSpec,
    pub n_grid: Vec<usize>,
    #[serde(default = "default_precision")]
    pub precision: Precision,
}

/// Computes `||e(phase)||_{U^{s+1}[N]}` over the grid; passes when the
/// minimum is at least `0.9` times the value at the smallest `N`.
pub fn check_necessity(p: &NecessityParams, seed: u64) -> Result<VerificationReport> {
    if !(1..=3).contains(&p.s) {
        return Err(Error::param("s", format!("must be 1, 2 or 3, got {}", p.s)));
    }
    if p.n_grid.is_empty() || p.n_grid.contains(&0) {
        return Err(Error::param("n_grid", "need at least one positive N"));
    }
    let mut grid = p.n_grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let k = p.s + 1;
    let mut norms = Vec::with_capacity(grid.len());
    for &n in &grid {
        let f = p.phase.sample(Domain::Interval(n), p.precision)?;
        norms.push(gowers_norm_interval(&f, k, None, Method::Recursion)?.norm);
    }
    let floor = 0.9 * norms[0];
    let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
    let params = serde_json::to_value(p)?;
    Ok(VerificationReport {
        claim: format!("U^{k}[N] norm of a degree-{} nilsequence stays bounded below", p.s),
        invocation: invocation("necessity", &params, seed),
        params,
        measured: json!({ "k": k, "n_grid": grid, "norms": norms, "min": min, "floor": floor }),
        passed: min >= floor && min > 0.0,
        margin: min - floor,
        notes: vec!["floor calibrated as 0.9 x the norm at the smallest N".into()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum L1Case {
    /// `e(alpha {beta n})`
    Iii,
    /// `e({alpha n} {beta n})`
    Iv,
    /// `e(alpha n floor(beta n))`, `||beta|| <= M / N`
    V,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct L1Params {
    pub case: L1Case,
    pub alpha: Exact,
    pub beta: Exact,
    pub n: usize,
    pub eps: f64,
    /// Complexity bound `M` for case v; defaults to `ceil(||beta|| N)`.
    #[serde(default)]
    pub m: Option<f64>,
}

fn l1_error(psi: &[Complex64], approx: &[Complex64]) -> f64 {
    let d: Vec<f64> = psi.iter().zip(approx).map(|(a, b)| (a - b).norm()).collect();
    pairwise_sum(&d) / psi.len() as f64
}

/// `E_{n in [N]} |Psi(n) - Psi_eps(n)|` for the bracket phases of the
/// degree-1 approximation lemma, with `Psi_eps` built as in its proof.
pub fn check_l1_approx(p: &L1Params, seed: u64) -> Result<VerificationReport> {
    if p.n == 0 {
        return Err(Error::param("N", "must be positive"));
    }
    if !(p.eps > 0.0 && p.eps < 1.0) {
        return Err(Error::param("eps", "must lie in (0, 1)"));
    }
    let params = serde_json::to_value(p)?;
    let (measured, passed, margin, notes) = match p.case {
        L1Case::Iii => case_iii(p)?,
        L1Case::Iv => case_iv(p)?,
        L1Case::V => case_v(p)?,
    };
    Ok(VerificationReport {
        claim: format!("{:?} bracket phase is an almost nilsequence in L^1", p.case).to_lowercase(),
        invocation: invocation("l1", &params, seed),
        params,
        measured,
        passed,
        margin,
        notes,
    })
}

type CaseOutcome = (Value, bool, f64, Vec<String>);

fn frac_times(a: &Exact, n: i64) -> Exact {
    (a.clone() * Exact::from_integer(n)).frac()
}

fn case_iii(p: &L1Params) -> Result<CaseOutcome> {
    let n = p.n as i64;
    let alpha = p.alpha.clone();
    let psi: Vec<Complex64> = (1..=n).map(|x| e((alpha.clone() * frac_times(&p.beta, x)).frac().to_f64())).collect();
    let orbit: Vec<f64> = (1..=n).map(|x| frac_times(&p.beta, x).to_f64()).collect();
    let disc = discrepancy(&orbit);
    let a = alpha.to_f64();
    if disc <= p.eps / 10.0 {
        // F(x) = e(alpha x) on [0, 1), replaced on ||x|| < w by the chord
        // between F(1 - w) and F(w)
        let w = p.eps / 10.0;
        let (lo, hi) = (e(a * (1.0 - w)), e(a * w));
        let approx: Vec<Complex64> = (1..=n)
            .map(|x| {
                let t = frac_times(&p.beta, x).to_f64();
                if t >= w && t <= 1.0 - w {
                    e(a * t)
                } else {
                    let u = if t < w { t + 1.0 } else { t };
                    let lam = (u - (1.0 - w)) / (2.0 * w);
                    lo * (1.0 - lam) + hi * lam
                }
            })
            .collect();
        let err = l1_error(&psi, &approx);
        let measured = json!({
            "branch": "equidistributed",
            "l1_error": err,
            "window": w,
            "lipschitz": (hi - lo).norm() / (2.0 * w),
            "discrepancy": disc,
        });
        return Ok((measured, err <= p.eps, p.eps - err, vec![]));
    }
    let m_freq = (10.0 / p.eps).ceil() as i64;
    let test = equidist_test(&TorusOrbit::linear(&[p.beta.clone()], p.n), p.eps / 10.0, m_freq)?;
    let ra = rational_approx(&p.beta, m_freq)?;
    let theta = p.beta.clone() - Exact::new(ra.a, ra.q);
    let th = theta.abs().to_f64();
    // blocks of L terms of one residue class mod q, on which alpha {beta n}
    // moves by at most eps / 100 away from wraps
    let block = if th == 0.0 || a == 0.0 {
        p.n
    } else {
        let l = p.eps / (100.0 * std::f64::consts::TAU * a.abs() * th * ra.q as f64);
        (l.floor() as usize).clamp(1, p.n)
    };
    let q = ra.q as usize;
    let mut approx = vec![Complex64::new(0.0, 0.0); p.n];
    let mut blocks = 0usize;
    for r in 0..q.min(p.n) {
        let class: Vec<usize> = (r..p.n).step_by(q).collect();
        for chunk in class.chunks(block) {
            blocks += 1;
            for &i in chunk {
                approx[i] = psi[chunk[0]];
            }
        }
    }
    let err = l1_error(&psi, &approx);
    let measured = json!({
        "branch": "rational",
        "discrepancy": disc,
        "a": ra.a,
        "q": ra.q,
        "theta": th,
        "witness": test.witness,
        "witness_modulus": test.witness_modulus,
        "block_length": block,
        "progressions": blocks,
        "l1_error": err,
    });
    Ok((measured, err <= p.eps, p.eps - err, vec![format!("rational structure detected: beta ~ {}/{}", ra.a, ra.q)]))
}

/// `x -> x` on `[0, 1]`, then the cubic Hermite arc from `(1, 1)` back to
/// `(2, 0)` with unit slopes: a `C^1` period-2 extension.
fn smooth_fold(x: f64) -> f64 {
    if x <= 1.0 {
        x
    } else {
        let t = x - 1.0;
        4.0 * t * t * t - 6.0 * t * t + t + 1.0
    }
}

/// Coefficients `c_{kl}`, `|k|, |l| <= K`, of `e(phi(x) phi(y))` on `[0, 2)^2`.
struct FourierSquare {
    k: i64,
    c: Vec<Vec<Complex64>>,
}

impl FourierSquare {
    fn new(size: usize, k: i64) -> Self {
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(size);
        let pts: Vec<f64> = (0..size).map(|i| smooth_fold(2.0 * i as f64 / size as f64)).collect();
        let mut rows: Vec<Vec<Complex64>> = pts.iter().map(|&x| pts.iter().map(|&y| e(x * y)).collect()).collect();
        for r in rows.iter_mut() {
            fft.process(r);
        }
        for j in 0..size {
            let mut col: Vec<Complex64> = rows.iter().map(|r| r[j]).collect();
            fft.process(&mut col);
            for (i, v) in col.into_iter().enumerate() {
                rows[i][j] = v / (size * size) as f64;
            }
        }
        let idx = |f: i64| f.rem_euclid(size as i64) as usize;
        let c = (-k..=k).map(|a| (-k..=k).map(|b| rows[idx(a)][idx(b)]).collect()).collect();
        FourierSquare { k, c }
    }

    fn eval(&self, x: f64, y: f64) -> Complex64 {
        let ex: Vec<Complex64> = (-self.k..=self.k).map(|a| e(a as f64 * x / 2.0)).collect();
        let ey: Vec<Complex64> = (-self.k..=self.k).map(|b| e(b as f64 * y / 2.0)).collect();
        let mut s = Complex64::new(0.0, 0.0);
        for (row, &wx) in self.c.iter().zip(&ex) {
            let inner: Complex64 = row.iter().zip(&ey).map(|(c, w)| c * w).sum();
            s += wx * inner;
        }
        s
    }

    fn sup_error(&self) -> f64 {
        let g = 48;
        let mut worst = 0.0f64;
        for i in 0..g {
            for j in 0..g {
                let (x, y) = ((i as f64 + 0.5) / g as f64, (j as f64 + 0.5) / g as f64);
                worst = worst.max((self.eval(x, y) - e(x * y)).norm());
            }
        }
        worst
    }
}

fn case_iv(p: &L1Params) -> Result<CaseOutcome> {
    const SIZE: usize = 256;
    let n = p.n as i64;
    let xs: Vec<(Exact, Exact)> = (1..=n).map(|x| (frac_times(&p.alpha, x), frac_times(&p.beta, x))).collect();
    let psi: Vec<Complex64> = xs.iter().map(|(u, v)| e((u.clone() * v.clone()).frac().to_f64())).collect();
    // e(xy) ~ sum c_kl e(kx/2) e(ly/2), each factor an instance of case iii
    let mut k = 2;
    let square = loop {
        let s = FourierSquare::new(SIZE, k);
        if s.sup_error() <= p.eps / 2.0 || 2 * k >= SIZE as i64 / 2 {
            break s;
        }
        k *= 2;
    };
    let sup = square.sup_error();
    let approx: Vec<Complex64> = xs.iter().map(|(u, v)| square.eval(u.to_f64(), v.to_f64())).collect();
    let err = l1_error(&psi, &approx);
    let measured = json!({
        "l1_error": err,
        "uniform_error": sup,
        "cutoff": square.k,
        "terms": (2 * square.k + 1).pow(2),
    });
    Ok((measured, err <= p.eps, p.eps - err, vec!["e(xy) extended C^1-periodically to [0, 2)^2".into()]))
}

fn case_v(p: &L1Params) -> Result<CaseOutcome> {
    let n = p.n as i64;
    let b = p.beta.clone() + Exact::new(1, 2);
    let b = b.floor_i64().ok_or_else(|| Error::param("beta", "too large"))?;
    let rest = p.beta.clone() - Exact::from_integer(b);
    let dist = rest.abs().to_f64();
    let m = p.m.unwrap_or_else(|| (dist * p.n as f64).ceil().max(1.0));
    let hyp = dist <= m / p.n as f64;
    let psi: Vec<Complex64> = (1..=n)
        .map(|x| {
            let fl = (p.beta.clone() * Exact::from_integer(x)).floor();
            e((p.alpha.clone() * Exact::from_integer(x) * fl).frac().to_f64())
        })
        .collect();
    // floor(beta n) = b n + c_j on maximal runs where floor((beta - b) n) = c_j,
    // so Psi = e(alpha b n^2 + alpha c_j n) there
    let mut pieces: Vec<(i64, i64, i64)> = Vec::new();
    for x in 1..=n {
        let c = (rest.clone() * Exact::from_integer(x)).floor_i64().expect("small");
        match pieces.last_mut() {
            Some(last) if last.2 == c => last.1 = x,
            _ => pieces.push((x, x, c)),
        }
    }
    let ab = p.alpha.clone() * Exact::from_integer(b);
    let mut approx = Vec::with_capacity(p.n);
    for &(lo, hi, c) in &pieces {
        let lin = p.alpha.clone() * Exact::from_integer(c);
        for x in lo..=hi {
            let xx = Exact::from_integer(x);
            approx.push(e((ab.clone() * xx.clone() * xx.clone() + lin.clone() * xx).frac().to_f64()));
        }
    }
    let err = l1_error(&psi, &approx);
    let cap = m.floor() + 2.0;
    let measured = json!({
        "l1_error": err,
        "pieces": pieces.len(),
        "piece_cap": cap,
        "beta_distance": dist,
        "m": m,
        "hypothesis_holds": hyp,
    });
    let passed = hyp && err <= p.eps && pieces.len() as f64 <= cap;
    let mut notes = vec![];
    if !hyp {
        notes.push(format!("||beta|| = {dist} exceeds M / N = {}", m / p.n as f64));
    }
    Ok((measured, passed, (p.eps - err).min(cap - pieces.len() as f64), notes))
}

fn default_c() -> f64 {
    0.01
}

fn default_samples() -> usize {
    8
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub n: usize,
    /// `f = e(phase)`; `None` is the empty family.
    #[serde(default)]
    pub f: Option<PhaseSpec>,
    /// `H`; defaults to `[1, N/2]`.
    #[serde(default)]
    pub shifts: Option<Vec<i64>>,
    /// Defaults to the smallest measured correlation over `H`.
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Correlation floor for the quadratic phase; defaults to the count threshold.
    #[serde(default)]
    pub floor: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseFit {
    pub quadruple: [i64; 4],
    /// `alpha = a / N^2`, `beta = b / N`.
    pub a: usize,
    pub b: usize,
    pub alpha: f64,
    pub beta: f64,
    pub correlation: f64,
}

/// Best `|E_{n in [N]} p(n) e(a n^2 / N^2 + b n / N)|` over the grid, the
/// earliest `(a, b)` winning ties.
pub fn best_quadratic_phase(p: &[Complex64]) -> (usize, usize, f64) {
    let n = p.len();
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    let mut best = (0, 0, -1.0);
    for a in 0..n * n {
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| {
                let x = (j + 1) as u128;
                let t = ((a as u128 * x * x) % (n * n) as u128) as f64 / (n * n) as f64;
                p[j] * e(t)
            })
            .collect();
        // inverse transform: sum_j buf[j] e(j b / N), and n = j + 1
        fft.process(&mut buf);
        for (b, v) in buf.iter().enumerate() {
            let corr = v.norm() / n as f64;
            if corr > best.2 + 1e-12 {
                best = (a, b, corr);
            }
        }
    }
    best
}

/// Counts the correlated quadruples for `chi_h = Delta_h f`, then for a
/// seeded sample of passing quadruples searches for `e(alpha n^2 + beta n)`
/// correlating with `chi_1 chi_2 conj(chi_3 chi_4)`.
pub fn run_gowers_pipeline(p: &PipelineParams, seed: u64) -> Result<VerificationReport> {
    let params = serde_json::to_value(p)?;
    let inv = invocation("pipeline", &params, seed);
    let Some(phase) = &p.f else {
        return Ok(VerificationReport {
            claim: "correlated quadruples carry a quadratic phase".into(),
            invocation: inv,
            params,
            measured: json!({ "quadruples": 0 }),
            passed: true,
            margin: 0.0,
            notes: vec!["empty family: vacuous pass".into()],
        });
    };
    let n = p.n;
    let f = phase.sample(Domain::Interval(n), Precision::Rational)?;
    let shifts = ShiftSet::new(n, p.shifts.clone().unwrap_or_else(|| (1..=(n / 2).max(1) as i64).collect()))?;
    let chi = derivative_family(&f, &shifts);
    let corr = hypothesis_correlations(&f, &shifts, &chi)?;
    let measured_delta = corr.iter().cloned().fold(f64::INFINITY, f64::min);
    let delta = p.delta.unwrap_or(measured_delta);
    let count = count_correlated_quadruples(&f, &shifts, &chi, delta, p.c)?;
    let passing = passing_quadruples(&shifts, &chi, count.threshold)?;
    let floor = p.floor.unwrap_or(count.threshold);
    let mut r = sample::rng(seed);
    let mut picks: Vec<usize> = index::sample(&mut r, passing.len(), p.samples.min(passing.len())).into_vec();
    picks.sort_unstable();
    let pos = |h: i64| shifts.h.binary_search(&h).expect("shift in H");
    let fits: Vec<PhaseFit> = picks
        .iter()
        .map(|&i| {
            let q = passing[i];
            let c = [pos(q[0]), pos(q[1]), pos(q[2]), pos(q[3])];
            let prod: Vec<Complex64> = (0..n)
                .map(|x| {
                    chi[c[0]].values()[x] * chi[c[1]].values()[x] * (chi[c[2]].values()[x] * chi[c[3]].values()[x]).conj()
                })
                .collect();
            let (a, b, corr) = best_quadratic_phase(&prod);
            PhaseFit {
                quadruple: q,
                a,
                b,
                alpha: a as f64 / (n * n) as f64,
                beta: b as f64 / n as f64,
                correlation: corr,
            }
        })
        .collect();
    let worst = fits.iter().map(|f| f.correlation).fold(f64::INFINITY, f64::min);
    let count_margin = (count.count as f64 - count.bound) / count.bound.max(1.0);
    let fit_margin = if fits.is_empty() { 0.0 } else { worst - floor };
    let passed = count.count as f64 >= count.bound && fits.iter().all(|f| f.correlation >= floor);
    Ok(VerificationReport {
        claim: "correlated quadruples carry a quadratic phase".into(),
        invocation: inv,
        params,
        measured: json!({
            "delta": delta,
            "measured_delta": measured_delta,
            "count": count,
            "passing": passing.len(),
            "floor": floor,
            "fits": fits,
        }),
        passed,
        margin: count_margin.min(fit_margin),
        notes: vec![format!("phase floor {floor} (count threshold unless given)")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Exact {
        Exact::new(a, b)
    }

    #[test]
    fn necessity_pure_phases_are_one() {
        for (s, coeffs) in [(1, vec![Exact::zero(), q(3, 17)]), (2, vec![Exact::zero(), q(1, 5), q(2, 7)])] {
            let p = NecessityParams { s, phase: PhaseSpec::poly(&coeffs), n_grid: vec![40, 20], precision: Precision::Rational };
            let r = check_necessity(&p, 0).unwrap();
            assert!(r.passed);
            for v in r.measured["norms"].as_array().unwrap() {
                assert!((v.as_f64().unwrap() - 1.0).abs() < 1e-9);
            }
            assert!(r.invocation.starts_with("gowerslab verify necessity --params '"));
        }
    }

    #[test]
    fn l1_case_iii_branches() {
        let golden = Exact::from_f64_decimal(0.6180339887).unwrap();
        let p = L1Params { case: L1Case::Iii, alpha: q(1, 3), beta: golden, n: 2000, eps: 0.05, m: None };
        let r = check_l1_approx(&p, 0).unwrap();
        assert_eq!(r.measured["branch"], "equidistributed");
        assert!(r.passed, "{:?}", r.measured);
        let p = L1Params { case: L1Case::Iii, alpha: q(1, 3), beta: q(1, 2), n: 500, eps: 0.05, m: None };
        let r = check_l1_approx(&p, 0).unwrap();
        assert_eq!(r.measured["branch"], "rational");
        assert_eq!(r.measured["q"], 2);
        assert_eq!(r.measured["l1_error"], 0.0);
    }

    #[test]
    fn l1_case_iii_near_rational() {
        let beta = q(2, 7) + q(1, 100_000);
        let p = L1Params { case: L1Case::Iii, alpha: q(5, 7), beta, n: 3000, eps: 0.05, m: None };
        let r = check_l1_approx(&p, 0).unwrap();
        assert_eq!(r.measured["branch"], "rational");
        assert_eq!(r.measured["q"], 7);
        assert!(r.passed, "{:?}", r.measured);
    }

    #[test]
    fn l1_case_iv() {
        let p = L1Params {
            case: L1Case::Iv,
            alpha: Exact::from_f64_decimal(0.41421356).unwrap(),
            beta: Exact::from_f64_decimal(0.7320508).unwrap(),
            n: 1000,
            eps: 0.05,
            m: None,
        };
        let r = check_l1_approx(&p, 0).unwrap();
        assert!(r.passed, "{:?}", r.measured);
        assert!(r.measured["uniform_error"].as_f64().unwrap() <= 0.025);
    }

    #[test]
    fn l1_case_v() {
        let p = L1Params { case: L1Case::V, alpha: q(3, 11), beta: Exact::zero(), n: 300, eps: 0.01, m: Some(1.0) };
        let r = check_l1_approx(&p, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.measured["pieces"], 1);
        assert_eq!(r.measured["l1_error"], 0.0);
        // beta = 1 - 1/100: floor(beta n) = n + floor(-n/100), three runs
        let p = L1Params { case: L1Case::V, alpha: q(3, 11), beta: q(297, 300), n: 300, eps: 0.01, m: Some(3.0) };
        let r = check_l1_approx(&p, 0).unwrap();
        assert!(r.passed, "{:?}", r.measured);
        assert_eq!(r.measured["pieces"], 3);
        let p = L1Params { case: L1Case::V, alpha: q(3, 11), beta: q(1, 10), n: 300, eps: 0.01, m: Some(3.0) };
        assert!(!check_l1_approx(&p, 0).unwrap().passed);
    }

    #[test]
    fn quadratic_grid_recovers_planted_phase() {
        let n = 16;
        let p: Vec<Complex64> =
            (1..=n as i64).map(|x| e(-((37 * x * x) as f64 / 256.0 + (5 * x) as f64 / 16.0))).collect();
        let (a, b, c) = best_quadratic_phase(&p);
        assert_eq!((a, b), (37, 5));
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pipeline_quadratic_phase() {
        let phase = PhaseSpec::poly(&[Exact::zero(), q(1, 7), q(3, 19)]);
        let p = PipelineParams { n: 24, f: Some(phase), shifts: None, delta: None, c: default_c(), samples: 4, floor: None };
        let r = run_gowers_pipeline(&p, 3).unwrap();
        assert!(r.passed, "{:?}", r.measured);
        let count = &r.measured["count"];
        assert_eq!(count["count"], count["total"]);
        for fit in r.measured["fits"].as_array().unwrap() {
            assert_eq!(fit["a"], 0);
        }
        let again = run_gowers_pipeline(&p, 3).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
        let empty = PipelineParams { f: None, ..p };
        assert!(run_gowers_pipeline(&empty, 0).unwrap().passed);
    }
}
