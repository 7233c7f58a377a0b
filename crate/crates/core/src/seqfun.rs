//! 1-bounded functions on `[N] = {1..N}` and on `Z_M`, the phase generators
//! that produce them, and multiplicative derivatives.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bracket::BracketExpr;
use crate::error::{Error, Result};
use crate::nilgroup::NilSeqSpec;
use crate::real::{e, Exact, Real};

/// Slack allowed on `|f(x)| <= 1`.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `{1, ..., N}`
    Interval(usize),
    /// `Z / M Z`
    Cyclic(usize),
}

impl Domain {
    pub fn size(&self) -> usize {
        match *self {
            Domain::Interval(n) | Domain::Cyclic(n) => n,
        }
    }

    /// The integer represented by storage slot `i`.
    pub fn point(&self, i: usize) -> i64 {
        match self {
            Domain::Interval(_) => i as i64 + 1,
            Domain::Cyclic(_) => i as i64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Domain::Interval(0) => Err(Error::param("N", "interval length must be positive")),
            Domain::Cyclic(m) if m < 2 => Err(Error::param("M", "cyclic modulus must be at least 2")),
            _ => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Domain::Interval(n) => format!("interval [{n}]"),
            Domain::Cyclic(m) => format!("cyclic Z_{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    #[default]
    Float,
    Rational,
}

impl std::str::FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Precision::Float),
            "rational" => Ok(Precision::Rational),
            _ => Err(Error::param("precision", format!("expected float or rational, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeqFn {
    domain: Domain,
    values: Vec<Complex64>,
}

impl SeqFn {
    /// Checks length and 1-boundedness.
    pub fn new(domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        domain.validate()?;
        if values.len() != domain.size() {
            return Err(Error::DomainMismatch(format!(
                "{} needs {} values, got {}",
                domain.describe(),
                domain.size(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            let m = v.norm();
            if !(m <= 1.0 + BOUND_SLACK) {
                return Err(Error::NotOneBounded { index: domain.point(i), modulus: m });
            }
        }
        Ok(SeqFn { domain, values })
    }

    pub fn from_fn(domain: Domain, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        let values = (0..domain.size()).map(|i| f(domain.point(i))).collect();
        SeqFn::new(domain, values)
    }

    /// `e(phase)` from phases in cycles.
    pub fn from_phases(domain: Domain, phases: &[f64]) -> Result<Self> {
        SeqFn::new(domain, phases.iter().map(|&p| e(p)).collect())
    }

    pub fn constant(domain: Domain, c: Complex64) -> Result<Self> {
        SeqFn::new(domain, vec![c; domain.size()])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at the integer `x`: `1..=N` on intervals (zero outside), any
    /// residue on cyclic groups.
    pub fn at(&self, x: i64) -> Complex64 {
        match self.domain {
            Domain::Interval(n) => {
                if 1 <= x && x <= n as i64 {
                    self.values[x as usize - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Domain::Cyclic(m) => self.values[x.rem_euclid(m as i64) as usize],
        }
    }

    /// Zero-padded copy on `Z_{M~}`, `M~ >= 2^k N`, default `2^k N`.
    pub fn embed_interval(&self, k: u32, m_tilde: Option<usize>) -> Result<SeqFn> {
        let Domain::Interval(n) = self.domain else {
            return Err(Error::DomainMismatch("embed_interval needs an interval function".into()));
        };
        let min = n.checked_shl(k).filter(|m| m >> k == n).ok_or_else(|| Error::param("k", "2^k N overflows"))?;
        let m = m_tilde.unwrap_or(min);
        if m < min {
            return Err(Error::param("m_tilde", format!("need at least 2^{k} * {n} = {min}, got {m}")));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); m];
        values[1..=n].copy_from_slice(&self.values);
        SeqFn::new(Domain::Cyclic(m), values)
    }

    /// Restriction of a cyclic function to `1..=n`.
    pub fn restrict_interval(&self, n: usize) -> Result<SeqFn> {
        let Domain::Cyclic(m) = self.domain else {
            return Err(Error::DomainMismatch("restriction needs a cyclic function".into()));
        };
        if n >= m {
            return Err(Error::param("n", format!("must be below the modulus {m}")));
        }
        SeqFn::new(Domain::Interval(n), self.values[1..=n].to_vec())
    }

    /// `x -> f(x + h) conj(f(x))`; on an interval `f` is read as zero
    /// outside `[N]`.
    pub fn mult_derivative(&self, h: i64) -> SeqFn {
        let values = match self.domain {
            Domain::Cyclic(m) => {
                let h = h.rem_euclid(m as i64) as usize;
                (0..m).map(|x| self.values[(x + h) % m] * self.values[x].conj()).collect()
            }
            Domain::Interval(n) => (1..=n as i64).map(|x| self.at(x + h) * self.at(x).conj()).collect(),
        };
        SeqFn { domain: self.domain, values }
    }

    pub fn pointwise_mul(&self, o: &SeqFn) -> Result<SeqFn> {
        self.same_domain(o)?;
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect();
        Ok(SeqFn { domain: self.domain, values })
    }

    pub fn conj(&self) -> SeqFn {
        SeqFn { domain: self.domain, values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// `f(x) e(theta x)`.
    pub fn modulate(&self, theta: f64) -> SeqFn {
        let values = self.values.iter().enumerate().map(|(i, v)| v * e(theta * self.domain.point(i) as f64)).collect();
        SeqFn { domain: self.domain, values }
    }

    pub fn same_domain(&self, o: &SeqFn) -> Result<()> {
        if self.domain != o.domain {
            return Err(Error::DomainMismatch(format!("{} vs {}", self.domain.describe(), o.domain.describe())));
        }
        Ok(())
    }

    /// CSV with header `index,re,im`; `index` is the domain point.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["index", "re", "im"])?;
        for (i, v) in self.values.iter().enumerate() {
            wr.serialize((self.domain.point(i), v.re, v.im))?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads the CSV format of [`SeqFn::write_csv`]. Rows may come in any
    /// order but must cover the domain exactly once; the size is inferred
    /// when `size` is `None`.
    pub fn read_csv<Rd: std::io::Read>(r: Rd, cyclic: bool, size: Option<usize>) -> Result<SeqFn> {
        let mut rows: Vec<(i64, f64, f64)> = Vec::new();
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.iter().map(str::trim).collect::<Vec<_>>() != ["index", "re", "im"] {
            return Err(Error::Parse(format!("expected header index,re,im, got {headers:?}")));
        }
        for rec in rd.deserialize() {
            rows.push(rec?);
        }
        let len = size.unwrap_or(rows.len());
        let domain = if cyclic { Domain::Cyclic(len) } else { Domain::Interval(len) };
        domain.validate()?;
        if rows.len() != len {
            return Err(Error::DomainMismatch(format!("{} needs {len} rows, got {}", domain.describe(), rows.len())));
        }
        let mut values = vec![None; len];
        let offset = domain.point(0);
        for (idx, re, im) in rows {
            let slot = idx - offset;
            if slot < 0 || slot >= len as i64 {
                return Err(Error::Parse(format!("index {idx} outside {}", domain.describe())));
            }
            if values[slot as usize].replace(Complex64::new(re, im)).is_some() {
                return Err(Error::Parse(format!("duplicate index {idx}")));
            }
        }
        SeqFn::new(domain, values.into_iter().map(|v| v.expect("all slots filled")).collect())
    }

    pub fn read_csv_path(path: &Path, cyclic: bool, size: Option<usize>) -> Result<SeqFn> {
        SeqFn::read_csv(std::fs::File::open(path)?, cyclic, size)
    }
}

/// Closed-form generator of a phase `n -> P(n)` in cycles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseSpec {
    /// `sum_j coeffs[j] n^j`, degree at most 3.
    PurePoly { coeffs: Vec<Exact> },
    Bracket { expr: BracketExpr },
    NilChar { seq: NilSeqSpec },
    /// Values read from a CSV file rather than a phase.
    FileData { path: PathBuf },
}

impl PhaseSpec {
    pub fn poly(coeffs: &[Exact]) -> PhaseSpec {
        PhaseSpec::PurePoly { coeffs: coeffs.to_vec() }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PhaseSpec::PurePoly { coeffs } if coeffs.len() > 4 => {
                Err(Error::param("coeffs", format!("degree at most 3, got {} coefficients", coeffs.len())))
            }
            PhaseSpec::Bracket { expr } if expr.num_vars() > 1 => {
                Err(Error::param("expr", "a phase may only use the variable n"))
            }
            PhaseSpec::NilChar { seq } => seq.validate(),
            _ => Ok(()),
        }
    }

    /// Phase at `n` reduced to `[0, 1)`.
    pub fn phase<R: Real>(&self, n: i64) -> Result<R> {
        let nn = R::from_i64(n);
        Ok(match self {
            PhaseSpec::PurePoly { coeffs } => {
                coeffs.iter().rev().fold(R::zero(), |acc, c| acc * nn.clone() + R::from_exact(c)).frac()
            }
            PhaseSpec::Bracket { expr } => expr.eval(&[nn]).frac(),
            PhaseSpec::NilChar { seq } => seq.phase::<R>(n)?.frac(),
            PhaseSpec::FileData { .. } => {
                return Err(Error::param("phase", "file data has no closed-form phase"));
            }
        })
    }

    /// Samples `e(P(n))` over the domain; rational mode reduces mod 1 exactly
    /// before rounding.
    pub fn sample(&self, domain: Domain, precision: Precision) -> Result<SeqFn> {
        self.validate()?;
        domain.validate()?;
        if let PhaseSpec::FileData { path } = self {
            let cyclic = matches!(domain, Domain::Cyclic(_));
            return SeqFn::read_csv_path(path, cyclic, Some(domain.size()));
        }
        let mut phases = Vec::with_capacity(domain.size());
        for i in 0..domain.size() {
            let n = domain.point(i);
            phases.push(match precision {
                Precision::Float => self.phase::<f64>(n)?,
                Precision::Rational => self.phase::<Exact>(n)?.to_f64(),
            });
        }
        SeqFn::from_phases(domain, &phases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn embed_examples() {
        let f = SeqFn::constant(Domain::Interval(4), c(1.0, 0.0)).unwrap();
        let g = f.embed_interval(2, None).unwrap();
        assert_eq!(g.len(), 16);
        assert_eq!(g.values().iter().filter(|v| v.re == 1.0).count(), 4);
        assert_eq!(g.restrict_interval(4).unwrap(), f);

        let f = SeqFn::constant(Domain::Interval(10), c(0.0, 1.0)).unwrap();
        let g = f.embed_interval(3, Some(80)).unwrap();
        assert_eq!(g.len(), 80);
        let support: Vec<i64> = (0..80).filter(|&x| g.at(x).norm() > 0.0).collect();
        assert_eq!(support, (1..=10).collect::<Vec<_>>());
        assert!(f.embed_interval(3, Some(79)).is_err());
    }

    #[test]
    fn rejects_unbounded_and_wrong_length() {
        assert!(matches!(
            SeqFn::new(Domain::Cyclic(2), vec![c(0.0, 0.0), c(1.0, 0.1)]),
            Err(Error::NotOneBounded { index: 1, .. })
        ));
        assert!(SeqFn::new(Domain::Cyclic(3), vec![c(0.0, 0.0)]).is_err());
        assert!(SeqFn::new(Domain::Cyclic(1), vec![c(0.0, 0.0)]).is_err());
        assert!(SeqFn::new(Domain::Interval(1), vec![c(1.0 + 1e-13, 0.0)]).is_ok());
    }

    #[test]
    fn derivative_of_character_is_constant() {
        let m = 16;
        let f = PhaseSpec::poly(&[Exact::zero(), Exact::new(3, 16)]).sample(Domain::Cyclic(m), Precision::Rational).unwrap();
        for h in [0, 1, 5, -3] {
            let d = f.mult_derivative(h);
            let want = e(3.0 * h as f64 / 16.0);
            assert!(d.values().iter().all(|v| (v - want).norm() < 1e-12));
        }
        let g = SeqFn::new(Domain::Cyclic(3), vec![c(0.5, 0.0), c(0.0, -0.3), c(0.6, 0.8)]).unwrap();
        let d0 = g.mult_derivative(0);
        for (v, w) in d0.values().iter().zip(g.values()) {
            assert!((v.re - w.norm_sqr()).abs() < 1e-15 && v.im == 0.0);
        }
    }

    #[test]
    fn derivatives_commute() {
        let mut r = sample::rng(7);
        for t in 0..20 {
            let f = SeqFn::new(Domain::Cyclic(32), sample::disc_vec(&mut r, 32)).unwrap();
            let (h1, h2) = (t * 5 % 32, (t * 11 + 3) % 32);
            let a = f.mult_derivative(h1).mult_derivative(h2);
            let b = f.mult_derivative(h2).mult_derivative(h1);
            // independent evaluation from the definition
            for x in 0..32i64 {
                let want = f.at(x + h1 + h2) * f.at(x + h2).conj() * (f.at(x + h1) * f.at(x).conj()).conj();
                assert!((a.at(x) - b.at(x)).norm() < 1e-15);
                assert!((a.at(x) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn interval_derivative_zero_extends() {
        let f = SeqFn::constant(Domain::Interval(5), c(1.0, 0.0)).unwrap();
        let d = f.mult_derivative(2);
        let got: Vec<f64> = d.values().iter().map(|v| v.re).collect();
        assert_eq!(got, vec![1.0, 1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn csv_round_trip() {
        let mut r = sample::rng(3);
        for cyclic in [false, true] {
            let dom = if cyclic { Domain::Cyclic(9) } else { Domain::Interval(9) };
            let f = SeqFn::new(dom, sample::disc_vec(&mut r, 9)).unwrap();
            let mut buf = Vec::new();
            f.write_csv(&mut buf).unwrap();
            assert!(buf.starts_with(b"index,re,im\n"));
            let g = SeqFn::read_csv(&buf[..], cyclic, None).unwrap();
            assert_eq!(f, g);
        }
        let bad = "index,re,im\n1,0,0\n1,0,0\n";
        assert!(SeqFn::read_csv(bad.as_bytes(), false, None).is_err());
        let gap = "index,re,im\n1,0,0\n3,0,0\n";
        assert!(SeqFn::read_csv(gap.as_bytes(), false, None).is_err());
    }

    #[test]
    fn phase_specs() {
        let b = PhaseSpec::Bracket { expr: "0.3*n*floor(0.7*n)".parse().unwrap() };
        assert_eq!(b.phase::<Exact>(4).unwrap(), Exact::new(2, 5));
        assert!(PhaseSpec::poly(&vec![Exact::one(); 5]).validate().is_err());
        let s = r#"{"kind":"pure_poly","coeffs":["1/3","0",0.25]}"#;
        let p: PhaseSpec = serde_json::from_str(s).unwrap();
        assert_eq!(p.phase::<Exact>(2).unwrap(), Exact::new(1, 3));
        let f = p.sample(Domain::Interval(8), Precision::Float).unwrap();
        let g = p.sample(Domain::Interval(8), Precision::Rational).unwrap();
        for (a, b) in f.values().iter().zip(g.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_is_multiplicative() {
        let mut r = sample::rng(11);
        let f = SeqFn::new(Domain::Cyclic(20), sample::disc_vec(&mut r, 20)).unwrap();
        let g = SeqFn::new(Domain::Cyclic(20), sample::disc_vec(&mut r, 20)).unwrap();
        let lhs = f.pointwise_mul(&g).unwrap().mult_derivative(7);
        let rhs = f.mult_derivative(7).pointwise_mul(&g.mult_derivative(7)).unwrap();
        for (a, b) in lhs.values().iter().zip(rhs.values()) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
