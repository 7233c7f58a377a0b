use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::output::{Outcome, Table};
use super::*;
use crate::additive::{self, GridGraph, IntSet, PairSet};
use crate::bohr;
use crate::bracket::{self, BracketExpr, LemmaCase, TrilinearForm};
use crate::equidist::{self, TorusOrbit};
use crate::error::{Error, Result};
use crate::gowers::{self, ShiftSet};
use crate::nilgroup::{Malcev3, NilSeqSpec, PolySeq2};
use crate::primes;
use crate::real::{Exact, Real, Scaled};
use crate::sample;
use crate::seqfun::{Domain, PhaseSpec, SeqFn};
use crate::verify;

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Gowers(c) => gowers_cmd(c, cfg),
        Command::Bracket(BracketCmd::Verify { case, params, n_max }) => bracket_verify(case, params.as_deref(), *n_max, cfg),
        Command::Nil(NilCmd::Eval { group, seq, coord, n_max }) => nil_eval(group, seq, coord.as_deref(), *n_max, cfg),
        Command::Nil(NilCmd::PowerCheck { params }) => power_check(params, cfg),
        Command::Equidist(c) => equidist_cmd(c, cfg),
        Command::Bohr(c) => bohr_cmd(c),
        Command::Sumset(c) => sumset_cmd(c),
        Command::Primes(c) => primes_cmd(c),
        Command::Verify(c) => verify_cmd(c, cfg),
    }
}

fn read_params(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(s.to_string()),
    }
}

fn parse<T: DeserializeOwned>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(&read_params(s)?)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn parse_phase(s: &str) -> Result<PhaseSpec> {
    let s = read_params(s)?;
    // `{5/7 n} n` is a bracket expression, not JSON
    if s.trim_start().starts_with('{') {
        if let Ok(spec) = serde_json::from_str(&s) {
            return Ok(spec);
        }
        if let Ok(expr) = s.parse::<BracketExpr>() {
            return Ok(PhaseSpec::Bracket { expr });
        }
        return Ok(serde_json::from_str(&s)?);
    }
    Ok(PhaseSpec::Bracket { expr: s.parse::<BracketExpr>()? })
}

fn load_fn(src: &FnSource, cyclic: bool, cfg: &RunConfig) -> Result<(SeqFn, Value)> {
    let domain = |n: usize| if cyclic { Domain::Cyclic(n) } else { Domain::Interval(n) };
    match (&src.phase, &src.input) {
        (Some(p), _) => {
            let n = src.n.ok_or_else(|| Error::param("n", "required with --phase"))?;
            let spec = parse_phase(p)?;
            let f = spec.sample(domain(n), cfg.precision_or(crate::seqfun::Precision::Float))?;
            Ok((f, json!({ "phase": spec, "n": n })))
        }
        (None, Some(path)) => {
            let f = SeqFn::read_csv_path(path, cyclic, src.n)?;
            Ok((f.clone(), json!({ "input": path, "n": f.len() })))
        }
        (None, None) => Err(Error::param("phase", "give --phase or --input")),
    }
}

/// `a..b` (inclusive) or `h1,h2,...`.
fn parse_shifts(s: &str) -> Result<Vec<i64>> {
    let bad = |_| Error::param("shifts", format!("cannot parse {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(bad)).collect()
}

fn gowers_cmd(c: &GowersCmd, cfg: &RunConfig) -> Result<Outcome> {
    let prec = cfg.precision_or(crate::seqfun::Precision::Float);
    match c {
        GowersCmd::Norm { domain, k, src, method, m_tilde } => {
            let cyclic = *domain == DomainKind::Cyclic;
            let (f, mut params) = load_fn(src, cyclic, cfg)?;
            let r = if cyclic {
                gowers::gowers_norm_group(&f, *k, *method)?
            } else {
                gowers::gowers_norm_interval(&f, *k, *m_tilde, *method)?
            };
            params["domain"] = json!(if cyclic { "cyclic" } else { "interval" });
            params["k"] = json!(k);
            params["method"] = json!(method);
            params["m_tilde"] = json!(m_tilde);
            Ok(Outcome::new("gowers norm", params, to_value(&r)?).precision(prec))
        }
        GowersCmd::Quadruples { src, shifts, delta, c } => {
            let (f, mut params) = load_fn(src, false, cfg)?;
            let n = f.len();
            let h = match shifts {
                Some(s) => parse_shifts(s)?,
                None => (1..=(n / 2).max(1) as i64).collect(),
            };
            let shifts = ShiftSet::new(n, h)?;
            let chi = gowers::derivative_family(&f, &shifts);
            let corr = gowers::hypothesis_correlations(&f, &shifts, &chi)?;
            let measured = corr.iter().cloned().fold(f64::INFINITY, f64::min);
            let q = gowers::count_correlated_quadruples(&f, &shifts, &chi, delta.unwrap_or(measured), *c)?;
            params["shifts"] = json!(shifts.h);
            params["delta"] = json!(delta);
            params["c"] = json!(c);
            let mut result = to_value(&q)?;
            result["measured_delta"] = json!(measured);
            result["meets_bound"] = json!(q.count as f64 >= q.bound);
            Ok(Outcome::new("gowers quadruples", params, result).precision(prec))
        }
    }
}

fn random_trilinear(seed: u64) -> TrilinearForm {
    let mut r = sample::rng(seed);
    let terms = (0..2)
        .map(|_| [sample::unit_rational(&mut r, 100), sample::unit_rational(&mut r, 100), sample::unit_rational(&mut r, 100)])
        .collect();
    let quad = vec![[sample::unit_rational(&mut r, 100), sample::unit_rational(&mut r, 100)]];
    TrilinearForm::new(terms, quad)
}

fn bracket_verify(case: &str, params: Option<&str>, n_max: i64, cfg: &RunConfig) -> Result<Outcome> {
    use crate::seqfun::Precision::*;
    if n_max < 1 {
        return Err(Error::param("n_max", "must be positive"));
    }
    let prec = cfg.precision_or(Rational);
    if case == "trilinear" {
        let t: TrilinearForm = match params {
            Some(p) => parse(p)?,
            None => random_trilinear(cfg.seed),
        };
        let r = match prec {
            Rational => bracket::verify_trilinear::<Exact>(&t, n_max)?,
            Float => bracket::verify_trilinear::<f64>(&t, n_max)?,
        };
        let params = json!({ "case": case, "form": t, "n_max": n_max });
        return Ok(Outcome::new("bracket verify", params, to_value(&r)?).precision(prec).verdict(r.passed));
    }
    let case: LemmaCase = case.parse()?;
    let ps: Vec<Exact> = match params {
        Some(p) => parse(p)?,
        None => {
            let mut r = sample::rng(cfg.seed);
            (0..case.arity()).map(|_| sample::rational(&mut r, 1000, 10)).collect()
        }
    };
    let r = match prec {
        Rational => {
            let v: Vec<Scaled> = ps.iter().map(Scaled::from_exact).collect();
            bracket::verify_bracket_lemma(case, &v, 1..=n_max)?
        }
        Float => {
            let v: Vec<f64> = ps.iter().map(f64::from_exact).collect();
            bracket::verify_bracket_lemma(case, &v, 1..=n_max)?
        }
    };
    let params = json!({ "case": case.name(), "params": ps, "n_max": n_max });
    Ok(Outcome::new("bracket verify", params, to_value(&r)?).precision(prec).verdict(r.passed))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Free2Seq {
    Orbit { g: Vec<Exact> },
    Poly(PolySeq2),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Free3Seq {
    Orbit { g: Vec<Exact> },
    Linear { alpha: Exact, beta: Exact, gamma: Exact },
}

fn free2_coord(s: &str) -> Result<[usize; 2]> {
    let bad = || Error::param("coord", format!("expected i'i such as 21 or 2,1; got {s:?}"));
    let parts: Vec<usize> = if s.contains(',') {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
    };
    match parts[..] {
        [ip, i] => Ok([ip, i]),
        _ => Err(bad()),
    }
}

fn nil_spec(group: &str, seq: &str, coord: Option<&str>) -> Result<NilSeqSpec> {
    let seq = read_params(seq)?;
    if let Some(k) = group.strip_prefix("free2:") {
        let k: usize = k.parse().map_err(|_| Error::param("group", format!("bad rank in {group:?}")))?;
        let coord = free2_coord(coord.unwrap_or("21"))?;
        let spec = match serde_json::from_str(&seq)? {
            Free2Seq::Orbit { g } => NilSeqSpec::Free2Orbit { k, g, coord },
            Free2Seq::Poly(p) => {
                if p.k() != k {
                    return Err(Error::param("seq", format!("{} generators for free2:{k}", p.k())));
                }
                NilSeqSpec::Free2 { seq: p, coord }
            }
        };
        spec.validate()?;
        return Ok(spec);
    }
    if group != "free3" {
        return Err(Error::param("group", format!("expected free2:k or free3, got {group:?}")));
    }
    let coord = coord.unwrap_or("312").to_string();
    let spec = match serde_json::from_str(&seq)? {
        Free3Seq::Orbit { g } => NilSeqSpec::Free3Orbit { g, coord },
        Free3Seq::Linear { alpha, beta, gamma } => NilSeqSpec::Free3Linear { alpha, beta, gamma, coord },
    };
    spec.validate()?;
    Ok(spec)
}

fn nil_eval(group: &str, seq: &str, coord: Option<&str>, n_max: i64, cfg: &RunConfig) -> Result<Outcome> {
    use crate::seqfun::Precision::*;
    if n_max < 0 {
        return Err(Error::param("n_max", "must be non-negative"));
    }
    let spec = nil_spec(group, seq, coord)?;
    let prec = cfg.precision_or(Rational);
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let v = match prec {
            Rational => spec.phase::<Exact>(n)?.to_string(),
            Float => spec.phase::<f64>(n)?.to_string(),
        };
        rows.push(vec![n.to_string(), v]);
    }
    let result = json!({ "phases": rows.iter().map(|r| &r[1]).collect::<Vec<_>>() });
    let table = Table { header: vec!["n".into(), "phase".into()], rows };
    let params = json!({ "group": group, "seq": spec, "n_max": n_max });
    Ok(Outcome::new("nil eval", params, result).precision(prec).table(table, true))
}

#[derive(Deserialize, serde::Serialize)]
struct PowerParams {
    alpha: Exact,
    beta: Exact,
    gamma: Exact,
    #[serde(default = "default_power_n")]
    n_max: i64,
}

fn default_power_n() -> i64 {
    200
}

/// Largest gap between `(e_1^a e_2^b e_3^c)^n` by repeated squaring and
/// the closed form on the coordinates it covers, and between the two `F_312` routes.
fn power_residuals<R: Real>(p: &PowerParams) -> (f64, f64) {
    let (a, b, c) = (R::from_exact(&p.alpha), R::from_exact(&p.beta), R::from_exact(&p.gamma));
    let g = Malcev3::horizontal(a.clone(), b.clone(), c.clone());
    let (mut coords, mut f312) = (0.0f64, 0.0f64);
    for n in 0..=p.n_max {
        let pw = crate::nilgroup::power3(&g, n);
        for (i, v) in crate::nilgroup::power3_closed_form(&a, &b, &c, n) {
            coords = coords.max((pw.t[i].clone() - v).to_f64().abs());
        }
        let d = crate::nilgroup::f312_orbit(&a, &b, &c, n) - crate::nilgroup::f312_closed_form(&a, &b, &c, n);
        f312 = f312.max(d.dist_int());
    }
    (coords, f312)
}

fn power_check(params: &str, cfg: &RunConfig) -> Result<Outcome> {
    use crate::seqfun::Precision::*;
    let p: PowerParams = parse(params)?;
    if p.n_max < 0 {
        return Err(Error::param("n_max", "must be non-negative"));
    }
    let prec = cfg.precision_or(Rational);
    let ((coords, f312), tol) = match prec {
        Rational => (power_residuals::<Exact>(&p), Exact::TOL),
        Float => (power_residuals::<f64>(&p), f64::TOL),
    };
    let passed = coords <= tol && f312 <= tol;
    let result = json!({
        "passed": passed,
        "max_residual": coords.max(f312),
        "coordinate_residual": coords,
        "f312_residual": f312,
        "n_checked": p.n_max + 1,
    });
    Ok(Outcome::new("nil power-check", to_value(&p)?, result).precision(prec).verdict(passed))
}

#[derive(Deserialize, serde::Serialize)]
struct WeylParams {
    coeffs: Vec<Exact>,
    n: usize,
}

#[derive(Deserialize, serde::Serialize)]
struct TestParams {
    #[serde(default)]
    alphas: Option<Vec<Exact>>,
    #[serde(default)]
    coords: Option<Vec<Vec<Exact>>>,
    n: usize,
    eps: f64,
    m_freq: i64,
}

#[derive(Deserialize, serde::Serialize)]
struct RelationParams {
    alphas: Vec<Exact>,
    #[serde(default = "default_max_coef")]
    max_coef: i64,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_max_coef() -> i64 {
    equidist::MAX_RELATION_COEF
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Deserialize, serde::Serialize)]
struct RatParams {
    alpha: Exact,
    q: i64,
}

fn equidist_cmd(c: &EquidistCmd, cfg: &RunConfig) -> Result<Outcome> {
    use crate::seqfun::Precision::*;
    Ok(match c {
        EquidistCmd::Weyl(a) => {
            let p: WeylParams = parse(&a.params)?;
            let s = equidist::weyl_sum(&p.coeffs, p.n)?;
            Outcome::new("equidist weyl", to_value(&p)?, json!({ "sum": s, "modulus": s.norm() }))
        }
        EquidistCmd::Test(a) => {
            let p: TestParams = parse(&a.params)?;
            let orbit = match (&p.alphas, &p.coords) {
                (Some(al), None) => TorusOrbit::linear(al, p.n),
                (None, Some(co)) => TorusOrbit { coords: co.clone(), n: p.n },
                _ => return Err(Error::param("params", "give exactly one of alphas or coords")),
            };
            let r = equidist::equidist_test(&orbit, p.eps, p.m_freq)?;
            Outcome::new("equidist test", to_value(&p)?, to_value(&r)?)
        }
        EquidistCmd::Relation(a) => {
            let p: RelationParams = parse(&a.params)?;
            let prec = cfg.precision_or(Rational);
            let r = match prec {
                Rational => equidist::integer_relation(&p.alphas, p.max_coef, p.tol)?,
                Float => {
                    let v: Vec<f64> = p.alphas.iter().map(f64::from_exact).collect();
                    equidist::integer_relation(&v, p.max_coef, p.tol)?
                }
            };
            let result = json!({ "found": r.is_some(), "relation": r });
            Outcome::new("equidist relation", to_value(&p)?, result).precision(prec)
        }
        EquidistCmd::Ratapprox(a) => {
            let p: RatParams = parse(&a.params)?;
            let r = equidist::rational_approx(&p.alpha, p.q)?;
            let mut result = to_value(&r)?;
            result["approx"] = json!(Exact::new(r.a, r.q));
            Outcome::new("equidist ratapprox", to_value(&p)?, result)
        }
    })
}

#[derive(Deserialize, serde::Serialize)]
struct BuildParams {
    s: Vec<f64>,
    rho: f64,
    n: usize,
}

#[derive(Deserialize, serde::Serialize)]
struct RegularParams {
    s: Vec<f64>,
    rho0: f64,
    n: usize,
    #[serde(default = "default_c_reg")]
    c_reg: f64,
    #[serde(default)]
    grid: Option<Vec<f64>>,
}

fn default_c_reg() -> f64 {
    bohr::DEFAULT_C_REG
}

#[derive(Deserialize, serde::Serialize)]
struct DecomposeParams {
    s: Vec<f64>,
    rho: f64,
    n: usize,
    #[serde(default = "default_eps")]
    eps: f64,
}

fn default_eps() -> f64 {
    0.1
}

fn bohr_cmd(c: &BohrCmd) -> Result<Outcome> {
    Ok(match c {
        BohrCmd::Build(a) => {
            let p: BuildParams = parse(&a.params)?;
            let b = bohr::build_bohr(&p.s, p.rho, p.n)?;
            let rows = b.members.iter().map(|m| vec![m.to_string()]).collect();
            let result = json!({ "size": b.len(), "members": b.members });
            Outcome::new("bohr build", to_value(&p)?, result).table(Table { header: vec!["member".into()], rows }, true)
        }
        BohrCmd::Regular(a) => {
            let p: RegularParams = parse(&a.params)?;
            let r = bohr::find_regular(&p.s, p.rho0, p.n, p.c_reg, p.grid.as_deref())?;
            let found = r.rho.is_some();
            let mut out = Outcome::new("bohr regular", to_value(&p)?, to_value(&r)?).verdict(found);
            if let Some(rho) = r.rho {
                let b = bohr::build_bohr(&p.s, rho, p.n)?;
                out.result["members"] = json!(b.members);
                let rows = b.members.iter().map(|m| vec![m.to_string()]).collect();
                out = out.table(Table { header: vec!["member".into()], rows }, false);
            }
            out
        }
        BohrCmd::Decompose(a) => {
            let p: DecomposeParams = parse(&a.params)?;
            let b = bohr::build_bohr(&p.s, p.rho, p.n)?;
            let d = bohr::cutoff_decomposition(&b, p.eps)?;
            let rows = (0..p.n)
                .map(|i| vec![(i + 1).to_string(), d.psi1[i].to_string(), d.psi2[i].to_string()])
                .collect();
            let passed = d.psi2_mass <= p.eps * p.n as f64;
            Outcome::new("bohr decompose", to_value(&p)?, to_value(&d)?)
                .verdict(passed)
                .table(Table { header: vec!["n".into(), "psi1".into(), "psi2".into()], rows }, false)
        }
    })
}

fn read_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    let mut rd = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows = vec![];
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let row: Vec<String> = rec.iter().map(str::to_string).collect();
        // a first row that is not numeric is a header
        if i == 0 && row.iter().any(|c| c.parse::<f64>().is_err()) {
            continue;
        }
        if row.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn int(s: &str) -> Result<i64> {
    s.parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn col(row: &[String], i: usize) -> Result<&str> {
    row.get(i).map(String::as_str).ok_or_else(|| Error::Parse(format!("row {row:?} has no column {}", i + 1)))
}

#[derive(Deserialize, serde::Serialize, Default)]
struct SumsetParams {
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    modulus: Option<i64>,
    /// Round the third column to the grid of mesh `eps` instead of reading `r`.
    #[serde(default)]
    eps: Option<f64>,
}

fn sumset_cmd(c: &SumsetCmd) -> Result<Outcome> {
    let (InputParams { input, params }, name) = match c {
        SumsetCmd::Lev(a) => (a, "lev"),
        SumsetCmd::Bilinear(a) => (a, "bilinear"),
        SumsetCmd::Energy(a) => (a, "energy"),
    };
    let mut p: SumsetParams = match params {
        Some(s) => parse(s)?,
        None => SumsetParams::default(),
    };
    let rows = read_rows(input)?;
    let command = format!("sumset {name}");
    match c {
        SumsetCmd::Lev(_) => {
            let xs = rows.iter().map(|r| int(col(r, 0)?)).collect::<Result<Vec<_>>>()?;
            let n = p.n.unwrap_or_else(|| xs.iter().copied().max().unwrap_or(1).max(1) as usize);
            let a = IntSet::new(n, xs)?;
            let k = p.k.unwrap_or_else(|| (2.0 / a.alpha()).ceil().max(1.0) as usize);
            (p.n, p.k) = (Some(n), Some(k));
            let r = additive::find_lev_progression(&a, k)?;
            let found = r.d.is_some();
            Ok(Outcome::new(&command, to_value(&p)?, to_value(&r)?).verdict(found || !r.guaranteed))
        }
        SumsetCmd::Bilinear(_) => {
            let pts = rows.iter().map(|r| Ok((int(col(r, 0)?)?, int(col(r, 1)?)?))).collect::<Result<Vec<_>>>()?;
            let n = p.n.unwrap_or_else(|| pts.iter().map(|&(x, y)| x.max(y)).max().unwrap_or(1).max(1) as usize);
            let a = PairSet::new(n, pts)?;
            let k = p.k.unwrap_or_else(|| (128.0 / a.alpha().powi(3)).ceil().max(1.0) as usize);
            (p.n, p.k) = (Some(n), Some(k));
            let r = additive::find_product_progression(&a, k)?;
            Ok(Outcome::new(&command, to_value(&p)?, to_value(&r)?))
        }
        SumsetCmd::Energy(_) => {
            let (g, pts): (i64, Vec<(usize, i64, i64)>) = match p.eps {
                Some(eps) => {
                    let vals = rows.iter().map(|r| col(r, 2)?.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))).collect::<Result<Vec<_>>>()?;
                    let (g, rs) = additive::round_to_grid(&vals, eps)?;
                    let pts = rows.iter().zip(rs).map(|(r, rr)| Ok((int(col(r, 0)?)? as usize, int(col(r, 1)?)?, rr))).collect::<Result<_>>()?;
                    (g, pts)
                }
                None => {
                    let g = p.modulus.ok_or_else(|| Error::param("modulus", "give modulus or eps"))?;
                    let pts = rows.iter().map(|r| Ok((int(col(r, 0)?)? as usize, int(col(r, 1)?)?, int(col(r, 2)?)?))).collect::<Result<_>>()?;
                    (g, pts)
                }
            };
            let mut sets: [GridGraph; 4] = std::array::from_fn(|_| GridGraph { modulus: g, points: vec![] });
            for (s, x, r) in pts {
                if !(1..=4).contains(&s) {
                    return Err(Error::param("set", format!("set index must be 1..4, got {s}")));
                }
                sets[s - 1].points.push((x, r.rem_euclid(g)));
            }
            p.modulus = Some(g);
            let e = additive::additive_energy([&sets[0], &sets[1], &sets[2], &sets[3]])?;
            let sizes: Vec<usize> = sets.iter().map(|s| s.points.len()).collect();
            Ok(Outcome::new(&command, to_value(&p)?, json!({ "energy": e, "modulus": g, "sizes": sizes })))
        }
    }
}

fn primes_cmd(c: &PrimesCmd) -> Result<Outcome> {
    Ok(match c {
        PrimesCmd::Gamma { pmax } => {
            let g = primes::hl_gamma(*pmax)?;
            Outcome::new("primes gamma", json!({ "pmax": pmax }), to_value(&g)?)
        }
        PrimesCmd::CountAp { n } => {
            let count = primes::count_prime_5aps(*n)?;
            Outcome::new("primes count-ap", json!({ "n": n }), json!({ "n": n, "count": count }))
        }
        PrimesCmd::Compare { n } => {
            let r = primes::compare_asymptotic(*n)?;
            Outcome::new("primes compare", json!({ "n": n }), to_value(&r)?)
        }
    })
}

fn verify_cmd(c: &VerifyCmd, cfg: &RunConfig) -> Result<Outcome> {
    let (r, name) = match c {
        VerifyCmd::Necessity(a) => (verify::check_necessity(&parse(&a.params)?, cfg.seed)?, "necessity"),
        VerifyCmd::L1(a) => (verify::check_l1_approx(&parse(&a.params)?, cfg.seed)?, "l1"),
        VerifyCmd::Pipeline(a) => (verify::run_gowers_pipeline(&parse(&a.params)?, cfg.seed)?, "pipeline"),
    };
    let passed = r.passed;
    Ok(Outcome::new(&format!("verify {name}"), r.params.clone(), to_value(&r)?).verdict(passed))
}
