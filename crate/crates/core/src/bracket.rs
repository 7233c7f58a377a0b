//! Bracket polynomials: expression trees with floor and fractional part,
//! the bracket identities with their explicit lower-order corrections, and
//! the trilinear form `T` with its symmetrisation.
//!
//! With `X = alpha n`, `Y = beta n` the workhorse is
//! `X floor(Y) = XY - {X}{Y} - floor(X) Y + floor(X) floor(Y)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::real::{Exact, Real};

#[derive(Clone, Debug, PartialEq)]
pub enum BracketExpr {
    Const(Exact),
    /// Variable by index: 0 = `n` (alias `x`), 1 = `y`, 2 = `z`.
    Var(usize),
    Add(Vec<BracketExpr>),
    Mul(Vec<BracketExpr>),
    Floor(Box<BracketExpr>),
    Frac(Box<BracketExpr>),
    Scale(Exact, Box<BracketExpr>),
}

const VAR_NAMES: [&str; 3] = ["n", "y", "z"];

impl BracketExpr {
    pub fn constant(c: Exact) -> Self {
        BracketExpr::Const(c)
    }

    pub fn n() -> Self {
        BracketExpr::Var(0)
    }

    pub fn floor(e: BracketExpr) -> Self {
        BracketExpr::Floor(Box::new(e))
    }

    pub fn frac(e: BracketExpr) -> Self {
        BracketExpr::Frac(Box::new(e))
    }

    pub fn num_vars(&self) -> usize {
        match self {
            BracketExpr::Const(_) => 0,
            BracketExpr::Var(i) => i + 1,
            BracketExpr::Add(xs) | BracketExpr::Mul(xs) => xs.iter().map(Self::num_vars).max().unwrap_or(0),
            BracketExpr::Floor(x) | BracketExpr::Frac(x) | BracketExpr::Scale(_, x) => x.num_vars(),
        }
    }

    /// Real value at the given variable assignment. Missing variables are an
    /// error caught by `eval_checked`; here they read as zero.
    pub fn eval<R: Real>(&self, vars: &[R]) -> R {
        match self {
            BracketExpr::Const(c) => R::from_exact(c),
            BracketExpr::Var(i) => vars.get(*i).cloned().unwrap_or_else(R::zero),
            BracketExpr::Add(xs) => xs.iter().fold(R::zero(), |a, x| a + x.eval(vars)),
            BracketExpr::Mul(xs) => xs.iter().fold(R::one(), |a, x| a * x.eval(vars)),
            BracketExpr::Floor(x) => x.eval(vars).floor(),
            BracketExpr::Frac(x) => x.eval(vars).frac(),
            BracketExpr::Scale(c, x) => R::from_exact(c) * x.eval(vars),
        }
    }

    pub fn eval_checked<R: Real>(&self, vars: &[R]) -> Result<R> {
        if self.num_vars() > vars.len() {
            return Err(Error::param(
                "vars",
                format!("expression uses {} variables, {} given", self.num_vars(), vars.len()),
            ));
        }
        Ok(self.eval(vars))
    }

    /// Value at `n` reduced mod 1.
    pub fn eval_mod1<R: Real>(&self, n: i64) -> R {
        self.eval(&[R::from_i64(n)]).frac()
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[BracketExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            BracketExpr::Const(c) => write!(f, "({c})"),
            BracketExpr::Var(i) => write!(f, "{}", VAR_NAMES[*i]),
            BracketExpr::Add(xs) => join(f, xs, " + "),
            BracketExpr::Mul(xs) => join(f, xs, "*"),
            BracketExpr::Floor(x) => write!(f, "floor({x})"),
            BracketExpr::Frac(x) => write!(f, "frac({x})"),
            BracketExpr::Scale(c, x) => write!(f, "({c})*{x}"),
        }
    }
}

/// Grammar: `+ - * /`, parentheses, `floor(..)`, `frac(..)`, `{..}` for the
/// fractional part, variables `n`/`x`, `y`, `z`, and decimal or integer
/// literals. Division is allowed only by constant subexpressions.
impl FromStr for BracketExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<BracketExpr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                let t = self.term()?;
                terms.push(BracketExpr::Scale(Exact::from_integer(-1), Box::new(t)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { BracketExpr::Add(terms) })
    }

    fn term(&mut self) -> Result<BracketExpr> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat(b'*') {
                factors.push(self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                let c = const_value(&d).ok_or_else(|| self.err("division by a non-constant"))?;
                if Real::is_zero(&c) {
                    return Err(self.err("division by zero"));
                }
                factors.push(BracketExpr::Const(c.recip()));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { fold_consts(factors) })
    }

    fn unary(&mut self) -> Result<BracketExpr> {
        if self.eat(b'-') {
            let x = self.unary()?;
            return Ok(match x {
                BracketExpr::Const(c) => BracketExpr::Const(-c),
                x => BracketExpr::Scale(Exact::from_integer(-1), Box::new(x)),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BracketExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'{') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b'}')?;
                Ok(BracketExpr::frac(e))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.') {
                    self.pos += 1;
                }
                if self.pos < self.s.len() && (self.s[self.pos] == b'e' || self.s[self.pos] == b'E') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
                        self.pos += 1;
                    }
                    let digits = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if digits == self.pos {
                        self.pos = save;
                    }
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Ok(BracketExpr::Const(lit.parse()?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match word {
                    "n" | "x" => Ok(BracketExpr::Var(0)),
                    "y" => Ok(BracketExpr::Var(1)),
                    "z" => Ok(BracketExpr::Var(2)),
                    "floor" | "frac" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(if word == "floor" { BracketExpr::floor(e) } else { BracketExpr::frac(e) })
                    }
                    _ => Err(self.err(&format!("unknown identifier {word:?}"))),
                }
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

fn const_value(e: &BracketExpr) -> Option<Exact> {
    if e.num_vars() == 0 && !contains_var(e) {
        Some(e.eval::<Exact>(&[]))
    } else {
        None
    }
}

fn contains_var(e: &BracketExpr) -> bool {
    match e {
        BracketExpr::Const(_) => false,
        BracketExpr::Var(_) => true,
        BracketExpr::Add(xs) | BracketExpr::Mul(xs) => xs.iter().any(contains_var),
        BracketExpr::Floor(x) | BracketExpr::Frac(x) | BracketExpr::Scale(_, x) => contains_var(x),
    }
}

fn fold_consts(factors: Vec<BracketExpr>) -> BracketExpr {
    let mut c = Exact::one();
    let mut rest = Vec::new();
    for f in factors {
        match f {
            BracketExpr::Const(x) => c = c * x,
            other => rest.push(other),
        }
    }
    match rest.len() {
        0 => BracketExpr::Const(c),
        1 if c == Exact::one() => rest.pop().unwrap(),
        1 => BracketExpr::Scale(c, Box::new(rest.pop().unwrap())),
        _ if c == Exact::one() => BracketExpr::Mul(rest),
        _ => BracketExpr::Scale(c, Box::new(BracketExpr::Mul(rest))),
    }
}

impl Serialize for BracketExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BracketExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `X floor(Y) - (XY - {X}{Y} - floor(X) Y + floor(X) floor(Y))`; zero for all reals.
pub fn check_key_identity<R: Real>(x: &R, y: &R) -> R {
    let fx = x.floor();
    let fy = y.floor();
    let lhs = x.clone() * fy.clone();
    let rhs = x.clone() * y.clone() - x.frac() * y.frac() - fx.clone() * y.clone() + fx * fy;
    lhs - rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaCase {
    /// The key identity at `X = alpha n`, `Y = beta n`; params `[alpha, beta]`.
    #[serde(rename = "key")]
    Key,
    /// `(a1 + a2) n floor(b n)`; params `[a1, a2, b]`.
    #[serde(rename = "i")]
    I,
    /// `a n floor((b1 + b2) n)`; params `[a, b1, b2]`.
    #[serde(rename = "ii")]
    Ii,
    /// `a n floor(b n)` against `-b n floor(a n)`; params `[a, b]`.
    #[serde(rename = "iii")]
    Iii,
    /// `c n floor(c n)`; params `[c]`.
    #[serde(rename = "iv")]
    Iv,
    /// `floor(a n) floor(b n) c n`; params `[a, b, c]`.
    #[serde(rename = "3brack")]
    ThreeBrack,
}

impl LemmaCase {
    pub fn arity(self) -> usize {
        match self {
            LemmaCase::Key | LemmaCase::Iii => 2,
            LemmaCase::I | LemmaCase::Ii | LemmaCase::ThreeBrack => 3,
            LemmaCase::Iv => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LemmaCase::Key => "key",
            LemmaCase::I => "i",
            LemmaCase::Ii => "ii",
            LemmaCase::Iii => "iii",
            LemmaCase::Iv => "iv",
            LemmaCase::ThreeBrack => "3brack",
        }
    }

    pub fn all() -> [LemmaCase; 6] {
        [LemmaCase::Key, LemmaCase::I, LemmaCase::Ii, LemmaCase::Iii, LemmaCase::Iv, LemmaCase::ThreeBrack]
    }
}

impl FromStr for LemmaCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaCase::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::param("case", format!("unknown case {s:?}")))
    }
}

/// A lower-order phase term, multiplied by an integer.
#[derive(Clone, Debug, PartialEq)]
pub enum Correction<R> {
    /// `coef * theta * n^2`
    Quadratic { coef: i64, theta: R },
    /// `coef * {a n}{b n}`
    FracProd { coef: i64, a: R, b: R },
    /// `coef * theta * n^3`
    Cubic { coef: i64, theta: R },
}

impl<R: Real> Correction<R> {
    pub fn value(&self, n: i64) -> R {
        let nn = R::from_i64(n);
        match self {
            Correction::Quadratic { coef, theta } => (theta.clone() * nn.clone() * nn).scale(*coef),
            Correction::FracProd { coef, a, b } => {
                ((a.clone() * nn.clone()).frac() * (b.clone() * nn).frac()).scale(*coef)
            }
            Correction::Cubic { coef, theta } => (theta.clone() * nn.clone() * nn.clone() * nn).scale(*coef),
        }
    }
}

impl<R: Real> fmt::Display for Correction<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Correction::Quadratic { coef, theta } => write!(f, "{coef} * ({theta}) n^2"),
            Correction::FracProd { coef, a, b } => write!(f, "{coef} * {{({a}) n}}{{({b}) n}}"),
            Correction::Cubic { coef, theta } => write!(f, "{coef} * ({theta}) n^3"),
        }
    }
}

fn fp<R: Real>(coef: i64, a: &R, b: &R) -> Correction<R> {
    Correction::FracProd { coef, a: a.clone(), b: b.clone() }
}

/// Corrections `c_k` with `lhs = rhs + sum c_k (mod 1)`.
pub fn lemma_corrections<R: Real>(case: LemmaCase, p: &[R]) -> Vec<Correction<R>> {
    match case {
        LemmaCase::Key | LemmaCase::I => vec![],
        LemmaCase::Ii => {
            let (a, b1, b2) = (&p[0], &p[1], &p[2]);
            vec![fp(1, a, b1), fp(1, a, b2), fp(-1, a, &(b1.clone() + b2.clone()))]
        }
        LemmaCase::Iii => {
            let (a, b) = (&p[0], &p[1]);
            vec![Correction::Quadratic { coef: 1, theta: a.clone() * b.clone() }, fp(-1, a, b)]
        }
        LemmaCase::Iv => {
            // c = 2c' + m with c' = {c}/2 in [0, 1/2); (iii) at c' then (ii) at c' + c'
            let c = &p[0];
            let cp = c.frac() * R::ratio(1, 2);
            let m = c.floor();
            let theta = R::from_i64(2) * cp.clone() * cp.clone() + m * c.clone();
            vec![Correction::Quadratic { coef: 1, theta }, fp(-2, &cp, &cp), fp(2, c, &cp), fp(-1, c, c)]
        }
        LemmaCase::ThreeBrack => {
            let abc = p[0].clone() * p[1].clone() * p[2].clone();
            vec![Correction::Cubic { coef: -1, theta: abc }]
        }
    }
}

/// `(lhs, rhs)` of the identity at `n`, before corrections.
pub fn lemma_sides<R: Real>(case: LemmaCase, p: &[R], n: i64) -> (R, R) {
    let nn = R::from_i64(n);
    let lin = |c: &R| c.clone() * nn.clone();
    match case {
        LemmaCase::Key => {
            let (x, y) = (lin(&p[0]), lin(&p[1]));
            let (fx, fy) = (x.floor(), y.floor());
            let rhs = x.clone() * y.clone() - x.frac() * y.frac() - fx.clone() * y + fx * fy.clone();
            (x * fy, rhs)
        }
        LemmaCase::I => {
            let fb = lin(&p[2]).floor();
            let lhs = (p[0].clone() + p[1].clone()) * nn.clone() * fb.clone();
            (lhs, lin(&p[0]) * fb.clone() + lin(&p[1]) * fb)
        }
        LemmaCase::Ii => {
            let x = lin(&p[0]);
            let lhs = x.clone() * lin(&(p[1].clone() + p[2].clone())).floor();
            (lhs, x.clone() * lin(&p[1]).floor() + x * lin(&p[2]).floor())
        }
        LemmaCase::Iii => {
            let (x, y) = (lin(&p[0]), lin(&p[1]));
            (x.clone() * y.floor(), -(y * x.floor()))
        }
        LemmaCase::Iv => {
            let x = lin(&p[0]);
            (x.clone() * x.floor(), R::zero())
        }
        LemmaCase::ThreeBrack => {
            // the displayed six-term expansion; the missing -ABC is the correction
            let (a, b, c) = (lin(&p[0]), lin(&p[1]), lin(&p[2]));
            let (fa, fb, fc) = (a.floor(), b.floor(), c.floor());
            let lhs = fa.clone() * fb.clone() * c.clone();
            let rhs = a.frac() * b.frac() * c.frac() - fa.clone() * b.clone() * fc.clone() - a.clone() * fb.clone() * fc.clone()
                + a.clone() * b.clone() * fc
                + a.clone() * c.clone() * fb
                + b * c * fa;
            (lhs, rhs)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaFailure {
    pub n: i64,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub case: String,
    pub params: Vec<String>,
    pub corrections: Vec<String>,
    pub n_min: i64,
    pub n_max: i64,
    pub n_checked: usize,
    /// `exact` for the key identity (residual must vanish), `mod1` otherwise.
    pub mode: String,
    pub passed: bool,
    pub worst_residual: f64,
    pub first_failure: Option<LemmaFailure>,
}

/// Checks the identity for every `n` in `ns`; stops at the first failure.
pub fn verify_bracket_lemma<R: Real>(case: LemmaCase, params: &[R], ns: RangeInclusive<i64>) -> Result<LemmaReport> {
    if params.len() != case.arity() {
        return Err(Error::param(
            "params",
            format!("case {} takes {} parameters, got {}", case.name(), case.arity(), params.len()),
        ));
    }
    let corr = lemma_corrections(case, params);
    let exact_mode = case == LemmaCase::Key;
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut failure = None;
    for n in ns.clone() {
        let (lhs, rhs) = lemma_sides(case, params, n);
        let residual = corr.iter().fold(lhs.clone() - rhs.clone(), |acc, c| acc - c.value(n));
        let d = if exact_mode { residual.to_f64().abs() } else { residual.dist_int() };
        checked += 1;
        worst = worst.max(d);
        if d > R::TOL {
            failure = Some(LemmaFailure {
                n,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                residual: residual.to_string(),
            });
            break;
        }
    }
    Ok(LemmaReport {
        case: case.name().to_string(),
        params: params.iter().map(|p| p.to_string()).collect(),
        corrections: corr.iter().map(|c| c.to_string()).collect(),
        n_min: *ns.start(),
        n_max: *ns.end(),
        n_checked: checked,
        mode: if exact_mode { "exact" } else { "mod1" }.to_string(),
        passed: failure.is_none(),
        worst_residual: worst,
        first_failure: failure,
    })
}

/// `T(x,y,z) = sum {a_j x} b_j y {c_j z} + sum a'_j {b'_j x} y z`, where `b_j`
/// stands for `beta_j / 3` and `a'_j` for `alpha'_j / 3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrilinearForm {
    /// `(alpha_j, beta_j / 3, gamma_j)`
    pub terms: Vec<[Exact; 3]>,
    /// `(alpha'_j / 3, beta'_j)`
    pub quad_terms: Vec<[Exact; 2]>,
    #[serde(default)]
    pub symmetrized: bool,
    /// `beta~_j`, set by symmetrisation.
    #[serde(default)]
    pub beta_tilde: Vec<Exact>,
}

impl TrilinearForm {
    pub fn new(terms: Vec<[Exact; 3]>, quad_terms: Vec<[Exact; 2]>) -> Self {
        TrilinearForm { terms, quad_terms, symmetrized: false, beta_tilde: vec![] }
    }

    pub fn eval<R: Real>(&self, x: i64, y: i64, z: i64) -> R {
        let (x, y, z) = (R::from_i64(x), R::from_i64(y), R::from_i64(z));
        let mut acc = R::zero();
        for (j, [a, b, c]) in self.terms.iter().enumerate() {
            let ax = (R::from_exact(a) * x.clone()).frac();
            if self.symmetrized {
                let bt = R::from_exact(&self.beta_tilde[j]);
                let cz = (R::from_exact(c) * z.clone()).frac();
                let cy = (R::from_exact(c) * y.clone()).frac();
                acc = acc + ax.clone() * bt.clone() * y.clone() * cz + ax * bt * z.clone() * cy;
            } else {
                let cz = (R::from_exact(c) * z.clone()).frac();
                acc = acc + ax * R::from_exact(b) * y.clone() * cz;
            }
        }
        for [a3, bp] in &self.quad_terms {
            let bx = (R::from_exact(bp) * x.clone()).frac();
            acc = acc + R::from_exact(a3) * bx * y.clone() * z.clone();
        }
        acc
    }
}

/// `T~` with `beta~_j = (beta_j/3) / 2`, the exact half. This is the choice
/// for which `T~(h,n,n) = T(h,n,n)` holds as real numbers; it lies in
/// `[0, 1/2)` when `beta_j / 3` is in `[0, 1)`.
pub fn symmetrize_trilinear(t: &TrilinearForm) -> TrilinearForm {
    if t.symmetrized {
        return t.clone();
    }
    let half = Exact::new(1, 2);
    TrilinearForm {
        terms: t.terms.clone(),
        quad_terms: t.quad_terms.clone(),
        symmetrized: true,
        beta_tilde: t.terms.iter().map(|[_, b, _]| b.clone() * half.clone()).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrilinearReport {
    pub form: TrilinearForm,
    pub symmetrized: TrilinearForm,
    pub n_max: i64,
    pub points_checked: usize,
    pub symmetric: bool,
    pub diagonal: bool,
    pub passed: bool,
    pub worst_residual: f64,
    /// First `(x, y, z)` where an identity failed.
    pub first_failure: Option<[i64; 3]>,
}

/// Checks `T~(x,y,z) = T~(x,z,y)` and `T~(h,n,n) = T(h,n,n)` on the
/// `n_max x n_max` grid. The symmetry check pairs each `(y, z)` with
/// `x = 1 + (31 y + 17 z) mod n_max`, so every `x` is visited.
pub fn verify_trilinear<R: Real>(t: &TrilinearForm, n_max: i64) -> Result<TrilinearReport> {
    if n_max < 1 {
        return Err(Error::param("n_max", "must be positive"));
    }
    let st = symmetrize_trilinear(t);
    let (mut worst, mut checked) = (0.0f64, 0usize);
    let (mut symmetric, mut diagonal, mut first) = (true, true, None);
    for a in 1..=n_max {
        for b in 1..=n_max {
            let x = 1 + (31 * a + 17 * b) % n_max;
            let d1 = (st.eval::<R>(x, a, b) - st.eval::<R>(x, b, a)).to_f64().abs();
            let d2 = (st.eval::<R>(a, b, b) - t.eval::<R>(a, b, b)).to_f64().abs();
            checked += 1;
            worst = worst.max(d1).max(d2);
            if d1 > R::TOL && symmetric {
                symmetric = false;
                first.get_or_insert([x, a, b]);
            }
            if d2 > R::TOL && diagonal {
                diagonal = false;
                first.get_or_insert([a, b, b]);
            }
        }
    }
    Ok(TrilinearReport {
        form: t.clone(),
        symmetrized: st,
        n_max,
        points_checked: checked,
        symmetric,
        diagonal,
        passed: symmetric && diagonal,
        worst_residual: worst,
        first_failure: first,
    })
}
