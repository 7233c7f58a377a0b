//! Symbolic derivation of the free 3-step multiplication law.
//!
//! Works in the free 3-step Lie algebra on `X1, X2, X3` with coefficients in
//! `Q[t_1..t_14, u_1..u_14]`. Group elements are written in second-kind
//! coordinates over the basis `e_1, e_2, e_3, e_21, e_211, ...` where
//! `e_ij = [e_i, e_j]` and `e_ijk = [e_ij, e_k]` are group commutators
//! (`[a, b] = a^-1 b^-1 a b`). The Baker-Campbell-Hausdorff series is exact at
//! step 3, so the collected law is exact.
//!
//! The output is frozen in `free3_law.rs`; `emit_rust_source` regenerates it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::free3::{BASIS_NAMES, DIM};

const NV: usize = 2 * DIM;

type Mono = [u8; NV];

/// Multivariate polynomial over Q. Variables `0..14` are `t`, `14..28` are `u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; NV], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; NV];
        m[i] = 1;
        let mut p = Poly::zero();
        p.add_term(m, BigRational::one());
        p
    }

    pub fn t(i: usize) -> Self {
        Poly::var(i)
    }

    pub fn u(i: usize) -> Self {
        Poly::var(DIM + i)
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut r = Poly::zero();
        if c.is_zero() {
            return r;
        }
        for (m, x) in &self.terms {
            r.terms.insert(*m, x * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = [0u8; NV];
                for i in 0..NV {
                    m[i] = m1[i] + m2[i];
                }
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    /// Evaluates at `t`, `u` using exact rationals.
    pub fn eval(&self, t: &[BigRational; DIM], u: &[BigRational; DIM]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for (i, &e) in m.iter().enumerate() {
                let v = if i < DIM { &t[i] } else { &u[i - DIM] };
                for _ in 0..e {
                    x *= v;
                }
            }
            acc += x;
        }
        acc
    }
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

/// Element of the free 3-step Lie algebra, coefficients on the basis
/// `X1 X2 X3 Y21 Z211 Y31 Z311 Y32 Z322 Z212 Z312 Z213 Z313 Z323`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElem(pub Vec<Poly>);

const WEIGHT: [u8; DIM] = [1, 1, 1, 2, 3, 2, 3, 2, 3, 3, 3, 3, 3, 3];

fn y_index(i: usize, j: usize) -> usize {
    // i > j, 1-based generators
    match (i, j) {
        (2, 1) => 3,
        (3, 1) => 5,
        (3, 2) => 7,
        _ => unreachable!(),
    }
}

/// `[Y_ij, X_k]` in the basis; `Z_321 = Z_312 - Z_213` by Jacobi.
fn z_of(y: usize, k: usize) -> Vec<(i64, usize)> {
    match (y, k) {
        (3, 1) => vec![(1, 4)],
        (3, 2) => vec![(1, 9)],
        (3, 3) => vec![(1, 11)],
        (5, 1) => vec![(1, 6)],
        (5, 2) => vec![(1, 10)],
        (5, 3) => vec![(1, 12)],
        (7, 1) => vec![(1, 10), (-1, 11)],
        (7, 2) => vec![(1, 8)],
        (7, 3) => vec![(1, 13)],
        _ => unreachable!(),
    }
}

/// Bracket of two basis elements as an integer combination of basis elements.
fn basis_bracket(a: usize, b: usize) -> Vec<(i64, usize)> {
    if WEIGHT[a] + WEIGHT[b] > 3 || a == b {
        return vec![];
    }
    match (WEIGHT[a], WEIGHT[b]) {
        (1, 1) => {
            let (i, j) = (a + 1, b + 1);
            if i > j {
                vec![(1, y_index(i, j))]
            } else {
                vec![(-1, y_index(j, i))]
            }
        }
        (2, 1) => z_of(a, b + 1),
        (1, 2) => z_of(b, a + 1).into_iter().map(|(c, i)| (-c, i)).collect(),
        _ => vec![],
    }
}

impl LieElem {
    pub fn zero() -> Self {
        LieElem(vec![Poly::zero(); DIM])
    }

    pub fn basis(i: usize, coeff: Poly) -> Self {
        let mut e = LieElem::zero();
        e.0[i] = coeff;
        e
    }

    pub fn add(&self, o: &LieElem) -> LieElem {
        LieElem(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> LieElem {
        LieElem(self.0.iter().map(|a| a.scale(c)).collect())
    }

    pub fn neg(&self) -> LieElem {
        self.scale(&q(-1, 1))
    }

    pub fn bracket(&self, o: &LieElem) -> LieElem {
        let mut r = LieElem::zero();
        for a in 0..DIM {
            if self.0[a].is_zero() {
                continue;
            }
            for b in 0..DIM {
                if o.0[b].is_zero() {
                    continue;
                }
                let br = basis_bracket(a, b);
                if br.is_empty() {
                    continue;
                }
                let prod = self.0[a].mul(&o.0[b]);
                for (c, idx) in br {
                    r.0[idx] = r.0[idx].add(&prod.scale(&q(c, 1)));
                }
            }
        }
        r
    }
}

/// `log(exp(a) exp(b))`, exact in a 3-step algebra.
pub fn bch(a: &LieElem, b: &LieElem) -> LieElem {
    let ab = a.bracket(b);
    a.add(b)
        .add(&ab.scale(&q(1, 2)))
        .add(&a.bracket(&ab).scale(&q(1, 12)))
        .add(&b.bracket(&ab).scale(&q(-1, 12)))
}

fn generator(i: usize, c: Poly) -> LieElem {
    LieElem::basis(i, c)
}

/// Logarithms of the group basis elements `e_1, ..., e_323`.
pub fn basis_logs() -> Vec<LieElem> {
    let one = || Poly::constant(BigRational::one());
    let x: Vec<LieElem> = (0..3).map(|i| generator(i, one())).collect();
    let comm = |a: &LieElem, b: &LieElem| bch(&bch(&bch(&a.neg(), &b.neg()), a), b);
    let mut logs = vec![LieElem::zero(); DIM];
    logs[..3].clone_from_slice(&x);
    for (i, j) in [(2, 1), (3, 1), (3, 2)] {
        logs[y_index(i, j)] = comm(&x[i - 1], &x[j - 1]);
    }
    for (idx, name) in BASIS_NAMES.iter().enumerate() {
        if name.len() == 3 {
            let d: Vec<usize> = name.bytes().map(|c| (c - b'0') as usize).collect();
            let inner = &logs[y_index(d[0], d[1])].clone();
            logs[idx] = comm(inner, &x[d[2] - 1]);
        }
    }
    logs
}

/// `log(e_1^{v_1} e_2^{v_2} ... e_323^{v_323})` where `v_i` is variable `offset + i`.
fn log_of_coords(logs: &[LieElem], offset: usize) -> LieElem {
    let mut acc = LieElem::zero();
    for (i, l) in logs.iter().enumerate() {
        let term = l.scale(&BigRational::one());
        let term = LieElem(term.0.iter().map(|p| p.mul(&Poly::var(offset + i))).collect());
        acc = bch(&acc, &term);
    }
    acc
}

/// Second-kind coordinates of `exp(w)`.
fn coords_of_log(logs: &[LieElem], w: &LieElem) -> Vec<Poly> {
    let mut w = w.clone();
    let mut s = vec![Poly::zero(); DIM];
    for i in 0..3 {
        s[i] = w.0[i].clone();
        let peel = LieElem::basis(i, s[i].scale(&q(-1, 1)));
        w = bch(&peel, &w);
    }
    // what is left has weight >= 2 and is abelian
    for i in (3..DIM).filter(|&i| WEIGHT[i] == 2) {
        s[i] = w.0[i].clone();
        let part = LieElem(logs[i].0.iter().map(|p| p.mul(&s[i])).collect());
        w = w.add(&part.neg());
    }
    for i in (3..DIM).filter(|&i| WEIGHT[i] == 3) {
        s[i] = w.0[i].clone();
    }
    s
}

/// The law `s = t * u` as 14 polynomials in `t`, `u`.
pub fn derive_free3_law() -> Vec<Poly> {
    let logs = basis_logs();
    let lt = log_of_coords(&logs, 0);
    let lu = log_of_coords(&logs, DIM);
    coords_of_log(&logs, &bch(&lt, &lu))
}

fn var_name(i: usize) -> String {
    if i < DIM {
        format!("t[{i}]")
    } else {
        format!("u[{}]", i - DIM)
    }
}

/// Rust source for the frozen law, as stored in `free3_law.rs`.
pub fn emit_rust_source(law: &[Poly]) -> String {
    let mut out = String::new();
    out.push_str("// Generated by `cargo run --example derive_free3_law`. Do not edit.\n");
    out.push_str("// Coordinate order: ");
    out.push_str(&BASIS_NAMES.join(" "));
    out.push_str("\n\nuse crate::real::Real;\n\n");
    out.push_str("fn p<R: Real>(xs: &[&R]) -> R {\n");
    out.push_str("    xs.iter().fold(R::one(), |a, &x| a * x.clone())\n}\n\n");
    out.push_str("pub(crate) fn mul_law<R: Real>(t: &[R; 14], u: &[R; 14]) -> [R; 14] {\n    [\n");
    for (k, poly) in law.iter().enumerate() {
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat(var_name(i)).take(e as usize))
                .collect();
            let monomial = if vars.len() == 1 {
                format!("{}.clone()", vars[0])
            } else {
                let refs: Vec<String> = vars.iter().map(|v| format!("&{v}")).collect();
                format!("p(&[{}])", refs.join(", "))
            };
            let term = if c.is_one() {
                monomial
            } else {
                let (n, d) = (c.numer().to_i64().unwrap(), c.denom().to_i64().unwrap());
                if d == 1 {
                    format!("R::from_i64({n}) * {monomial}")
                } else {
                    format!("R::ratio({n}, {d}) * {monomial}")
                }
            };
            terms.push(term);
        }
        let body = if terms.is_empty() { "R::zero()".to_string() } else { terms.join("\n            + ") };
        let _ = writeln!(out, "        // s_{}", BASIS_NAMES[k]);
        let _ = writeln!(out, "        {body},");
    }
    out.push_str("    ]\n}\n");
    out
}
