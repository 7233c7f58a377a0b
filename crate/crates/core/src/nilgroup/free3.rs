//! Free 3-step nilpotent group on three generators.

use serde::{Deserialize, Serialize};

use super::free3_law::mul_law;
use crate::error::{Error, Result};
use crate::real::{Exact, Real};

pub const DIM: usize = 14;

pub const BASIS_NAMES: [&str; DIM] =
    ["1", "2", "3", "21", "211", "31", "311", "32", "322", "212", "312", "213", "313", "323"];

const WEIGHT: [u8; DIM] = [1, 1, 1, 2, 3, 2, 3, 2, 3, 3, 3, 3, 3, 3];

pub const T1: usize = 0;
pub const T2: usize = 1;
pub const T3: usize = 2;
pub const T21: usize = 3;
pub const T31: usize = 5;
pub const T32: usize = 7;
pub const T312: usize = 10;

pub fn coord_index(name: &str) -> Option<usize> {
    let name = name.trim_start_matches('t').trim_start_matches('_');
    BASIS_NAMES.iter().position(|&b| b == name)
}

/// Point `e_1^{t_1} e_2^{t_2} ... e_323^{t_323}` of the group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Serialize", deserialize = "R: Deserialize<'de>"))]
pub struct Malcev3<R> {
    pub t: [R; DIM],
}

impl<R: Real> Malcev3<R> {
    pub fn identity() -> Self {
        Malcev3 { t: std::array::from_fn(|_| R::zero()) }
    }

    pub fn new(t: [R; DIM]) -> Self {
        Malcev3 { t }
    }

    /// `e_idx^x`.
    pub fn basis_power(idx: usize, x: R) -> Self {
        let mut g = Self::identity();
        g.t[idx] = x;
        g
    }

    /// `e_1^a e_2^b e_3^c`.
    pub fn horizontal(a: R, b: R, c: R) -> Self {
        let mut g = Self::identity();
        g.t[T1] = a;
        g.t[T2] = b;
        g.t[T3] = c;
        g
    }

    pub fn mul(&self, o: &Self) -> Self {
        Malcev3 { t: mul_law(&self.t, &o.t) }
    }

    /// Solved weight by weight: `s_k` is `t_k + x_k` plus terms in
    /// lower-weight coordinates of `x`.
    pub fn inverse(&self) -> Self {
        let mut x = Self::identity();
        for w in 1..=3 {
            let s = self.mul(&x);
            for k in (0..DIM).filter(|&k| WEIGHT[k] == w) {
                x.t[k] = x.t[k].clone() - s.t[k].clone();
            }
        }
        x
    }

    pub fn pow(&self, n: i64) -> Self {
        let (mut base, mut e) = if n < 0 { (self.inverse(), n.unsigned_abs()) } else { (self.clone(), n as u64) };
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Right-multiplies by lattice generators in basis order until every
    /// coordinate lies in `[0, 1)`. Returns the reduced point and the
    /// lattice element `gamma` with `self * gamma = reduced`.
    pub fn reduce(&self) -> (Self, Self) {
        let mut s = self.clone();
        let mut gamma = Self::identity();
        for k in 0..DIM {
            let m = -s.t[k].floor();
            if !m.is_zero() {
                let step = Self::basis_power(k, m);
                s = s.mul(&step);
                gamma = gamma.mul(&step);
            }
        }
        (s, gamma)
    }

    pub fn is_lattice(&self) -> bool {
        self.t.iter().all(Real::is_integer)
    }
}

pub fn mul3<R: Real>(a: &Malcev3<R>, b: &Malcev3<R>) -> Malcev3<R> {
    a.mul(b)
}

pub fn inverse3<R: Real>(a: &Malcev3<R>) -> Malcev3<R> {
    a.inverse()
}

pub fn power3<R: Real>(g: &Malcev3<R>, n: i64) -> Malcev3<R> {
    g.pow(n)
}

pub fn reduce3<R: Real>(g: &Malcev3<R>) -> (Malcev3<R>, Malcev3<R>) {
    g.reduce()
}

fn binom<R: Real>(n: i64, k: u32) -> R {
    let mut num = R::one();
    let mut den = 1i64;
    for j in 0..k as i64 {
        num = num * R::from_i64(n - j);
        den *= j + 1;
    }
    num * R::ratio(1, den)
}

/// Closed-form coordinates of `(e_1^a e_2^b e_3^c)^n` on `1, 2, 3, 21, 31, 32, 312`.
pub fn power3_closed_form<R: Real>(a: &R, b: &R, c: &R, n: i64) -> Vec<(usize, R)> {
    let nn = R::from_i64(n);
    let c2: R = binom(n, 2);
    let c3: R = binom(n, 3);
    vec![
        (T1, nn.clone() * a.clone()),
        (T2, nn.clone() * b.clone()),
        (T3, nn * c.clone()),
        (T21, c2.clone() * a.clone() * b.clone()),
        (T31, c2.clone() * a.clone() * c.clone()),
        (T32, c2.clone() * b.clone() * c.clone()),
        (T312, a.clone() * b.clone() * c.clone() * (R::from_i64(2) * c3 + c2)),
    ]
}

/// `F_312(g^n Gamma)` by the group path: power, reduce, read `s_312`.
pub fn f312_orbit<R: Real>(a: &R, b: &R, c: &R, n: i64) -> R {
    let g = Malcev3::horizontal(a.clone(), b.clone(), c.clone());
    g.pow(n).reduce().0.t[T312].clone()
}

/// Closed form of `F_312(g^n Gamma)` mod 1.
pub fn f312_closed_form<R: Real>(a: &R, b: &R, c: &R, n: i64) -> R {
    let nn = R::from_i64(n);
    let c2: R = binom(n, 2);
    let c3: R = binom(n, 3);
    let fa = (a.clone() * nn.clone()).floor();
    let fb = (b.clone() * nn.clone()).floor();
    let v = a.clone() * b.clone() * c.clone() * (R::from_i64(2) * c3 + c2.clone())
        - c2.clone() * b.clone() * c.clone() * fa.clone()
        - c2 * a.clone() * c.clone() * fb.clone()
        + nn * c.clone() * fa * fb;
    v.frac()
}

/// `F_312(g(n) Gamma)` for the non-orbit sequence `g(n) = e_1^{an} e_2^{bn} e_3^{cn}`.
pub fn f312_linear<R: Real>(a: &R, b: &R, c: &R, n: i64) -> R {
    let nn = R::from_i64(n);
    let g = Malcev3::horizontal(a.clone() * nn.clone(), b.clone() * nn.clone(), c.clone() * nn);
    g.reduce().0.t[T312].clone()
}

/// `{floor(an) floor(bn) cn}`, which `f312_linear` reproduces exactly.
pub fn triple_bracket<R: Real>(a: &R, b: &R, c: &R, n: i64) -> R {
    let nn = R::from_i64(n);
    let fa = (a.clone() * nn.clone()).floor();
    let fb = (b.clone() * nn.clone()).floor();
    (fa * fb * c.clone() * nn).frac()
}

pub(crate) fn parse_coords(v: &[Exact]) -> Result<Malcev3<Exact>> {
    if v.len() != DIM {
        return Err(Error::param("g", format!("free3 elements have {DIM} coordinates, got {}", v.len())));
    }
    Ok(Malcev3 { t: std::array::from_fn(|i| v[i].clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: i64, q: i64) -> Exact {
        Exact::new(p, q)
    }

    fn comm(a: &Malcev3<Exact>, b: &Malcev3<Exact>) -> Malcev3<Exact> {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    #[test]
    fn commutators_hit_basis_elements() {
        let g = |i| Malcev3::basis_power(i, Exact::from_integer(1));
        let c21 = comm(&g(T2), &g(T1));
        assert_eq!(c21, g(T21));
        assert_eq!(comm(&g(T31), &g(T2)), g(T312));
        assert_eq!(comm(&g(T21), &g(T1)), g(coord_index("211").unwrap()));
    }

    #[test]
    fn jacobi_relation_holds() {
        let g = |i| Malcev3::basis_power(i, Exact::from_integer(1));
        let (e1, e2, e3) = (g(T1), g(T2), g(T3));
        let a = comm(&comm(&e3, &e1), &e2);
        let b = comm(&comm(&e1, &e2), &e3);
        let c = comm(&comm(&e2, &e3), &e1);
        assert_eq!(a.mul(&b).mul(&c), Malcev3::identity());
    }

    #[test]
    fn inverse_and_identity() {
        let g = Malcev3::new(std::array::from_fn(|i| e(i as i64 * 3 - 7, 5 + i as i64)));
        assert_eq!(g.mul(&g.inverse()), Malcev3::identity());
        assert_eq!(g.inverse().mul(&g), Malcev3::identity());
        assert_eq!(Malcev3::identity().mul(&g), g);
        assert_eq!(g.pow(-3).mul(&g.pow(3)), Malcev3::identity());
        assert_eq!(g.pow(0), Malcev3::identity());
        assert_eq!(g.pow(1), g);
    }

    #[test]
    fn lattice_is_closed() {
        let a = Malcev3::new(std::array::from_fn(|i| Exact::from_integer(i as i64 - 5)));
        let b = Malcev3::new(std::array::from_fn(|i| Exact::from_integer(3 - 2 * i as i64)));
        assert!(a.mul(&b).is_lattice());
        assert!(a.inverse().is_lattice());
    }

    #[test]
    fn reduction_lands_in_unit_cube() {
        let g = Malcev3::new(std::array::from_fn(|i| e(17 * i as i64 - 40, 7)));
        let (r, gamma) = g.reduce();
        assert!(gamma.is_lattice());
        assert_eq!(g.mul(&gamma), r);
        for x in &r.t {
            assert!(*x >= Exact::zero() && *x < Exact::one());
        }
        assert_eq!(r.reduce().0, r);
    }

    #[test]
    fn reduced_s312_matches_coordinate_formula() {
        let g = Malcev3::new(std::array::from_fn(|i| e(31 * i as i64 - 90, 11)));
        let t = &g.t;
        let f1 = t[T1].floor();
        let f2 = t[T2].floor();
        let want = (t[T312].clone() - t[T32].clone() * f1.clone() - t[T31].clone() * f2.clone()
            + t[T3].clone() * f1 * f2)
            .frac();
        assert_eq!(g.reduce().0.t[T312], want);
    }

    #[test]
    fn power_closed_form_small() {
        let (a, b, c) = (e(1, 5), e(1, 3), e(1, 7));
        let g = Malcev3::horizontal(a.clone(), b.clone(), c.clone());
        for n in 0..40 {
            let p = g.pow(n);
            for (idx, v) in power3_closed_form(&a, &b, &c, n) {
                assert_eq!(p.t[idx], v, "n={n} coord {}", BASIS_NAMES[idx]);
            }
        }
    }

    #[test]
    fn f312_sign_with_unit_beta_gamma() {
        // beta = gamma = 1 and alpha -> 6 alpha leaves -alpha n^3 plus a quadratic
        let alpha = e(2, 13);
        let six = alpha.clone() * Exact::from_integer(6);
        let one = Exact::one();
        let x = |n: i64| {
            f312_orbit(&six, &one, &one, n) + alpha.clone() * Exact::from_integer(n * n * n)
        };
        for n in 0..50 {
            let d3 = x(n + 3) - x(n + 2).scale(3) + x(n + 1).scale(3) - x(n);
            assert!(d3.is_integer(), "third difference at n={n} is {d3}");
        }
    }

    #[test]
    fn float_mode_tracks_exact() {
        let g = Malcev3::<f64>::horizontal(0.2, 1.0 / 3.0, 1.0 / 7.0);
        let p = g.pow(10);
        let ge = Malcev3::horizontal(e(1, 5), e(1, 3), e(1, 7)).pow(10);
        for i in 0..DIM {
            assert!((p.t[i] - ge.t[i].to_f64()).abs() < 1e-9);
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn elem() -> impl Strategy<Value = Malcev3<Exact>> {
        proptest::array::uniform14((-200i64..200, 1i64..30)).prop_map(|v| Malcev3::new(v.map(|(p, q)| Exact::new(p, q))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn group_axioms(g in elem(), h in elem(), a in -5i64..5, b in -5i64..5) {
            prop_assert_eq!(g.mul(&g.inverse()), Malcev3::identity());
            prop_assert_eq!(g.pow(a).mul(&g.pow(b)), g.pow(a + b));
            prop_assert_eq!(g.mul(&h).inverse(), h.inverse().mul(&g.inverse()));
        }

        #[test]
        fn reduction_lands_in_fundamental_domain(g in elem()) {
            let (r, gamma) = g.reduce();
            prop_assert!(gamma.is_lattice());
            prop_assert_eq!(g.mul(&gamma), r.clone());
            prop_assert!(r.t.iter().all(|x| *x >= Exact::zero() && *x < Exact::one()));
        }
    }
}
