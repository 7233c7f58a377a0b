//! Free 2-step nilpotent group on `k` generators.
//!
//! Coordinates are `(t_1..t_k, t_[2,1], t_[3,1], t_[3,2], t_[4,1], ...)`,
//! pairs `[i', i]` with `i' > i` in lexicographic order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Exact, Real};

pub fn dim2(k: usize) -> usize {
    k + k * (k.saturating_sub(1)) / 2
}

/// Position of `t_[ip, i]` (1-based, `ip > i`).
pub fn pair_index(k: usize, ip: usize, i: usize) -> usize {
    debug_assert!(1 <= i && i < ip && ip <= k);
    k + (ip - 1) * (ip - 2) / 2 + (i - 1)
}

/// All pairs `(ip, i)` in coordinate order.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    (2..=k).flat_map(|ip| (1..ip).map(move |i| (ip, i))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "R: Serialize", deserialize = "R: Deserialize<'de>"))]
pub struct Malcev2<R> {
    pub k: usize,
    pub t: Vec<R>,
}

impl<R: Real> Malcev2<R> {
    pub fn identity(k: usize) -> Self {
        Malcev2 { k, t: vec![R::zero(); dim2(k)] }
    }

    pub fn new(k: usize, t: Vec<R>) -> Result<Self> {
        if t.len() != dim2(k) {
            return Err(Error::DomainMismatch(format!(
                "free 2-step group on {k} generators has {} coordinates, got {}",
                dim2(k),
                t.len()
            )));
        }
        Ok(Malcev2 { k, t })
    }

    pub fn generator(k: usize, i: usize, x: R) -> Self {
        let mut g = Self::identity(k);
        g.t[i - 1] = x;
        g
    }

    pub fn get(&self, ip: usize, i: usize) -> &R {
        &self.t[pair_index(self.k, ip, i)]
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.k != o.k {
            return Err(Error::DomainMismatch(format!("free2 on {} vs {} generators", self.k, o.k)));
        }
        let k = self.k;
        let mut s: Vec<R> = self.t.iter().zip(&o.t).map(|(a, b)| a.clone() + b.clone()).collect();
        for (ip, i) in pairs(k) {
            let idx = pair_index(k, ip, i);
            s[idx] = s[idx].clone() + self.t[ip - 1].clone() * o.t[i - 1].clone();
        }
        Ok(Malcev2 { k, t: s })
    }

    pub fn inverse(&self) -> Self {
        let k = self.k;
        let mut x: Vec<R> = self.t.iter().map(|a| -a.clone()).collect();
        for (ip, i) in pairs(k) {
            let idx = pair_index(k, ip, i);
            x[idx] = x[idx].clone() + self.t[ip - 1].clone() * self.t[i - 1].clone();
        }
        Malcev2 { k, t: x }
    }

    pub fn pow(&self, n: i64) -> Self {
        let (mut base, mut e) = if n < 0 { (self.inverse(), n.unsigned_abs()) } else { (self.clone(), n as u64) };
        let mut acc = Self::identity(self.k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same k");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same k");
            }
        }
        acc
    }

    /// `(reduced, gamma)` with `gamma` in the lattice and `self * gamma = reduced`.
    pub fn reduce(&self) -> (Self, Self) {
        let k = self.k;
        let mut r = Self::identity(k);
        let mut gamma = Self::identity(k);
        for i in 0..k {
            let f = self.t[i].floor();
            r.t[i] = self.t[i].clone() - f.clone();
            gamma.t[i] = -f;
        }
        for (ip, i) in pairs(k) {
            let idx = pair_index(k, ip, i);
            let v = self.t[idx].clone() - self.t[ip - 1].clone() * self.t[i - 1].floor();
            let f = v.floor();
            r.t[idx] = v - f.clone();
            gamma.t[idx] = -f;
        }
        (r, gamma)
    }

    pub fn is_lattice(&self) -> bool {
        self.t.iter().all(Real::is_integer)
    }

    pub fn is_horizontal_trivial(&self) -> bool {
        self.t[..self.k].iter().all(Real::is_zero)
    }
}

pub fn mul2<R: Real>(a: &Malcev2<R>, b: &Malcev2<R>) -> Result<Malcev2<R>> {
    a.mul(b)
}

pub fn inverse2<R: Real>(a: &Malcev2<R>) -> Malcev2<R> {
    a.inverse()
}

pub fn reduce2<R: Real>(g: &Malcev2<R>) -> (Malcev2<R>, Malcev2<R>) {
    g.reduce()
}

/// `g(n) = (xi_1 n, ..., xi_k n, q_[2,1](n), ...)` with `q(n) = a n^2 + b n + c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolySeq2 {
    pub xi: Vec<Exact>,
    /// `[a, b, c]` per pair, in coordinate order; missing entries are zero.
    #[serde(default)]
    pub quad: Vec<[Exact; 3]>,
}

impl PolySeq2 {
    pub fn k(&self) -> usize {
        self.xi.len()
    }

    pub fn validate(&self) -> Result<()> {
        let np = pairs(self.k()).len();
        if self.quad.len() > np {
            return Err(Error::param("quad", format!("{} quadratics for {np} pairs", self.quad.len())));
        }
        Ok(())
    }

    fn quad_at<R: Real>(&self, p: usize, n: i64) -> R {
        match self.quad.get(p) {
            None => R::zero(),
            Some([a, b, c]) => {
                let nn = R::from_i64(n);
                R::from_exact(a) * nn.clone() * nn.clone() + R::from_exact(b) * nn + R::from_exact(c)
            }
        }
    }

    pub fn eval<R: Real>(&self, n: i64) -> Malcev2<R> {
        let k = self.k();
        let mut g = Malcev2::identity(k);
        for (i, x) in self.xi.iter().enumerate() {
            g.t[i] = R::from_exact(x) * R::from_i64(n);
        }
        for (p, _) in pairs(k).iter().enumerate() {
            g.t[k + p] = self.quad_at(p, n);
        }
        g
    }

    /// `q_[ip,i]` as `(a, b, c)`.
    pub fn quad_coeffs(&self, ip: usize, i: usize) -> [Exact; 3] {
        let p = pair_index(self.k(), ip, i) - self.k();
        self.quad.get(p).cloned().unwrap_or_else(|| [Exact::zero(), Exact::zero(), Exact::zero()])
    }
}

/// `d_h g(n) = g(n + h) g(n)^-1`, for any sequence.
pub fn derivative<R: Real>(g: impl Fn(i64) -> Malcev2<R>, h: i64) -> impl Fn(i64) -> Malcev2<R> {
    move |n| g(n + h).mul(&g(n).inverse()).expect("same k")
}

/// Coordinate `[ip, i]` of the reduced point `g(n) Gamma`, in cycles.
pub fn nilchar2<R: Real>(ps: &PolySeq2, ip: usize, i: usize, n: i64) -> R {
    ps.eval::<R>(n).reduce().0.get(ip, i).clone()
}

/// Exact closed form of `nilchar2`: `{q(n) - xi_ip n floor(xi_i n)}`.
pub fn nilchar2_closed_form<R: Real>(ps: &PolySeq2, ip: usize, i: usize, n: i64) -> R {
    let nn = R::from_i64(n);
    let [a, b, c] = ps.quad_coeffs(ip, i);
    let q = R::from_exact(&a) * nn.clone() * nn.clone() + R::from_exact(&b) * nn.clone() + R::from_exact(&c);
    let xi = R::from_exact(&ps.xi[i - 1]) * nn.clone();
    let xip = R::from_exact(&ps.xi[ip - 1]) * nn;
    (q - xip * xi.floor()).frac()
}

/// The bracket form `xi_i n floor(xi_ip n) + alpha n^2 + beta n (+ c)` with
/// `alpha = a - xi_i xi_ip`, together with the leftover `{xi_i n}{xi_ip n}`.
/// Their sum is congruent to `nilchar2` mod 1.
pub fn nilchar2_bracket_form<R: Real>(ps: &PolySeq2, ip: usize, i: usize, n: i64) -> (R, R) {
    let nn = R::from_i64(n);
    let [a, b, c] = ps.quad_coeffs(ip, i);
    let xi = R::from_exact(&ps.xi[i - 1]);
    let xip = R::from_exact(&ps.xi[ip - 1]);
    let alpha = R::from_exact(&a) - xi.clone() * xip.clone();
    let x = xi * nn.clone();
    let y = xip * nn.clone();
    let main = x.clone() * y.floor() + alpha * nn.clone() * nn.clone() + R::from_exact(&b) * nn + R::from_exact(&c);
    (main.frac(), (x.frac() * y.frac()).frac())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: i64, q: i64) -> Exact {
        Exact::new(p, q)
    }

    #[test]
    fn commutator_is_pair_coordinate() {
        let k = 3;
        let g = |i| Malcev2::generator(k, i, Exact::one());
        for (ip, i) in pairs(k) {
            // e_ip^-1 e_i^-1 e_ip e_i = e_[ip,i]
            let c = g(ip).inverse().mul(&g(i).inverse()).unwrap().mul(&g(ip)).unwrap().mul(&g(i)).unwrap();
            let mut want = Malcev2::identity(k);
            want.t[pair_index(k, ip, i)] = Exact::one();
            assert_eq!(c, want);
        }
    }

    #[test]
    fn reduce_hand_example() {
        let g = Malcev2::new(2, vec![e(5, 2), e(1, 4), e(11, 10)]).unwrap();
        let (r, gamma) = g.reduce();
        assert_eq!(r.t, vec![e(1, 2), e(1, 4), e(3, 5)]);
        assert!(gamma.is_lattice());
        assert_eq!(g.mul(&gamma).unwrap(), r);
        assert_eq!(r.reduce().0, r);
    }

    #[test]
    fn integer_points_reduce_to_zero() {
        let g = Malcev2::new(3, (0..6).map(|i| Exact::from_integer(i * 7 - 20)).collect()).unwrap();
        assert_eq!(g.reduce().0, Malcev2::identity(3));
    }

    #[test]
    fn mismatched_k_is_rejected() {
        let a = Malcev2::<Exact>::identity(2);
        let b = Malcev2::<Exact>::identity(3);
        assert!(a.mul(&b).is_err());
        assert!(Malcev2::new(2, vec![Exact::zero(); 4]).is_err());
    }

    #[test]
    fn heisenberg_orbit_is_quadratic_phase() {
        let alpha = e(3, 11);
        let g = Malcev2::new(2, vec![alpha.scale(2), Exact::one(), Exact::zero()]).unwrap();
        let phase = |n: i64| g.pow(n).reduce().0.t[2].clone();
        let theta = phase(1) - alpha.clone();
        for n in 1..200 {
            let want = alpha.clone() * Exact::from_integer(n * n) + theta.clone() * Exact::from_integer(n);
            assert!((phase(n) - want).is_integer(), "n={n}");
        }
        assert_eq!(theta.frac(), (-alpha).frac());
    }

    #[test]
    fn polyseq_is_degree_two() {
        let ps = PolySeq2 {
            xi: vec![e(1, 3), e(2, 7), e(-5, 9)],
            quad: vec![[e(1, 2), e(1, 5), e(0, 1)], [e(3, 4), e(0, 1), e(2, 3)], [e(-1, 6), e(1, 1), e(1, 8)]],
        };
        let g = |n| ps.eval::<Exact>(n);
        for h1 in [1, 2, 5] {
            for h2 in [1, 3] {
                let d2 = derivative(derivative(g, h1), h2);
                for h3 in [1, 4] {
                    let d3 = derivative(derivative(derivative(g, h1), h2), h3);
                    for n in -3..6 {
                        assert!(d2(n).is_horizontal_trivial());
                        assert_eq!(d3(n), Malcev2::identity(3));
                    }
                }
            }
        }
    }
}
