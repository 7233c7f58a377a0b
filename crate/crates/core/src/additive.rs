//! Sumsets: `kA - lA` and Lev progressions, the bilinear sumset `A (+) A`
//! with product progressions, additive energy of graphs, and rounding of
//! phases to a grid.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::check_budget;

/// Largest sumset (as an integer range) materialised.
pub const SUMSET_BUDGET: u128 = 10_000_000;
/// Largest bilinear box `(2W + 1)^2` materialised.
pub const BILINEAR_BUDGET: u128 = 50_000_000;

/// Fixed-length bitset with shifted OR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    len: usize,
    w: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits { len, w: vec![0; len.div_ceil(64)] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    pub fn set(&mut self, i: usize) {
        self.w[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.w[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().flat_map(|(k, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(k * 64 + b)
            })
        })
    }

    /// `self[i + shift] |= src[i]`, dropping indices outside `self`.
    pub fn or_shifted(&mut self, src: &Bits, shift: isize) {
        let n = self.w.len() as isize;
        let m = src.w.len() as isize;
        let ws = shift.div_euclid(64);
        let bs = shift.rem_euclid(64) as u32;
        for k in 0..n {
            // destination word k draws on source words k - ws and k - ws - 1
            let j = k - ws;
            let hi = if (0..m).contains(&j) { src.w[j as usize] << bs } else { 0 };
            let lo = if bs > 0 && (0..m).contains(&(j - 1)) { src.w[(j - 1) as usize] >> (64 - bs) } else { 0 };
            self.w[k as usize] |= hi | lo;
        }
        self.trim();
    }

    pub fn or(&mut self, o: &Bits) {
        for (a, b) in self.w.iter_mut().zip(&o.w) {
            *a |= b;
        }
    }

    fn trim(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.w.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        self.w.iter().zip(&o.w).all(|(a, b)| a & !b == 0)
    }
}

/// `A ⊆ [N]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntSet {
    pub n: usize,
    pub elems: Vec<i64>,
}

impl IntSet {
    pub fn new(n: usize, mut elems: Vec<i64>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&x| x < 1 || x > n as i64) {
            return Err(Error::param("A", format!("{bad} is not in [1, {n}]")));
        }
        Ok(IntSet { n, elems })
    }

    pub fn alpha(&self) -> f64 {
        self.elems.len() as f64 / self.n as f64
    }
}

/// A set of integers stored as a bitset over `[lo, lo + len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRangeSet {
    pub lo: i64,
    pub bits: Bits,
}

impl IntRangeSet {
    fn from_elems(elems: &[i64]) -> Self {
        let lo = elems.first().copied().unwrap_or(0);
        let hi = elems.last().copied().unwrap_or(-1);
        let mut bits = Bits::new((hi - lo + 1).max(0) as usize);
        for &x in elems {
            bits.set((x - lo) as usize);
        }
        IntRangeSet { lo, bits }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && self.bits.get((x - self.lo) as usize)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.bits.ones().map(|i| i as i64 + self.lo).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    fn plus(&self, o: &IntRangeSet) -> IntRangeSet {
        if self.is_empty() || o.is_empty() {
            return IntRangeSet { lo: 0, bits: Bits::new(0) };
        }
        let len = self.bits.len() + o.bits.len() - 1;
        let mut bits = Bits::new(len);
        for j in o.bits.ones() {
            bits.or_shifted(&self.bits, j as isize);
        }
        IntRangeSet { lo: self.lo + o.lo, bits }
    }

    fn negate(&self) -> IntRangeSet {
        let l = self.bits.len();
        let mut bits = Bits::new(l);
        for i in self.bits.ones() {
            bits.set(l - 1 - i);
        }
        IntRangeSet { lo: -(self.lo + l as i64 - 1), bits }
    }
}

/// `kA - lA`.
pub fn iterated_sumset(a: &IntSet, k: usize, l: usize) -> Result<IntRangeSet> {
    if k + l == 0 {
        return Err(Error::param("k", "need k + l >= 1"));
    }
    let base = IntRangeSet::from_elems(&a.elems);
    if a.elems.is_empty() {
        return Ok(base);
    }
    let width = (a.elems[a.elems.len() - 1] - a.elems[0]) as u128;
    check_budget("sumset range |kA - lA|", (k + l) as u128 * width + 1, SUMSET_BUDGET)?;
    let fold = |times: usize, s: &IntRangeSet| -> Option<IntRangeSet> {
        (0..times).fold(None, |acc: Option<IntRangeSet>, _| Some(acc.map_or_else(|| s.clone(), |t| t.plus(s))))
    };
    let neg = base.negate();
    Ok(match (fold(k, &base), fold(l, &neg)) {
        (Some(p), Some(q)) => p.plus(&q),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => unreachable!(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevResult {
    /// Smallest `d <= 1/alpha` with `{0, d, .., (N-1)d} ⊆ kA - kA`.
    pub d: Option<i64>,
    pub alpha: f64,
    pub k: usize,
    /// `k >= 2 / alpha`, the range where the theorem promises a `d`.
    pub guaranteed: bool,
    pub sumset_size: usize,
}

pub fn find_lev_progression(a: &IntSet, k: usize) -> Result<LevResult> {
    let alpha = a.alpha();
    if a.elems.is_empty() {
        return Ok(LevResult { d: None, alpha, k, guaranteed: false, sumset_size: 0 });
    }
    let s = iterated_sumset(a, k, k)?;
    let dmax = (1.0 / alpha).floor() as i64;
    let n = a.n as i64;
    let d = (1..=dmax).find(|&d| (0..n).all(|j| s.contains(j * d)));
    Ok(LevResult { d, alpha, k, guaranteed: k as f64 >= 2.0 / alpha, sumset_size: s.len() })
}

/// Points of `Z^2` kept as rows of bitsets over the box `[-w, w]^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGrid {
    pub w: i64,
    rows: Vec<Bits>,
}

impl PairGrid {
    pub fn new(w: i64) -> Self {
        let side = (2 * w + 1) as usize;
        PairGrid { w, rows: vec![Bits::new(side); side] }
    }

    pub fn from_pairs(w: i64, pairs: &[(i64, i64)]) -> Self {
        let mut g = PairGrid::new(w);
        for &(x, y) in pairs {
            g.insert(x, y);
        }
        g
    }

    fn idx(&self, v: i64) -> Option<usize> {
        (-self.w..=self.w).contains(&v).then(|| (v + self.w) as usize)
    }

    /// Inserts `(x, y)`; points outside the box are dropped.
    pub fn insert(&mut self, x: i64, y: i64) -> bool {
        match (self.idx(x), self.idx(y)) {
            (Some(i), Some(j)) => {
                self.rows[i].set(j);
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        match (self.idx(x), self.idx(y)) {
            (Some(i), Some(j)) => self.rows[i].get(j),
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Bits::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Bits::is_empty)
    }

    pub fn pairs(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                out.push((i as i64 - self.w, j as i64 - self.w));
            }
        }
        out
    }

    pub fn is_subset(&self, o: &PairGrid) -> bool {
        self.w == o.w && self.rows.iter().zip(&o.rows).all(|(a, b)| a.is_subset(b))
    }

    fn transpose(&self) -> Vec<Bits> {
        let side = self.rows.len();
        let mut cols = vec![Bits::new(side); side];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                cols[j].set(i);
            }
        }
        cols
    }
}

/// `R + R` and `R - R` of a line `R ⊆ [-w, w]`, clipped to `[-w, w]`.
fn line_sums(r: &Bits, w: i64) -> Bits {
    if r.count() == r.len() {
        return r.clone();
    }
    let mut out = Bits::new(r.len());
    for j in r.ones() {
        let y = j as isize - w as isize;
        out.or_shifted(r, y);
        out.or_shifted(r, -y);
    }
    out
}

/// `A (+) A`: every `(x, y1 +- y2)` with `(x, y1), (x, y2) in A` and every
/// `(x1 +- x2, y)` with `(x1, y), (x2, y) in A`, clipped to the box.
pub fn bilinear_oplus(a: &PairGrid) -> PairGrid {
    let mut out = PairGrid::new(a.w);
    for (i, r) in a.rows.iter().enumerate() {
        if !r.is_empty() {
            out.rows[i] = line_sums(r, a.w);
        }
    }
    let cols = a.transpose();
    for (j, c) in cols.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        for i in line_sums(c, a.w).ones() {
            out.rows[i].set(j);
        }
    }
    out
}

/// `A ⊆ [N]^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSet {
    pub n: usize,
    pub pairs: Vec<(i64, i64)>,
}

impl PairSet {
    pub fn new(n: usize, mut pairs: Vec<(i64, i64)>) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        let r = 1..=n as i64;
        if let Some(bad) = pairs.iter().find(|(x, y)| !r.contains(x) || !r.contains(y)) {
            return Err(Error::param("A", format!("{bad:?} is not in [1, {n}]^2")));
        }
        Ok(PairSet { n, pairs })
    }

    pub fn alpha(&self) -> f64 {
        self.pairs.len() as f64 / (self.n * self.n) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductProgression {
    /// Lexicographically smallest `(d, d')`, both `<= 4/alpha^2`.
    pub d: Option<(i64, i64)>,
    pub alpha: f64,
    pub k: usize,
    /// `A_0 = A`, `A_{j+1} = A_j (+) A_j`; level `L` holds `2^L` copies of `A`.
    pub levels: u32,
    /// Levels actually computed before the iterate stopped changing.
    pub levels_computed: u32,
    /// The box `[-w, w]^2` everything was clipped to, widened from `[1, N]^2`.
    pub box_half_width: i64,
    pub final_size: usize,
}

/// `ceil(log2 k)` doubling levels of `(+)`, clipped to `[-W, W]^2` with
/// `W = (N - 1) floor(4 / alpha^2)`. Clipping only removes points, so a
/// progression found here lies in the unclipped iterate too.
pub fn find_product_progression(a: &PairSet, k: usize) -> Result<ProductProgression> {
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    let alpha = a.alpha();
    let levels = usize::BITS - (k - 1).leading_zeros();
    let n = a.n as i64;
    if a.pairs.is_empty() {
        return Ok(ProductProgression {
            d: None,
            alpha,
            k,
            levels,
            levels_computed: 0,
            box_half_width: n,
            final_size: 0,
        });
    }
    let dmax = (4.0 / (alpha * alpha)).floor() as i64;
    let w = ((n - 1) * dmax).max(n);
    check_budget("bilinear box (2W+1)^2", (2 * w as u128 + 1).pow(2), BILINEAR_BUDGET)?;
    let holds = |g: &PairGrid, d: i64, dp: i64| (0..n).all(|i| (0..n).all(|j| g.contains(i * d, j * dp)));
    let mut g = PairGrid::from_pairs(w, &a.pairs);
    let mut computed = 0;
    for _ in 0..levels {
        // P x P' with 0 in P' survives a level via (x, y + 0), and (1, 1)
        // is lexicographically least, so later levels cannot change it
        if holds(&g, 1, 1) {
            break;
        }
        let next = bilinear_oplus(&g);
        computed += 1;
        if next == g {
            break;
        }
        g = next;
    }
    let d = (1..=dmax).flat_map(|d| (1..=dmax).map(move |dp| (d, dp))).find(|&(d, dp)| holds(&g, d, dp));
    Ok(ProductProgression {
        d,
        alpha,
        k,
        levels,
        levels_computed: computed,
        box_half_width: w,
        final_size: g.len(),
    })
}

/// Points `(x, r)` of `Z x (1/g) Z / Z`, with `r` read mod `g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridGraph {
    pub modulus: i64,
    pub points: Vec<(i64, i64)>,
}

fn pair_sums(a: &GridGraph, b: &GridGraph) -> HashMap<(i64, i64), u64> {
    let g = a.modulus;
    let mut m = HashMap::new();
    for &(x1, r1) in &a.points {
        for &(x2, r2) in &b.points {
            *m.entry((x1 + x2, (r1 + r2).rem_euclid(g))).or_insert(0) += 1;
        }
    }
    m
}

/// `#{(g1, g2, g3, g4) in S1 x S2 x S3 x S4 : g1 + g2 = g3 + g4}`.
pub fn additive_energy(s: [&GridGraph; 4]) -> Result<u64> {
    let g = s[0].modulus;
    if g < 1 || s.iter().any(|t| t.modulus != g) {
        return Err(Error::param("modulus", "all four sets need the same positive grid modulus"));
    }
    let left = pair_sums(s[0], s[1]);
    let right = pair_sums(s[2], s[3]);
    Ok(left.iter().map(|(k, &c)| c * right.get(k).copied().unwrap_or(0)).sum())
}

/// Grid `{r / g}` with `g = floor(1 / eps)`; each value goes to the
/// nearest grid point in `R/Z`, ties downward. Returns `(g, r)`.
pub fn round_to_grid(values: &[f64], eps: f64) -> Result<(i64, Vec<i64>)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param("eps", format!("must lie in (0, 1), got {eps}")));
    }
    let g = (1.0 / eps).floor() as i64;
    let r = values
        .iter()
        .map(|&v| {
            let t = crate::real::Real::frac(&v) * g as f64;
            ((t - 0.5).ceil() as i64).rem_euclid(g)
        })
        .collect();
    Ok((g, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::Rng;

    #[test]
    fn bits_shift_matches_naive() {
        let mut r = sample::rng(1);
        for _ in 0..200 {
            let (ls, ld) = (r.gen_range(1..300), r.gen_range(1..300));
            let mut src = Bits::new(ls);
            for i in 0..ls {
                if r.gen_bool(0.3) {
                    src.set(i);
                }
            }
            let shift = r.gen_range(-350..350isize);
            let mut dst = Bits::new(ld);
            dst.or_shifted(&src, shift);
            for i in 0..ld {
                let j = i as isize - shift;
                let want = j >= 0 && src.get(j as usize);
                assert_eq!(dst.get(i), want);
            }
            assert!(dst.ones().all(|i| i < ld));
        }
    }

    #[test]
    fn sumset_examples() {
        let a = IntSet { n: 1, elems: vec![0] };
        assert_eq!(iterated_sumset(&a, 3, 2).unwrap().to_vec(), vec![0]);
        let a = IntSet::new(2, vec![1, 2]).unwrap();
        assert_eq!(iterated_sumset(&a, 1, 1).unwrap().to_vec(), vec![-1, 0, 1]);
        assert_eq!(iterated_sumset(&a, 2, 0).unwrap().to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn two_minus_two_matches_quadruple_loop() {
        let mut r = sample::rng(9);
        for _ in 0..5 {
            let elems: Vec<i64> = (1..=200).filter(|_| r.gen_bool(0.2)).collect();
            let a = IntSet::new(200, elems.clone()).unwrap();
            let fast = iterated_sumset(&a, 2, 2).unwrap().to_vec();
            let mut slow = std::collections::BTreeSet::new();
            for &p in &elems {
                for &q in &elems {
                    for &s in &elems {
                        for &t in &elems {
                            slow.insert(p + q - s - t);
                        }
                    }
                }
            }
            assert_eq!(fast, slow.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn lev_examples() {
        let full = IntSet::new(30, (1..=30).collect()).unwrap();
        assert_eq!(find_lev_progression(&full, 1).unwrap().d, Some(1));
        let even = IntSet::new(40, (1..=20).map(|x| 2 * x).collect()).unwrap();
        let r = find_lev_progression(&even, 4).unwrap();
        assert_eq!(r.d, Some(2));
        assert!(iterated_sumset(&even, 4, 4).unwrap().to_vec().iter().all(|x| x % 2 == 0));
    }

    #[test]
    fn oplus_examples() {
        let a = PairGrid::from_pairs(4, &[(1, 1)]);
        let mut got = bilinear_oplus(&a).pairs();
        got.sort();
        assert_eq!(got, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(bilinear_oplus(&PairGrid::new(3)).is_empty());
    }

    #[test]
    fn oplus_is_monotone() {
        let mut r = sample::rng(4);
        for _ in 0..20 {
            let big: Vec<(i64, i64)> =
                (0..30).map(|_| (r.gen_range(1..=8), r.gen_range(1..=8))).collect();
            let small: Vec<(i64, i64)> = big.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
            let (gs, gb) = (PairGrid::from_pairs(20, &small), PairGrid::from_pairs(20, &big));
            assert!(gs.is_subset(&gb));
            assert!(bilinear_oplus(&gs).is_subset(&bilinear_oplus(&gb)));
        }
    }

    #[test]
    fn oplus_matches_definition() {
        let pts = [(1, 2), (1, 5), (3, 2), (4, 4)];
        let w = 12;
        let mut want = std::collections::BTreeSet::new();
        for &(x1, y1) in &pts {
            for &(x2, y2) in &pts {
                if x1 == x2 {
                    want.insert((x1, y1 + y2));
                    want.insert((x1, y1 - y2));
                }
                if y1 == y2 {
                    want.insert((x1 + x2, y1));
                    want.insert((x1 - x2, y1));
                }
            }
        }
        let got: std::collections::BTreeSet<_> = bilinear_oplus(&PairGrid::from_pairs(w, &pts)).pairs().into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn product_progression_examples() {
        let n = 10;
        let full = PairSet::new(n, (1..=10).flat_map(|x| (1..=10).map(move |y| (x, y))).collect()).unwrap();
        // one level never reaches (0, 0): it needs a row or column 0 in A
        assert_eq!(find_product_progression(&full, 2).unwrap().d, None);
        assert_eq!(find_product_progression(&full, 4).unwrap().d, Some((1, 1)));
        let even: Vec<(i64, i64)> = (1..=5).flat_map(|x| (1..=5).map(move |y| (2 * x, 2 * y))).collect();
        let r = find_product_progression(&PairSet::new(n, even).unwrap(), 4).unwrap();
        assert_eq!(r.d, Some((2, 2)));
    }

    #[test]
    fn energy_examples() {
        let one = GridGraph { modulus: 7, points: vec![(0, 0)] };
        assert_eq!(additive_energy([&one, &one, &one, &one]).unwrap(), 1);
        let n = 25i64;
        let g = GridGraph { modulus: 7, points: (1..=n).map(|x| (x, (3 * x).rem_euclid(7))).collect() };
        let brute = (1..=n)
            .flat_map(|a| (1..=n).flat_map(move |b| (1..=n).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| (1..=n).contains(&(a + b - c)))
            .count() as u64;
        assert_eq!(additive_energy([&g, &g, &g, &g]).unwrap(), brute);
        let far = GridGraph { modulus: 7, points: vec![(100, 0)] };
        assert_eq!(additive_energy([&one, &one, &far, &one]).unwrap(), 0);
    }

    #[test]
    fn rounding_examples() {
        assert_eq!(round_to_grid(&[0.0], 0.25).unwrap(), (4, vec![0]));
        assert_eq!(round_to_grid(&[0.3], 0.25).unwrap().1, vec![1]);
        assert_eq!(round_to_grid(&[0.125], 0.25).unwrap().1, vec![0]);
        assert_eq!(round_to_grid(&[0.9], 0.25).unwrap().1, vec![0]);
        let (g, r) = round_to_grid(&[0.01, 0.49, 0.77, -0.2], 0.1).unwrap();
        for (v, k) in [0.01, 0.49, 0.77, -0.2].iter().zip(r) {
            assert!(crate::real::dist_to_int(v - k as f64 / g as f64) <= 0.5 / g as f64 + 1e-15);
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::collection::{btree_set, vec};
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn brute_oplus(pts: &[(i64, i64)], w: i64) -> HashSet<(i64, i64)> {
        let inside = |v: i64| (-w..=w).contains(&v);
        let mut out = HashSet::new();
        for &(x1, y1) in pts {
            for &(x2, y2) in pts {
                for s in [1, -1] {
                    if x1 == x2 && inside(y1 + s * y2) {
                        out.insert((x1, y1 + s * y2));
                    }
                    if y1 == y2 && inside(x1 + s * x2) {
                        out.insert((x1 + s * x2, y1));
                    }
                }
            }
        }
        out
    }

    fn grid_points(w: i64) -> impl Strategy<Value = Vec<(i64, i64)>> {
        btree_set((-w..=w, -w..=w), 0..30).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn oplus_matches_definition(pts in grid_points(6)) {
            let g = bilinear_oplus(&PairGrid::from_pairs(6, &pts));
            let got: HashSet<(i64, i64)> = g.pairs().into_iter().collect();
            prop_assert_eq!(got, brute_oplus(&pts, 6));
        }

        #[test]
        fn oplus_is_monotone(a in grid_points(5), b in grid_points(5)) {
            let small = PairGrid::from_pairs(5, &a);
            let big = PairGrid::from_pairs(5, &[a.clone(), b].concat());
            prop_assert!(bilinear_oplus(&small).is_subset(&bilinear_oplus(&big)));
        }

        #[test]
        fn sumset_matches_naive(a in btree_set(1i64..=40, 1..10), k in 1usize..4, l in 0usize..3) {
            let set = IntSet::new(40, a.iter().copied().collect()).unwrap();
            let s = iterated_sumset(&set, k, l).unwrap();
            let mut naive: HashSet<i64> = HashSet::from([0]);
            for _ in 0..k {
                naive = naive.iter().flat_map(|&t| a.iter().map(move |&x| t + x)).collect();
            }
            for _ in 0..l {
                naive = naive.iter().flat_map(|&t| a.iter().map(move |&x| t - x)).collect();
            }
            let mut want: Vec<i64> = naive.into_iter().collect();
            want.sort_unstable();
            prop_assert_eq!(s.to_vec(), want);
            if k == l {
                prop_assert!(s.to_vec().iter().all(|&x| s.contains(-x)));
            }
        }

        #[test]
        fn energy_matches_brute_force(
            sets in vec(vec((-4i64..4, 0i64..5), 0..12), 4),
        ) {
            let gs: Vec<GridGraph> = sets.iter().map(|p| GridGraph { modulus: 5, points: p.clone() }).collect();
            let fast = additive_energy([&gs[0], &gs[1], &gs[2], &gs[3]]).unwrap();
            let mut slow = 0u64;
            for a in &sets[0] {
                for b in &sets[1] {
                    for c in &sets[2] {
                        for d in &sets[3] {
                            if a.0 + b.0 == c.0 + d.0 && (a.1 + b.1 - c.1 - d.1).rem_euclid(5) == 0 {
                                slow += 1;
                            }
                        }
                    }
                }
            }
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn rounding_lands_within_half_a_step(v in vec(-3.0f64..3.0, 1..20), eps in 0.01f64..0.5) {
            let (g, r) = round_to_grid(&v, eps).unwrap();
            for (x, ri) in v.iter().zip(r) {
                prop_assert!((0..g).contains(&ri));
                let d = crate::real::dist_to_int(x - ri as f64 / g as f64);
                prop_assert!(d <= 0.5 / g as f64 + 1e-12);
            }
        }
    }
}
