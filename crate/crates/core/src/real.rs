//! Scalar types shared by the whole crate.
//!
//! `Real` abstracts over `f64` and [`Exact`], a rational that stays on
//! `i64` arithmetic until something overflows and then moves to bignums.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Largest distance from an integer accepted as "congruent to 0 mod 1".
    const TOL: f64;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `p / q`; `q` must be nonzero.
    fn ratio(p: i64, q: i64) -> Self;
    fn from_exact(x: &Exact) -> Self;
    fn floor(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_integer(&self) -> bool;
    fn is_zero(&self) -> bool;

    /// Fractional part in `[0, 1)`.
    fn frac(&self) -> Self {
        self.clone() - self.floor()
    }

    /// Signed fractional part in `[-1/2, 1/2)`.
    fn signed_frac(&self) -> Self {
        let f = self.frac();
        if f >= Self::ratio(1, 2) {
            f - Self::one()
        } else {
            f
        }
    }

    fn scale(&self, k: i64) -> Self {
        self.clone() * Self::from_i64(k)
    }

    /// Distance of `self` to the nearest integer, as a float.
    fn dist_int(&self) -> f64 {
        let f = self.frac().to_f64();
        f.min(1.0 - f)
    }
}

impl Real for f64 {
    const TOL: f64 = 1e-6;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
    fn from_exact(x: &Exact) -> Self {
        x.to_f64()
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_integer(&self) -> bool {
        self.fract() == 0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn frac(&self) -> Self {
        let r = self - f64::floor(*self);
        if r >= 1.0 {
            0.0
        } else {
            r
        }
    }
}

/// Exact rational number.
///
/// The `Small` variant is always normalised (positive denominator, reduced)
/// and never holds `i64::MIN` as numerator, so negation cannot overflow.
#[derive(Clone)]
pub enum Exact {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Exact {
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Exact::from_big(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_integer(n: i64) -> Self {
        Exact::small_or_big(Ratio::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        if let (Some(p), Some(q)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if p != i64::MIN {
                return Exact::Small(Ratio::new_raw(p, q));
            }
        }
        Exact::Big(r)
    }

    fn small_or_big(r: Ratio<i64>) -> Self {
        if *r.numer() == i64::MIN {
            Exact::Big(to_big(&r))
        } else {
            Exact::Small(r)
        }
    }

    /// Exact binary value of a finite float.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Exact::from_big)
    }

    /// Shortest decimal that round-trips to `x`, read back exactly.
    pub fn from_f64_decimal(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Parse(format!("non-finite number {x}")));
        }
        format!("{x:e}").parse()
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Exact::Small(r) => to_big(r),
            Exact::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Exact::Small(r) => BigInt::from(*r.numer()),
            Exact::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Exact::Small(r) => BigInt::from(*r.denom()),
            Exact::Big(r) => r.denom().clone(),
        }
    }

    pub fn floor_big(&self) -> BigInt {
        match self {
            Exact::Small(r) => BigInt::from(r.numer().div_floor(r.denom())),
            Exact::Big(r) => r.numer().div_floor(r.denom()),
        }
    }

    pub fn floor_i64(&self) -> Option<i64> {
        match self {
            Exact::Small(r) => Some(r.numer().div_floor(r.denom())),
            Exact::Big(r) => r.numer().div_floor(r.denom()).to_i64(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Exact::Small(r) => *r.numer() < 0,
            Exact::Big(r) => r.is_negative(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!Real::is_zero(self), "reciprocal of zero");
        match self {
            Exact::Small(r) => Exact::small_or_big(r.recip()),
            Exact::Big(r) => Exact::from_big(r.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Exact::from_integer(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

macro_rules! exact_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                if let (Exact::Small(a), Exact::Small(b)) = (&self, &rhs) {
                    if let Some(r) = a.$checked(b) {
                        return Exact::small_or_big(r);
                    }
                }
                Exact::from_big(self.to_big().$method(rhs.to_big()))
            }
        }
        impl<'a> $tr<&'a Exact> for &'a Exact {
            type Output = Exact;
            fn $method(self, rhs: &Exact) -> Exact {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

exact_binop!(Add, add, checked_add);
exact_binop!(Sub, sub, checked_sub);
exact_binop!(Mul, mul, checked_mul);

impl Div for Exact {
    type Output = Exact;
    fn div(self, rhs: Exact) -> Exact {
        assert!(!Real::is_zero(&rhs), "division by zero");
        if let (Exact::Small(a), Exact::Small(b)) = (&self, &rhs) {
            if let Some(r) = a.checked_div(b) {
                return Exact::small_or_big(r);
            }
        }
        Exact::from_big(self.to_big() / rhs.to_big())
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        match self {
            Exact::Small(r) => Exact::Small(-r),
            Exact::Big(r) => Exact::from_big(-r),
        }
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Exact {}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exact::Small(a), Exact::Small(b)) => {
                // cross-multiply in i128 to avoid overflow
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Exact {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

impl Real for Exact {
    const TOL: f64 = 0.0;

    fn zero() -> Self {
        Exact::Small(Ratio::zero())
    }
    fn one() -> Self {
        Exact::Small(Ratio::one())
    }
    fn from_i64(n: i64) -> Self {
        Exact::from_integer(n)
    }
    fn ratio(p: i64, q: i64) -> Self {
        Exact::new(p, q)
    }
    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }
    fn floor(&self) -> Self {
        match self {
            Exact::Small(r) => Exact::small_or_big(r.floor()),
            Exact::Big(r) => Exact::from_big(r.floor()),
        }
    }
    fn to_f64(&self) -> f64 {
        match self {
            Exact::Small(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                if p.unsigned_abs() < (1 << 53) && q < (1 << 53) {
                    p as f64 / q as f64
                } else {
                    to_big(r).to_f64().unwrap_or(f64::NAN)
                }
            }
            Exact::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
    fn is_integer(&self) -> bool {
        match self {
            Exact::Small(r) => r.is_integer(),
            Exact::Big(r) => r.is_integer(),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Exact::Small(r) => r.is_zero(),
            Exact::Big(r) => r.is_zero(),
        }
    }
    fn scale(&self, k: i64) -> Self {
        self.clone() * Exact::from_integer(k)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `p`, `p/q` and decimals such as `-1.25e-3`.
impl FromStr for Exact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Exact::from_big(BigRational::new(p, q)));
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
        let scale = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        let mut r = BigRational::from_integer(digits);
        if scale >= 0 {
            r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
        } else {
            r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
        }
        Ok(Exact::from_big(if neg { -r } else { r }))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Str(String),
        }
        let r = match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Exact::from_integer(n)),
            Raw::Float(x) => Exact::from_f64_decimal(x),
            Raw::Str(s) => s.parse(),
        };
        r.map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Self {
        Exact::from_integer(n)
    }
}

/// Exact rational kept as an unreduced `i128` fraction.
///
/// Much cheaper than [`Exact`] when many operations share a small common
/// denominator: no gcd per operation, and additions over denominators that
/// divide one another only rescale. Overflow falls back to [`Exact`].
#[derive(Clone)]
pub enum Scaled {
    Raw { num: i128, den: i128 },
    Slow(Exact),
}

const SCALED_REDUCE_AT: i128 = 1 << 60;

impl Scaled {
    fn raw(num: i128, den: i128) -> Scaled {
        debug_assert!(den > 0);
        if den > SCALED_REDUCE_AT {
            let g = num.gcd(&den);
            if g > 1 {
                return Scaled::Raw { num: num / g, den: den / g };
            }
        }
        Scaled::Raw { num, den }
    }

    pub fn to_exact(&self) -> Exact {
        match self {
            Scaled::Raw { num, den } => Exact::from_big(BigRational::new(BigInt::from(*num), BigInt::from(*den))),
            Scaled::Slow(x) => x.clone(),
        }
    }

    fn slow(self) -> Exact {
        match self {
            Scaled::Slow(x) => x,
            s => s.to_exact(),
        }
    }

    fn from_exact_value(x: Exact) -> Scaled {
        match &x {
            Exact::Small(r) => Scaled::Raw { num: *r.numer() as i128, den: *r.denom() as i128 },
            Exact::Big(r) => match (r.numer().to_i128(), r.denom().to_i128()) {
                (Some(num), Some(den)) if num != i128::MIN => Scaled::Raw { num, den },
                _ => Scaled::Slow(x),
            },
        }
    }

    /// Numerators of `a` and `b` over a common denominator.
    fn align(a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128, i128)> {
        let ((an, ad), (bn, bd)) = (a, b);
        if ad == bd {
            Some((an, bn, ad))
        } else if bd % ad == 0 {
            Some((an.checked_mul(bd / ad)?, bn, bd))
        } else if ad % bd == 0 {
            Some((an, bn.checked_mul(ad / bd)?, ad))
        } else {
            Some((an.checked_mul(bd)?, bn.checked_mul(ad)?, ad.checked_mul(bd)?))
        }
    }
}

macro_rules! scaled_addsub {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for Scaled {
            type Output = Scaled;
            fn $method(self, rhs: Scaled) -> Scaled {
                if let (Scaled::Raw { num: an, den: ad }, Scaled::Raw { num: bn, den: bd }) = (&self, &rhs) {
                    if let Some((x, y, d)) = Scaled::align((*an, *ad), (*bn, *bd)) {
                        if let Some(n) = x.$checked(y) {
                            if n != i128::MIN {
                                return Scaled::raw(n, d);
                            }
                        }
                    }
                }
                Scaled::from_exact_value(self.slow().$method(rhs.slow()))
            }
        }
    };
}

scaled_addsub!(Add, add, checked_add);
scaled_addsub!(Sub, sub, checked_sub);

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        if let (Scaled::Raw { num: an, den: ad }, Scaled::Raw { num: bn, den: bd }) = (&self, &rhs) {
            if let (Some(n), Some(d)) = (i128::checked_mul(*an, *bn), i128::checked_mul(*ad, *bd)) {
                if n != i128::MIN {
                    return Scaled::raw(n, d);
                }
            }
        }
        Scaled::from_exact_value(self.slow() * rhs.slow())
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        match self {
            Scaled::Raw { num, den } => Scaled::Raw { num: -num, den },
            Scaled::Slow(x) => Scaled::from_exact_value(-x),
        }
    }
}

impl PartialEq for Scaled {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Scaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if let (Scaled::Raw { num: an, den: ad }, Scaled::Raw { num: bn, den: bd }) = (self, other) {
            if let Some((x, y, _)) = Scaled::align((*an, *ad), (*bn, *bd)) {
                return Some(x.cmp(&y));
            }
        }
        Some(self.to_exact().cmp(&other.to_exact()))
    }
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact())
    }
}

impl fmt::Debug for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact())
    }
}

impl Real for Scaled {
    const TOL: f64 = 0.0;

    fn zero() -> Self {
        Scaled::Raw { num: 0, den: 1 }
    }
    fn one() -> Self {
        Scaled::Raw { num: 1, den: 1 }
    }
    fn from_i64(n: i64) -> Self {
        Scaled::Raw { num: n as i128, den: 1 }
    }
    fn ratio(p: i64, q: i64) -> Self {
        Scaled::from_exact_value(Exact::new(p, q))
    }
    fn from_exact(x: &Exact) -> Self {
        Scaled::from_exact_value(x.clone())
    }
    fn floor(&self) -> Self {
        match self {
            Scaled::Raw { num, den } => Scaled::Raw { num: num.div_euclid(*den), den: 1 },
            Scaled::Slow(x) => Scaled::from_exact_value(x.floor()),
        }
    }
    fn to_f64(&self) -> f64 {
        self.to_exact().to_f64()
    }
    fn is_integer(&self) -> bool {
        match self {
            Scaled::Raw { num, den } => num % den == 0,
            Scaled::Slow(x) => x.is_integer(),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Scaled::Raw { num, .. } => *num == 0,
            Scaled::Slow(x) => Real::is_zero(x),
        }
    }
    fn dist_int(&self) -> f64 {
        match self {
            Scaled::Raw { num, den } => {
                let r = num.rem_euclid(*den);
                if r == 0 {
                    0.0
                } else {
                    Exact::from_big(BigRational::new(BigInt::from(r.min(den - r)), BigInt::from(*den))).to_f64()
                }
            }
            Scaled::Slow(x) => x.dist_int(),
        }
    }
}

/// `e(x) = exp(2 pi i x)`, reducing mod 1 first.
pub fn e(x: f64) -> Complex64 {
    let t = std::f64::consts::TAU * Real::frac(&x);
    let (s, c) = t.sin_cos();
    Complex64::new(c, s)
}

/// Phase of an exact rational, reduced exactly before rounding to float.
pub fn e_exact(x: &Exact) -> Complex64 {
    e(x.frac().to_f64())
}

/// `{alpha * m}` with the rounding error of the product recovered by FMA.
pub fn mul_mod1(alpha: f64, m: f64) -> f64 {
    let p = alpha * m;
    let err = alpha.mul_add(m, -p);
    Real::frac(&(Real::frac(&p) + err))
}

/// Distance to the nearest integer.
pub fn dist_to_int(x: f64) -> f64 {
    let f = Real::frac(&x);
    f.min(1.0 - f)
}

pub fn dist_to_int_exact(x: &Exact) -> Exact {
    let f = x.frac();
    let g = Exact::one() - f.clone();
    if f < g {
        f
    } else {
        g
    }
}
