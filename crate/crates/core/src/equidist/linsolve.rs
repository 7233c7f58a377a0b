//! Exact rational linear algebra and the bounded-solution construction:
//! drop dependent rows, complete to a square nonsingular matrix with unit
//! vectors, pad `b` with zeros, and invert.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Exact, Real};

pub type Matrix = Vec<Vec<Exact>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMatrixSystem {
    pub a: Matrix,
    pub b: Vec<Exact>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundedSolution {
    pub x: Vec<Exact>,
    /// `max_i |x_i|`
    pub bound: Exact,
    pub rank: usize,
    /// Rows of `A` kept after removing dependent ones.
    pub kept_rows: Vec<usize>,
    /// Indices `i` of the unit vectors `e_i` appended.
    pub augmented: Vec<usize>,
    /// Determinant of the completed square matrix.
    pub det: Exact,
}

/// Largest numerator or denominator magnitude, as a float.
fn complexity(x: &Exact) -> f64 {
    let n = x.numer();
    let d = x.denom();
    let f = |b: num_bigint::BigInt| num_traits::ToPrimitive::to_f64(&b).unwrap_or(f64::INFINITY).abs();
    f(n).max(f(d))
}

impl RationalMatrixSystem {
    pub fn new(a: Matrix, b: Vec<Exact>) -> Result<Self> {
        let s = RationalMatrixSystem { a, b };
        s.check_shape()?;
        Ok(s)
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.cols();
        if n == 0 {
            return Err(Error::param("A", "matrix needs at least one column"));
        }
        if self.a.iter().any(|r| r.len() != n) {
            return Err(Error::param("A", "rows have different lengths"));
        }
        if self.b.len() != self.rows() {
            return Err(Error::param("b", format!("expected {} entries, got {}", self.rows(), self.b.len())));
        }
        Ok(())
    }

    /// `max(complexity of entries of A, |b_i|)`.
    pub fn complexity(&self) -> f64 {
        let ca = self.a.iter().flatten().map(complexity).fold(0.0, f64::max);
        let cb = self.b.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max);
        ca.max(cb)
    }

    /// `A x - b`.
    pub fn residual(&self, x: &[Exact]) -> Vec<Exact> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| row.iter().zip(x).fold(-bi.clone(), |acc, (a, x)| acc + a.clone() * x.clone()))
            .collect()
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = m.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Real::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !Real::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Solves a square system, returning `(x, det)`; `None` if singular.
pub fn solve_square(a: &Matrix, b: &[Exact]) -> Option<(Vec<Exact>, Exact)> {
    let n = a.len();
    let mut m: Matrix = a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let mut det = Exact::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !Real::is_zero(&m[i][c]))?;
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det = det * m[c][c].clone();
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..n {
            if i != c && !Real::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = m[c][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
    }
    Some((m.into_iter().map(|r| r[n].clone()).collect(), det))
}

pub fn solve_bounded_rational(sys: &RationalMatrixSystem) -> Result<BoundedSolution> {
    sys.check_shape()?;
    let n = sys.cols();
    let augmented_ab: Matrix =
        sys.a.iter().zip(&sys.b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let rank_a = rank(&sys.a);
    let rank_ab = rank(&augmented_ab);
    if rank_a != rank_ab {
        return Err(Error::Inconsistent { rank_a, rank_ab });
    }
    // keep rows greedily while they raise the rank
    let mut kept: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (i, row) in sys.a.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            kept.push(i);
        } else {
            basis.pop();
        }
    }
    // unit vectors on the non-pivot columns complete the row space
    let (_, pivots) = rref(&basis);
    let extra: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut square = basis;
    let mut rhs: Vec<Exact> = kept.iter().map(|&i| sys.b[i].clone()).collect();
    for &c in &extra {
        let mut e = vec![Exact::zero(); n];
        e[c] = Exact::one();
        square.push(e);
        rhs.push(Exact::zero());
    }
    let (x, det) = solve_square(&square, &rhs).expect("completion is nonsingular");
    let bound = x.iter().map(Exact::abs).max().unwrap_or_else(Exact::zero);
    Ok(BoundedSolution { x, bound, rank: rank_a, kept_rows: kept, augmented: extra, det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> Exact {
        Exact::from_integer(p)
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let b = vec![Exact::new(3, 5), q(-2)];
        let s = solve_bounded_rational(&RationalMatrixSystem::new(a, b.clone()).unwrap()).unwrap();
        assert_eq!(s.x, b);
        assert!(s.augmented.is_empty());
    }

    #[test]
    fn underdetermined_augments_non_pivot() {
        let sys = RationalMatrixSystem::new(vec![vec![q(1), q(1)]], vec![q(2)]).unwrap();
        let s = solve_bounded_rational(&sys).unwrap();
        assert_eq!(s.x, vec![q(2), q(0)]);
        assert_eq!(s.augmented, vec![1]);
        assert!(sys.residual(&s.x).iter().all(|r| Real::is_zero(r)));
    }

    #[test]
    fn inconsistent_is_flagged() {
        let sys = RationalMatrixSystem::new(vec![vec![q(1)], vec![q(1)]], vec![q(1), q(2)]).unwrap();
        assert!(matches!(solve_bounded_rational(&sys), Err(Error::Inconsistent { rank_a: 1, rank_ab: 2 })));
    }

    #[test]
    fn dependent_rows_are_dropped() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        let sys = RationalMatrixSystem::new(a, vec![q(1), q(2), q(5)]).unwrap();
        let s = solve_bounded_rational(&sys).unwrap();
        assert_eq!(s.kept_rows, vec![0, 2]);
        assert_eq!(s.rank, 2);
        assert!(sys.residual(&s.x).iter().all(|r| Real::is_zero(r)));
    }

    #[test]
    fn shape_errors() {
        assert!(RationalMatrixSystem::new(vec![vec![q(1)], vec![q(1), q(2)]], vec![q(0), q(0)]).is_err());
        assert!(RationalMatrixSystem::new(vec![vec![q(1)]], vec![]).is_err());
    }
}
