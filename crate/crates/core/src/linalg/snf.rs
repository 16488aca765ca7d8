//! Integer diagonalization `P A Q = D` with unimodular `P`, `Q`.
//!
//! Runs on checked `i64` first and restarts on `BigInt` if any entry overflows.
//! The diagonal is not forced into a divisibility chain; callers that need
//! invariant factors normalize with [`invariant_factors_of`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Matrix};

trait Euclid: Clone + Zero + One + PartialEq {
    fn c_sub(&self, other: &Self) -> Option<Self>;
    fn c_mul(&self, other: &Self) -> Option<Self>;
    fn c_neg(&self) -> Option<Self>;
    /// Truncated quotient.
    fn quot(&self, other: &Self) -> Option<Self>;
    fn abs_less(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    fn negative(&self) -> bool;
}

impl Euclid for i64 {
    fn c_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn c_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn abs_less(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn negative(&self) -> bool {
        *self < 0
    }
}

impl Euclid for BigInt {
    fn c_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn c_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn c_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn abs_less(&self, o: &Self) -> bool {
        self.abs() < o.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
}

/// Which transforms to record.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub rows: bool,
    pub cols: bool,
}

impl Track {
    pub const NONE: Track = Track { rows: false, cols: false };
    pub const ALL: Track = Track { rows: true, cols: true };
}

/// Result of diagonalizing an `m x n` matrix `A`.
///
/// `p * A * q` is diagonal with entries `diagonal[i]` at `(i, i)` for `i < rank`
/// and zero elsewhere. Each diagonal entry is positive.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub diagonal: Vec<BigInt>,
    pub p: Option<IntMatrix>,
    pub p_inv: Option<IntMatrix>,
    pub q: Option<IntMatrix>,
    pub q_inv: Option<IntMatrix>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work<T> {
    a: Matrix<T>,
    p: Option<Matrix<T>>,
    p_inv: Option<Matrix<T>>,
    q: Option<Matrix<T>>,
    q_inv: Option<Matrix<T>>,
}

fn identity<T: Clone + Zero + One>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
}

/// `row[target] -= c * row[source]`, starting at column `from`.
fn row_axpy<T: Euclid>(m: &mut Matrix<T>, target: usize, source: usize, c: &T, from: usize) -> Option<()> {
    let (data, cols) = m.raw_mut();
    for j in from..cols {
        let s = &data[source * cols + j];
        if s.is_zero() {
            continue;
        }
        let delta = s.c_mul(c)?;
        let t = &data[target * cols + j];
        data[target * cols + j] = t.c_sub(&delta)?;
    }
    Some(())
}

/// `col[target] -= c * col[source]`, starting at row `from`.
fn col_axpy<T: Euclid>(m: &mut Matrix<T>, target: usize, source: usize, c: &T, from: usize) -> Option<()> {
    let (data, cols) = m.raw_mut();
    let rows = data.len() / cols.max(1);
    for i in from..rows {
        let s = &data[i * cols + source];
        if s.is_zero() {
            continue;
        }
        let delta = s.c_mul(c)?;
        let t = &data[i * cols + target];
        data[i * cols + target] = t.c_sub(&delta)?;
    }
    Some(())
}

fn negate_row<T: Euclid>(m: &mut Matrix<T>, i: usize) -> Option<()> {
    for j in 0..m.cols() {
        let v = m.get(i, j).c_neg()?;
        m.set(i, j, v);
    }
    Some(())
}

fn negate_col<T: Euclid>(m: &mut Matrix<T>, j: usize) -> Option<()> {
    for i in 0..m.rows() {
        let v = m.get(i, j).c_neg()?;
        m.set(i, j, v);
    }
    Some(())
}

impl<T: Euclid> Work<T> {
    fn row_op(&mut self, target: usize, source: usize, c: &T, from: usize) -> Option<()> {
        row_axpy(&mut self.a, target, source, c, from)?;
        if let Some(p) = self.p.as_mut() {
            row_axpy(p, target, source, c, 0)?;
        }
        if let Some(pi) = self.p_inv.as_mut() {
            let neg = c.c_neg()?;
            col_axpy(pi, source, target, &neg, 0)?;
        }
        Some(())
    }

    fn col_op(&mut self, target: usize, source: usize, c: &T, from: usize) -> Option<()> {
        col_axpy(&mut self.a, target, source, c, from)?;
        if let Some(q) = self.q.as_mut() {
            col_axpy(q, target, source, c, 0)?;
        }
        if let Some(qi) = self.q_inv.as_mut() {
            let neg = c.c_neg()?;
            row_axpy(qi, source, target, &neg, 0)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some(p) = self.p.as_mut() {
            p.swap_rows(a, b);
        }
        if let Some(pi) = self.p_inv.as_mut() {
            pi.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(q) = self.q.as_mut() {
            q.swap_cols(a, b);
        }
        if let Some(qi) = self.q_inv.as_mut() {
            qi.swap_rows(a, b);
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        negate_row(&mut self.a, i)?;
        if let Some(p) = self.p.as_mut() {
            negate_row(p, i)?;
        }
        if let Some(pi) = self.p_inv.as_mut() {
            negate_col(pi, i)?;
        }
        Some(())
    }

    /// Smallest nonzero entry of the trailing block, stopping early at a unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if !v.abs_less(self.a.get(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Smallest nonzero entry among row `t` and column `t`.
    fn find_cross_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let cells = (t..self.a.cols()).map(|j| (t, j)).chain((t + 1..self.a.rows()).map(|i| (i, t)));
        for (i, j) in cells {
            let v = self.a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if !v.abs_less(self.a.get(bi, bj)) => {}
                _ => best = Some((i, j)),
            }
        }
        best
    }

    fn run(&mut self) -> Option<Vec<T>> {
        let limit = self.a.rows().min(self.a.cols());
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows() {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.get(i, t).quot(self.a.get(t, t))?;
                    self.row_op(i, t, &q, t)?;
                    if !self.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.a.cols() {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.get(t, j).quot(self.a.get(t, t))?;
                    self.col_op(j, t, &q, t)?;
                    if !self.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
                let (ci, cj) = self.find_cross_pivot(t).expect("pivot row is nonzero");
                self.swap_rows(t, ci);
                self.swap_cols(t, cj);
            }
            if self.a.get(t, t).negative() {
                self.negate_row(t)?;
            }
            diagonal.push(self.a.get(t, t).clone());
            t += 1;
        }
        Some(diagonal)
    }
}

fn run_generic<T: Euclid>(a: Matrix<T>, track: Track) -> Option<(Vec<T>, [Option<Matrix<T>>; 4])> {
    let (m, n) = (a.rows(), a.cols());
    let mut work = Work {
        a,
        p: track.rows.then(|| identity(m)),
        p_inv: track.rows.then(|| identity(m)),
        q: track.cols.then(|| identity(n)),
        q_inv: track.cols.then(|| identity(n)),
    };
    let diag = work.run()?;
    Some((diag, [work.p, work.p_inv, work.q, work.q_inv]))
}

/// Diagonalizes `a`, recording the requested transforms.
pub fn diagonalize(a: &IntMatrix, track: Track) -> Diagonalization {
    if let Some(small) = a.to_i64() {
        if let Some((diag, [p, p_inv, q, q_inv])) = run_generic(small, track) {
            return Diagonalization {
                diagonal: diag.into_iter().map(BigInt::from).collect(),
                p: p.map(|m| m.to_big()),
                p_inv: p_inv.map(|m| m.to_big()),
                q: q.map(|m| m.to_big()),
                q_inv: q_inv.map(|m| m.to_big()),
            };
        }
    }
    let (diag, [p, p_inv, q, q_inv]) = run_generic(a.clone(), track).expect("BigInt arithmetic cannot overflow");
    Diagonalization { diagonal: diag, p, p_inv, q, q_inv }
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    diagonalize(a, Track::NONE).rank()
}

/// Rewrites cyclic orders `Z/d_1 + ... + Z/d_k` as a divisibility chain, dropping units.
pub fn invariant_factors_of(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    for d in orders.iter_mut() {
        *d = d.abs();
    }
    orders.retain(|d| !d.is_one() && !d.is_zero());
    let k = orders.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = orders[i].gcd(&orders[j]);
            let l = orders[i].lcm(&orders[j]);
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

/// Invariant factors (greater than one) of the cokernel torsion of `a`.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    invariant_factors_of(diagonalize(a, Track::NONE).diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let d = diagonalize(a, Track::ALL);
        let p = d.p.as_ref().unwrap();
        let q = d.q.as_ref().unwrap();
        let prod = p.mul(a).mul(q);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let expect =
                    if i == j && i < d.rank() { d.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(prod.get(i, j), &expect);
            }
        }
        let m = a.rows();
        let n = a.cols();
        assert_eq!(p.mul(d.p_inv.as_ref().unwrap()), IntMatrix::identity(m));
        assert_eq!(q.mul(d.q_inv.as_ref().unwrap()), IntMatrix::identity(n));
    }

    #[test]
    fn small_cases() {
        let a = IntMatrix::from_i64(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        check(&a);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let z = IntMatrix::zeros(2, 3);
        check(&z);
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let a = IntMatrix::from_i64(vec![vec![big, big - 1], vec![big - 1, big - 3]], 2);
        check(&a);
    }

    #[test]
    fn chain_normalization() {
        let f = invariant_factors_of(vec![BigInt::from(4), BigInt::from(6), BigInt::from(1)]);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(12)]);
    }

    proptest::proptest! {
        #[test]
        fn transforms_reproduce_diagonal(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let a = IntMatrix::from_i64(entries.chunks(4).map(|c| c.to_vec()).collect(), 4);
            check(&a);
        }
    }
}
