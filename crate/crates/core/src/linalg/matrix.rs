//! Small dense row-major matrices over exact rationals or binary floats.
//!
//! Exact (`QMatrix`) and float (`FMatrix`) matrices are distinct types; the only
//! bridge between them is [`QMatrix::to_f64`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{Num, Signed, Zero};

use super::rational::{self, Rational};
use crate::error::Error;

pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
}

impl Scalar for f64 {}
impl Scalar for Rational {}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type FMatrix = Matrix<f64>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Linear combination `sum_i coeffs[i] * mats[i]`; `mats` must be non-empty
    /// unless `shape` is given.
    pub fn combination(coeffs: &[T], mats: &[Self], shape: (usize, usize)) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let mut out = Self::zeros(shape.0, shape.1);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            out = &out + &m.scale(c);
        }
        out
    }

    /// Places `self` at block offset `(r, c)` inside `target`.
    pub fn write_block(&self, target: &mut Self, r: usize, c: usize) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                target[(r + i, c + j)] = self[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r + i, c + j)].clone();
            }
        }
        out
    }

    /// Smallest `d <= rows` with `self^d = 0`, if the matrix is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        if self.is_zero() {
            return Some(if n == 0 { 0 } else { 1 });
        }
        let mut p = self.clone();
        for d in 2..=n {
            p = p.matmul(self);
            if p.is_zero() {
                return Some(d);
            }
        }
        None
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form: the reduced matrix and its pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in 0..a.cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..a.cols {
                let sub = f.clone() * a[(r, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - sub;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Exact basis of `ker(m)`, one vector per free column of the echelon form.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = rational::rat(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Nonzero rows of the echelon form: a basis of the row space.
pub fn row_space_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

impl QMatrix {
    pub fn to_f64(&self) -> FMatrix {
        self.map(rational::to_f64)
    }

    /// Induced 1-norm (maximum absolute column sum), exact.
    pub fn norm1(&self) -> Rational {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(Rational::zero(), |acc, i| acc + self[(i, j)].abs()))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn inverse(&self) -> Result<QMatrix, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        self.write_block(&mut aug, 0, 0);
        QMatrix::identity(n).write_block(&mut aug, 0, n);
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }
}

impl FMatrix {
    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &FMatrix) -> f64 {
        (self - other).max_abs()
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &FMatrix) -> Result<FMatrix, Error> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[(i, c)].abs().total_cmp(&a[(j, c)].abs()))
                .expect("non-empty range");
            if a[(p, c)].abs() <= scale * 1e-14 {
                return Err(Error::Singular);
            }
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                for j in 0..m {
                    b.data.swap(p * m + j, c * m + j);
                }
            }
            for i in c + 1..n {
                let f = a[(i, c)] / a[(c, c)];
                if f == 0.0 {
                    continue;
                }
                for j in c..n {
                    a[(i, j)] -= f * a[(c, j)];
                }
                for j in 0..m {
                    b[(i, j)] -= f * b[(c, j)];
                }
            }
        }
        for c in (0..n).rev() {
            for j in 0..m {
                let mut s = b[(c, j)];
                for k in c + 1..n {
                    s -= a[(c, k)] * b[(k, j)];
                }
                b[(c, j)] = s / a[(c, c)];
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<FMatrix, Error> {
        self.solve(&FMatrix::identity(self.rows))
    }
}

pub fn vec_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[f64], k: f64) -> Vec<f64> {
    a.iter().map(|x| x * k).collect()
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{rat, ratio};
    use proptest::prelude::*;

    fn q(rows: Vec<Vec<i64>>) -> QMatrix {
        QMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_is_injective() {
        assert!(nullspace(&QMatrix::identity(2)).is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let k = nullspace(&q(vec![vec![1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone() + k[0][1].clone(), rat(0));
        assert_ne!(k[0][0], rat(0));
    }

    #[test]
    fn exact_inverse() {
        let m = q(vec![vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert!(q(vec![vec![1, 2], vec![2, 4]]).inverse().is_err());
    }

    #[test]
    fn norm1_exact() {
        let m = QMatrix::from_rows(vec![vec![ratio(1, 2), rat(-3)], vec![rat(1), rat(0)]]);
        assert_eq!(m.norm1(), rat(3));
    }

    #[test]
    fn float_solve() {
        let a = FMatrix::from_rows(vec![vec![0.0, 2.0], vec![1.0, 1.0]]);
        let x = a
            .solve(&FMatrix::from_rows(vec![vec![2.0], vec![3.0]]))
            .unwrap();
        assert!((x[(0, 0)] - 2.0).abs() < 1e-15 && (x[(1, 0)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nilpotency() {
        let n = q(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(n.nilpotency_index(), Some(3));
        assert_eq!(QMatrix::identity(2).nilpotency_index(), None);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..=3, 12), rows in 1usize..=4) {
            let cols = 12 / rows.max(1);
            let cols = cols.min(6);
            let data: Vec<Rational> = entries.iter().take(rows * cols).map(|&v| rat(v)).collect();
            let m = QMatrix::new(rows, cols, data);
            let kernel = nullspace(&m);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            let mut stacked = row_space_basis(&m);
            stacked.extend(kernel.iter().cloned());
            let full = if stacked.is_empty() { 0 } else { rank(&QMatrix::from_rows(stacked)) };
            prop_assert_eq!(full, cols);
        }
    }
}
