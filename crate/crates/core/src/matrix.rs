//! Dense exact matrices, rank and kernel.
//!
//! Over ℚ elimination is fraction-free (Bareiss) on a row-scaled integer
//! copy; over 𝔽_p it is ordinary Gauss-Jordan. Both choose the first nonzero
//! entry of a column as pivot so results are reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational, Rationals, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Result of [`Matrix::rank_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel<E> {
    pub rank: usize,
    /// Pivot columns of the echelon form, ascending.
    pub pivots: Vec<usize>,
    /// `cols - rank` independent vectors spanning the right kernel.
    pub kernel: Vec<Vec<E>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(field: F, rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, v)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: F, cols: &[Vec<F::Elem>]) -> Self {
        let c = cols.len();
        let r = cols.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zeros(field, r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        let mut m = Self::from_rows(self.field.clone(), rows);
        m.cols = self.cols;
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let cols: Vec<Vec<F::Elem>> = idx.iter().map(|&j| self.col(j)).collect();
        let mut m = Self::from_cols(self.field.clone(), &cols);
        m.rows = self.rows;
        if cols.is_empty() {
            m.entries.clear();
        }
        m
    }

    /// Exact rank together with a kernel basis.
    pub fn rank_kernel(&self) -> RankKernel<F::Elem> {
        F::rank_kernel(self)
    }

    pub fn rank(&self) -> usize {
        self.rank_kernel().rank
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn determinant(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det = det * piv.clone();
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                let f = a[r * n + c].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = a[r * n + j].clone() - f.clone() * a[c * n + j].clone();
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(self.field.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let pivots = gauss_jordan(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.field.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = gauss_jordan(&mut aug);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// In-place reduced row echelon form; returns pivot columns.
fn gauss_jordan<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().unwrap();
        for j in c..cols {
            let v = m.get(r, j).clone() * inv.clone();
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and kernel by Gauss-Jordan elimination in the field.
pub fn gauss_rank_kernel<F: Field>(m: &Matrix<F>) -> RankKernel<F::Elem> {
    let mut a = m.clone();
    let pivots = gauss_jordan(&mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![m.field.zero(); m.cols];
            v[f] = m.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a.get(i, f).clone();
            }
            v
        })
        .collect();
    RankKernel {
        rank: pivots.len(),
        pivots,
        kernel,
    }
}

/// Rank and kernel over ℚ by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators. Kernel vectors
/// are returned as primitive integer vectors whose first nonzero entry is
/// positive.
pub fn bareiss_rank_kernel(m: &Matrix<Rationals>) -> RankKernel<Rational> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let lcm = m
            .row(r)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.extend(m.row(r).iter().map(|x| x.numer() * (&lcm / x.denom())));
    }

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let num = &piv * &a[i * cols + j] - &lead * &a[r * cols + j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i * cols + j] = num / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }

    let rank = pivots.len();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            // back substitution over ℚ on the integer echelon form
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for i in (0..rank).rev() {
                let pc = pivots[i];
                let s = (pc + 1..cols).fold(BigRational::zero(), |acc, j| {
                    if x[j].is_zero() {
                        acc
                    } else {
                        acc + BigRational::from_integer(a[i * cols + j].clone()) * &x[j]
                    }
                });
                x[pc] = -s / BigRational::from_integer(a[i * cols + pc].clone());
            }
            primitive_integer_vector(&x)
        })
        .collect();
    RankKernel {
        rank,
        pivots,
        kernel,
    }
}

fn primitive_integer_vector(x: &[BigRational]) -> Vec<Rational> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.into_iter()
        .map(|v| Rational(BigRational::from_integer(v / &g * &sign)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn identity_has_full_rank() {
        let rk = Matrix::identity(Rationals, 3).rank_kernel();
        assert_eq!(rk.rank, 3);
        assert!(rk.kernel.is_empty());
        let rk = Matrix::identity(PrimeField::default(), 3).rank_kernel();
        assert_eq!(rk.rank, 3);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let rk = Matrix::zeros(Rationals, 2, 4).rank_kernel();
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.kernel.len(), 4);
    }

    #[test]
    fn rank_one_example() {
        let m = Matrix::from_int_rows(Rationals, &[&[1, 2], &[2, 4]]);
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel, vec![vec![Rational::from_int(2), Rational::from_int(-1)]]);

        let f = PrimeField::default();
        let rk = Matrix::from_int_rows(f, &[&[1, 2], &[2, 4]]).rank_kernel();
        assert_eq!(rk.rank, 1);
        // (2, -1) spans the same line as (-2, 1)
        let v = &rk.kernel[0];
        assert_eq!(v[0] + v[1] * f.from_i64(2), f.zero());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_int_rows(Rationals, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), Rational::from_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Rationals, 3));
        let s = Matrix::from_int_rows(Rationals, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.determinant().is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_int_rows(Rationals, &[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Rational::from_int(3), Rational::from_int(1)]).unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::from_int(1)]);
        let s = Matrix::from_int_rows(Rationals, &[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[Rational::from_int(1), Rational::from_int(3)]).is_none());
    }

    #[test]
    fn bareiss_handles_fractions() {
        let q = |n, d| Rational::new(n, d);
        let m = Matrix::from_rows(
            Rationals,
            vec![
                vec![q(1, 2), q(1, 3), q(1, 4)],
                vec![q(1, 3), q(1, 4), q(1, 5)],
                vec![q(5, 6), q(7, 12), q(9, 20)],
            ],
        );
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 2);
        let v = &rk.kernel[0];
        assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }
}
