//! Small dense matrices over an exact field, with Gauss–Jordan elimination.
//!
//! Everything here is exact: a kernel vector `v` satisfies `m·v = 0` with no
//! residual, and an affine solution reproduces the right-hand side identically.
//! Elimination skips zero entries, which matters because the constraint
//! matrices assembled elsewhere in the crate are mostly zero.

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{QSqrt2, Rational};
use crate::error::Error;

/// An exact field usable as a matrix scalar.
pub trait Field:
    Clone
    + PartialEq
    + Default
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for QSqrt2 {
    fn inv(&self) -> Self {
        self.recip()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed to describe a matrix with no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c).collect(),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + &(a.clone() * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    let v = std::mem::take(&mut m[(r, j)]);
                    m[(r, j)] = v * &inv;
                }
            }
            let pivot_row: Vec<(usize, F)> = (c..m.cols)
                .filter(|&j| !m[(r, j)].is_zero())
                .map(|j| (j, m[(r, j)].clone()))
                .collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, pv) in &pivot_row {
                    let v = std::mem::take(&mut m[(i, *j)]);
                    m[(i, *j)] = v - &(f.clone() * pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self·v = 0}`; exactly `cols − rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.rref().kernel_basis()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, 'b, F: Field> Mul<&'b Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &'b Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = std::mem::take(&mut out[(i, j)]);
                        out[(i, j)] = v + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a, 'b, F: Field> Add<&'b Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &'b Matrix<F>) -> Matrix<F> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }
}

impl<'a, 'b, F: Field> Sub<&'b Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &'b Matrix<F>) -> Matrix<F> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis restricted to the first `ncols` columns (the coefficient
    /// part when the matrix was augmented).
    fn kernel_basis_of_first(&self, ncols: usize) -> Vec<Vec<F>> {
        let m = &self.matrix;
        let pivots: Vec<usize> = self.pivots.iter().copied().filter(|&c| c < ncols).collect();
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); ncols];
                v[free] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    if !m[(row, free)].is_zero() {
                        v[pc] = -m[(row, free)].clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.kernel_basis_of_first(self.matrix.cols())
    }
}

/// `A·x = b` over the rationals.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub coefficient_matrix: Matrix<Rational>,
    pub rhs: Vec<Rational>,
}

/// Complete solution set `particular + span(kernel)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

impl LinearSystem {
    pub fn new(coefficient_matrix: Matrix<Rational>, rhs: Vec<Rational>) -> Self {
        assert_eq!(coefficient_matrix.rows(), rhs.len(), "rhs length mismatch");
        LinearSystem {
            coefficient_matrix,
            rhs,
        }
    }

    pub fn solve(&self) -> Result<AffineSolution<Rational>, Error> {
        solve_affine(&self.coefficient_matrix, &self.rhs)
    }
}

/// Solves `a·x = b`, returning a particular solution (free variables zero)
/// and a kernel basis, or [`Error::Inconsistent`].
pub fn solve_affine<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<AffineSolution<F>, Error> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let rref = aug.rref();
    if rref.pivots.last() == Some(&n) {
        return Err(Error::Inconsistent);
    }
    let mut particular = vec![F::zero(); n];
    for (row, &pc) in rref.pivots.iter().enumerate() {
        particular[pc] = rref.matrix[(row, n)].clone();
    }
    Ok(AffineSolution {
        particular,
        kernel: rref.kernel_basis_of_first(n),
    })
}

/// Repeated exact solves against a fixed full-column-rank matrix.
///
/// Picks a maximal set of independent rows once, inverts that square block,
/// and then checks every candidate solution against all rows.
#[derive(Clone, Debug)]
pub struct InjectiveSolver<F> {
    matrix: Matrix<F>,
    rows: Vec<usize>,
    block_inverse: Matrix<F>,
}

impl<F: Field> InjectiveSolver<F> {
    /// Fails with [`Error::RankDeficient`] when the columns are dependent.
    pub fn new(matrix: Matrix<F>) -> Result<Self, Error> {
        let n = matrix.cols();
        let rows = matrix.transpose().rref().pivots;
        if rows.len() != n {
            return Err(Error::RankDeficient {
                expected: n,
                actual: rows.len(),
            });
        }
        let block = Matrix::from_fn(n, n, |i, j| matrix[(rows[i], j)].clone());
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                block[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let r = aug.rref();
        let block_inverse = Matrix::from_fn(n, n, |i, j| r.matrix[(i, n + j)].clone());
        Ok(InjectiveSolver {
            matrix,
            rows,
            block_inverse,
        })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    /// The unique `x` with `matrix·x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.matrix.rows(), "rhs length mismatch");
        let sub: Vec<F> = self.rows.iter().map(|&r| b[r].clone()).collect();
        let x = self.block_inverse.mul_vec(&sub);
        (self.matrix.mul_vec(&x) == b).then_some(x)
    }
}
