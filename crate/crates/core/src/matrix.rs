//! Dense matrices over the Gaussian rationals and exact elimination.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A coordinate vector with respect to some fixed basis.
pub type Coords = Vec<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Row-major construction. Fails if `entries.len() != rows * cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams("matrix must be non-empty".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    /// The square matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Coords]) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zeros(n, n);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[GaussianRational]) -> Result<Coords> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Inverse via Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let rhs: Vec<Coords> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }).collect())
            .collect();
        // solve for all unit vectors at once; columns of the result are A^{-1} e_j
        let cols = eliminate(self, rhs)?;
        Matrix::from_columns(&cols)
    }

    /// A basis of the row space, in reduced row-echelon form.
    pub fn row_space_basis(&self) -> Vec<Coords> {
        let mut rows: Vec<Coords> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut basis_rows = 0;
        for col in 0..self.cols {
            let Some(p) = (basis_rows..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(basis_rows, p);
            let inv = rows[basis_rows][col].inv().expect("nonzero pivot");
            for v in rows[basis_rows].iter_mut() {
                *v *= &inv;
            }
            let pivot = rows[basis_rows].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == basis_rows || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            basis_rows += 1;
        }
        rows.truncate(basis_rows);
        rows
    }

    pub fn rank(&self) -> usize {
        self.row_space_basis().len()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.entries[i * self.cols + j]
    }
}

/// Solve `m · x = b_k` for every right-hand side `b_k` by Gaussian elimination
/// with first-nonzero pivoting. Zero entries are skipped, which keeps the
/// nearly triangular basis-change matrices cheap.
fn eliminate(m: &Matrix, rhs: Vec<Coords>) -> Result<Vec<Coords>> {
    let n = m.rows;
    let k = rhs.len();
    // augmented rows: [m | b_1 ... b_k]
    let mut rows: Vec<Coords> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(rhs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !rows[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        rows.swap(col, p);
        let inv = rows[col][col].inv().expect("nonzero pivot");
        for v in rows[col].iter_mut().skip(col) {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok((0..k).map(|j| rows.iter().map(|r| r[n + j].clone()).collect()).collect())
}

/// Exact solution of the square system `m · x = b`.
pub fn solve_linear(m: &Matrix, b: &[GaussianRational]) -> Result<Coords> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
    }
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let mut sols = eliminate(m, vec![b.to_vec()])?;
    Ok(sols.pop().expect("one right-hand side"))
}
