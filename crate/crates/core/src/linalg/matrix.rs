use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::scalar::{add_product, is_zero_vec, zeros, Scalar};

/// Dense row-major matrix over a [`Scalar`] field.
///
/// Dimensions are fixed at construction.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: zeros(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<S>], rows: usize) -> Result<Self> {
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column {j} has length {}, expected {rows}",
                c.len()
            )));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| S::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    add_product(&mut acc, a, b);
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::<S>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].plus(&a.times(b));
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entries flattened row by row.
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn same_shape(&self, other: &Matrix<S>) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row-echelon form.
    ///
    /// Pivots are chosen in the leftmost column that still has a nonzero
    /// entry at or below the current row, taking the topmost such row.
    pub fn rref(&self) -> Matrix<S> {
        let (rows, _) = rref_rows(self.row_vecs(), self.cols);
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.row_vecs(), self.cols).1.len()
    }

    /// Null space as a subspace of `S^cols`.
    pub fn kernel(&self) -> Subspace<S> {
        let (rows, pivots) = rref_rows(self.row_vecs(), self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// Column space as a subspace of `S^rows`.
    pub fn image(&self) -> Subspace<S> {
        Subspace::span(self.rows, self.transpose().row_vecs()).expect("columns have the ambient length")
    }

    /// Solves `self * x = b`.
    ///
    /// Returns `None` when the system is inconsistent. The particular solution
    /// sets every free variable to zero.
    pub fn solve(&self, b: &[S]) -> Result<Option<Solution<S>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented: Vec<Vec<S>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(augmented, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = rows[i][self.cols].clone();
        }
        let coeff_rows: Vec<Vec<S>> = rows
            .into_iter()
            .take(pivots.len())
            .map(|mut r| {
                r.pop();
                r
            })
            .collect();
        let kernel = kernel_from_rref(&coeff_rows, &pivots, self.cols);
        Ok(Some(Solution { particular, kernel }))
    }
}

/// Particular solution plus the homogeneous solution space.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<S> {
    pub particular: Vec<S>,
    pub kernel: Subspace<S>,
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row reduction on owned rows. Returns the reduced rows (zero rows at the
/// bottom) and the pivot column of each nonzero row.
pub(crate) fn rref_rows<S: Scalar>(mut rows: Vec<Vec<S>>, cols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut support: Vec<usize> = Vec::with_capacity(cols);
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = S::one().over(&rows[r][c]);
        support.clear();
        for j in c..cols {
            if !rows[r][j].is_zero() {
                rows[r][j] = rows[r][j].times(&inv);
                support.push(j);
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].minus(&factor.times(&pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Kernel basis read off a reduced row-echelon form: one vector per free
/// column, with that free variable set to one.
pub(crate) fn kernel_from_rref<S: Scalar>(rows: &[Vec<S>], pivots: &[usize], cols: usize) -> Subspace<S> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for f in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = zeros(cols);
        v[f] = S::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = rows[i][f].negated();
        }
        vectors.push(v);
    }
    Subspace::span(cols, vectors).expect("kernel vectors have the ambient length")
}

/// Precomputed elimination for repeated solves against one matrix.
///
/// Stores the rows of the transform `E` with `E * A = rref(A)` restricted to
/// pivot rows, so a solve is one dense product plus a consistency check
/// against `A` itself.
#[derive(Clone)]
pub struct Factorization<S> {
    matrix: Matrix<S>,
    pivots: Vec<usize>,
    transform: Vec<Vec<S>>,
}

impl<S: Scalar> Factorization<S> {
    pub fn new(matrix: Matrix<S>) -> Self {
        let (m, n) = (matrix.rows(), matrix.cols());
        let augmented: Vec<Vec<S>> = (0..m)
            .map(|i| {
                let mut r = matrix.row(i).to_vec();
                r.extend(zeros::<S>(m));
                r[n + i] = S::one();
                r
            })
            .collect();
        // Only pivots inside the first n columns matter; restrict the search.
        let (rows, pivots) = rref_rows_limited(augmented, n, n + m);
        let transform = rows.into_iter().take(pivots.len()).map(|r| r[n..].to_vec()).collect();
        Factorization {
            matrix,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Particular solution (free variables zero) or `None` if inconsistent.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.matrix.rows()
            )));
        }
        let support: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
        let mut x = zeros(self.matrix.cols());
        for (k, &p) in self.pivots.iter().enumerate() {
            let mut acc = S::zero();
            for &i in &support {
                add_product(&mut acc, &self.transform[k][i], &b[i]);
            }
            x[p] = acc;
        }
        if self.matrix.mul_vec(&x)? == b {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }
}

impl<S: Scalar> std::fmt::Debug for Factorization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Factorization")
            .field("matrix", &self.matrix)
            .field("pivots", &self.pivots)
            .finish()
    }
}

/// Like [`rref_rows`] but only looks for pivots among the first `pivot_cols`
/// columns while still applying operations across all `cols`.
fn rref_rows_limited<S: Scalar>(mut rows: Vec<Vec<S>>, pivot_cols: usize, cols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut support = Vec::with_capacity(cols);
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = S::one().over(&rows[r][c]);
        support.clear();
        for j in c..cols {
            if !rows[r][j].is_zero() {
                rows[r][j] = rows[r][j].times(&inv);
                support.push(j);
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].minus(&factor.times(&pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}
