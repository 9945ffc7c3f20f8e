use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, vals: &[i64]) -> Self {
        Self::from_vec(field, rows, cols, vals.iter().map(|&v| field.from_i64(v)).collect())
    }

    /// Column vector.
    pub fn column_vector(field: &F, v: Vec<F::Elem>) -> Self {
        let n = v.len();
        Self::from_vec(field, n, 1, v)
    }

    /// The `i`-th standard basis column of length `n`.
    pub fn unit_column(field: &F, n: usize, i: usize) -> Self {
        let mut m = Self::zeros(field, n, 1);
        m.data[i] = field.one();
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn data_mut(&mut self) -> &mut [F::Elem] {
        &mut self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let data = self.field.matmul(self.rows, self.cols, other.cols, &self.data, &other.data);
        Matrix { field: self.field.clone(), rows: self.rows, cols: other.cols, data }
    }

    /// Product with a column vector given as a slice.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "incompatible shapes for product");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|a| self.field.mul(a, c))
    }

    pub fn map(&self, op: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(op).collect() }
    }

    /// Horizontal concatenation of matrices with equal row counts.
    pub fn hstack(field: &F, rows: usize, parts: &[&Self]) -> Self {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                assert_eq!(p.rows, rows, "hstack row mismatch");
                data.extend_from_slice(p.row(i));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Vertical concatenation of matrices with equal column counts.
    pub fn vstack(field: &F, cols: usize, parts: &[&Self]) -> Self {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].clone_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, nrows: usize, c0: usize, ncols: usize) -> Self {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols, "block out of range");
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in r0..r0 + nrows {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c0 + ncols]);
        }
        Matrix { field: self.field.clone(), rows: nrows, cols: ncols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(idx.iter().map(|&j| row[j].clone()));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: idx.len(), data }
    }

    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = self.field.rref_in_place(m.rows, m.cols, &mut m.data, true);
        Rref { matrix: m, pivots }
    }

    /// Pivot columns of the reduced row echelon form, consuming `self`.
    pub fn into_rref(mut self) -> Rref<F> {
        let pivots = self.field.rref_in_place(self.rows, self.cols, &mut self.data, true);
        Rref { matrix: self, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.field.rank_of(self.rows, self.cols, &self.data)
    }

    /// Nonzero rows of the reduced row echelon form: the canonical basis of the row space.
    pub fn row_space(&self) -> Self {
        let Rref { matrix, pivots } = self.rref();
        matrix.block(0, pivots.len(), 0, self.cols)
    }

    /// Canonical kernel basis as rows, one per free column in increasing order.
    pub fn kernel_rows(&self) -> Self {
        let Rref { matrix: r, pivots } = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Canonical kernel basis as columns.
    pub fn kernel_basis(&self) -> Self {
        self.kernel_rows().transpose()
    }

    /// Indices `j` such that the standard vectors `e_j` complement the column space.
    pub fn cokernel_indices(&self) -> Vec<usize> {
        let pivots = self.transpose().rref().pivots;
        complement(&pivots, self.rows)
    }

    /// Standard-vector representatives of a basis of `target / column space`, as columns.
    pub fn cokernel_basis(&self) -> Self {
        let idx = self.cokernel_indices();
        let mut m = Self::zeros(&self.field, self.rows, idx.len());
        for (c, &j) in idx.iter().enumerate() {
            m.set(j, c, self.field.one());
        }
        m
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&self.field, n, &[self, &Self::identity(&self.field, n)]);
        let Rref { matrix, pivots } = aug.into_rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.block(0, n, n, n))
    }

    /// Rewrites a basis (rows) of a subspace `K` into the canonical kernel form:
    /// the basis that `kernel_rows` returns for any matrix with kernel `K`.
    pub fn canonical_kernel_form(&self) -> Self {
        let n = self.cols;
        let rev: Vec<usize> = (0..n).rev().collect();
        let r = self.select_cols(&rev).row_space();
        let mut out = r.select_cols(&rev);
        // Rows are ordered by decreasing free column; reverse to increasing.
        let k = out.rows;
        let order: Vec<usize> = (0..k).rev().collect();
        out = out.select_rows(&order);
        out
    }
}

/// Canonical kernel rows read off a reduced row echelon form.
pub fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize]) -> Matrix<F> {
    let f = r.field();
    let n = r.cols();
    let free = complement(pivots, n);
    let mut k = Matrix::zeros(f, free.len(), n);
    for (t, &j) in free.iter().enumerate() {
        k.set(t, j, f.one());
        for (s, &p) in pivots.iter().enumerate() {
            let v = r.get(s, j);
            if !f.is_zero(v) {
                k.set(t, p, f.neg(v));
            }
        }
    }
    k
}

/// Sorted complement of a sorted index set inside `0..n`.
pub fn complement(idx: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n.saturating_sub(idx.len()));
    let mut it = idx.iter().peekable();
    for j in 0..n {
        if it.peek() == Some(&&j) {
            it.next();
        } else {
            out.push(j);
        }
    }
    out
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>({}x{})[", self.field.spec(), self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
