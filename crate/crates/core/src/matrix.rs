//! Dense row-major matrices over a [`Field`] and Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElement>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Columns `cols` of this matrix, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// `v^T M` for a row vector `v` of length `rows`.
    pub fn left_mul(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(coef, x));
            }
        }
        out
    }

    /// `M v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        self.row_iter()
            .map(|row| row.iter().zip(v).fold(FieldElement::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
            .collect()
    }

    /// Reduced row echelon form. Pivots are chosen left to right, taking the first
    /// row (from the top) with a nonzero entry in the column, so the result is
    /// deterministic. Returns the nonzero rows and the pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, rank);
            let inv = field.inv(m.get(rank, c)).expect("pivot is nonzero");
            m.scale_row(field, rank, inv);
            for r in 0..m.rows {
                if r != rank {
                    let factor = m.get(r, c);
                    if !factor.is_zero() {
                        m.sub_scaled_row(field, r, rank, factor);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        m.rows = rank;
        m.data.truncate(rank * m.cols);
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, field: &Field, r: usize, k: FieldElement) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = field.mul(*x, k);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_scaled_row(&mut self, field: &Field, target: usize, source: usize, factor: FieldElement) {
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[source * cols + c];
            if !s.is_zero() {
                let t = self.data[target * cols + c];
                self.data[target * cols + c] = field.sub(t, field.mul(factor, s));
            }
        }
    }
}
