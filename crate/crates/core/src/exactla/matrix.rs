//! Dense matrices over a finite field.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// A dense row-major matrix. Vectors acted on by a matrix are columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// JSON shape `{rows, cols, entries}` with each entry a coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|e| e.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElem::ONE;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Build from small integers reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| field.from_int(v))).collect();
        Matrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElem>], cols: usize) -> Matrix {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    /// Column matrix from a vector.
    pub fn column(field: &Field, v: &[FieldElem]) -> Matrix {
        Matrix { field: field.clone(), rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { FieldElem::ONE } else { FieldElem::ZERO }))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    f.axpy(&mut out.data[lo..hi], a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// Product for operands already known to be compatible.
    pub fn dot(&self, other: &Matrix) -> Matrix {
        self.mul(other).expect("compatible matrices")
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch in addition".into()));
        }
        let mut out = self.clone();
        self.field.axpy(&mut out.data, FieldElem::ONE, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        let mut out = self.clone();
        let m1 = self.field.neg(FieldElem::ONE);
        self.field.axpy(&mut out.data, m1, &other.data);
        Ok(out)
    }

    pub fn scale(&self, c: FieldElem) -> Matrix {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, c: FieldElem, other: &Matrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field.clone();
        f.axpy(&mut self.data, c, &other.data);
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.dot(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.dot(&base);
            }
        }
        Ok(result)
    }

    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            out.row_mut(i).copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn hstack(field: &Field, blocks: &[&Matrix], rows: usize) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(field: &Field, blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend_from_slice(&b.data);
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Reduced row echelon form. The pivot of each column is the first row
    /// (at or below the current one) with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("nonzero pivot");
            if inv != FieldElem::ONE {
                f.scale(&mut self.data[r * cols..(r + 1) * cols], inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let row = if i < r {
                    &mut before[i * cols..(i + 1) * cols]
                } else {
                    &mut after[(i - r - 1) * cols..(i - r) * cols]
                };
                let factor = row[c];
                if !factor.is_zero() {
                    f.axpy(&mut row[c..], f.neg(factor), &pivot_row[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows spanning `{x : A x = 0}`, one per free column, in RREF-derived order.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = FieldElem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = f.neg(r.get(row, fc));
            }
        }
        out
    }

    /// A solution of `A x = b`, with free variables set to zero, if one exists.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.row_mut(i)[self.cols] = b[i];
        }
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(&self.field, n));
        let Rref { matrix: r, pivots, .. } = aug.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Smallest e with `A^e = 0`.
    pub fn nilpotency_index(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Dimension("nilpotency of a non-square matrix".into()));
        }
        let n = self.rows;
        if self.is_zero() {
            return Ok(1);
        }
        let mut power = self.clone();
        for e in 2..=n.max(1) {
            power = power.dot(self);
            if power.is_zero() {
                return Ok(e);
            }
        }
        Err(Error::NotNilpotent)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|&e| self.field.coeffs(e)).collect(),
        }
    }

    pub fn from_json(field: &Field, json: &MatrixJson) -> Result<Matrix> {
        if json.entries.len() != json.rows * json.cols {
            return Err(Error::Parse("matrix entry count".into()));
        }
        let data = json.entries.iter().map(|c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: field.clone(), rows: json.rows, cols: json.cols, data })
    }

    /// Row space basis in RREF (zero rows dropped) together with pivot columns.
    pub fn row_space(&self) -> (Matrix, Vec<usize>) {
        let Rref { matrix, rank, pivots } = self.rref();
        (matrix.block(0, 0, rank, self.cols), pivots)
    }

    /// Apply a map to every entry (used for field embeddings).
    pub fn map_entries(&self, target: &Field, f: impl Fn(FieldElem) -> FieldElem) -> Matrix {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| f(e)).collect() }
    }
}

/// Coordinates of `v` with respect to a basis in RREF with the given pivots,
/// assuming `v` lies in its span.
pub fn echelon_coords(pivots: &[usize], v: &[FieldElem]) -> Vec<FieldElem> {
    pivots.iter().map(|&c| v[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = gf(2, 1);
        assert_eq!(Matrix::identity(&f2, 3).rref().rank, 3);
        let z = Matrix::zeros(&f2, 2, 5).rref();
        assert_eq!(z.rank, 0);
        assert!(z.pivots.is_empty());
        let f4 = gf(2, 2);
        let t = f4.gen();
        let t2 = f4.mul(t, t);
        let a = Matrix::from_rows(&f4, &[vec![t, f4.one()], vec![t2, t]], 2);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f2 = gf(2, 1);
        assert_eq!(Matrix::identity(&f2, 4).kernel_basis().rows(), 0);
        assert_eq!(Matrix::zeros(&f2, 3, 3).kernel_basis().rows(), 3);
        let k = Matrix::from_ints(&f2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, Matrix::from_ints(&f2, &[&[1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let f3 = gf(3, 1);
        let b: Vec<_> = [2, 0, 1].iter().map(|&v| f3.from_int(v)).collect();
        assert_eq!(Matrix::identity(&f3, 3).solve(&b).unwrap(), b);
        assert!(Matrix::zeros(&f3, 3, 3).solve(&b).is_none());
        let f2 = gf(2, 1);
        let x = Matrix::from_ints(&f2, &[&[1, 1]]).solve(&[f2.one()]).unwrap();
        assert_eq!(x, vec![f2.one(), f2.zero()]);
    }

    #[test]
    fn kron_and_direct_sum() {
        let f = gf(3, 1);
        let k = Matrix::identity(&f, 2).kron(&Matrix::identity(&f, 3)).unwrap();
        assert_eq!(k, Matrix::identity(&f, 6));
        let a = Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]);
        assert_eq!(a.direct_sum(&Matrix::zeros(&f, 0, 0)).unwrap(), a);
        let f4 = gf(2, 2);
        assert!(a.kron(&Matrix::identity(&f4, 1)).is_err());
    }

    #[test]
    fn nilpotency() {
        let f = gf(2, 1);
        assert_eq!(Matrix::zeros(&f, 3, 3).nilpotency_index().unwrap(), 1);
        let j = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(j.nilpotency_index().unwrap(), 3);
        assert_eq!(Matrix::identity(&f, 2).nilpotency_index(), Err(Error::NotNilpotent));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(5, 1);
        let a = Matrix::from_ints(&f, &[&[1, 2, 0], &[3, 1, 4], &[0, 1, 2]]);
        let inv = a.inverse().unwrap();
        assert!(a.dot(&inv).is_identity());
        assert!(Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
