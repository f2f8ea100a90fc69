use super::field::{Field, FieldElem};
use super::matrix::Matrix;

/// An incrementally built row space kept in reduced echelon form.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    field: Field,
    len: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new(field: &Field, len: usize) -> EchelonSpan {
        EchelonSpan { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduce `v` against the span in place; returns true if it became zero.
    pub fn reduce(&self, v: &mut [FieldElem]) -> bool {
        let f = &self.field;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if !c.is_zero() {
                f.axpy(v, f.neg(c), row);
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w)
    }

    /// Insert `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let mut w = v.to_vec();
        if self.reduce(&mut w) {
            return false;
        }
        let f = self.field.clone();
        let piv = w.iter().position(|e| !e.is_zero()).unwrap();
        let inv = f.inv(w[piv]).unwrap();
        f.scale(&mut w, inv);
        // keep the basis fully reduced
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if !c.is_zero() {
                f.axpy(row, f.neg(c), &w);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(pos, piv);
        self.rows.insert(pos, w);
        true
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, &self.rows, self.len)
    }
}
