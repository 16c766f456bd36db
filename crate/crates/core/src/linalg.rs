//! Dense matrices over `F_q` and Gaussian elimination.

use crate::gf::{Field, FieldElement};

/// A row-major dense matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows(field: &Field, cols: usize, rows: impl IntoIterator<Item = Vec<FieldElement>>) -> Matrix {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row.iter().map(|e| e.index() as u8));
            count += 1;
        }
        Matrix {
            field: field.clone(),
            rows: count,
            cols,
            data,
        }
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

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.data[r * self.cols + c] as u32).expect("entries are field elements")
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v.index() as u8;
    }

    /// Raw indices of row `r`.
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_elements(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// Keeps only the columns for which `keep` returns true.
    pub fn select_columns(&self, keep: impl Fn(usize) -> bool) -> Matrix {
        let kept: Vec<usize> = (0..self.cols).filter(|&c| keep(c)).collect();
        let mut data = Vec::with_capacity(self.rows * kept.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(kept.iter().map(|&c| row[c]));
        }
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: kept.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let cols = self.cols;
            let (lo, hi) = (a.min(b), a.max(b));
            let (head, tail) = self.data.split_at_mut(hi * cols);
            head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
        }
    }

    fn scale_row(&mut self, r: usize, c: FieldElement) {
        let table = self.field.mul_row(c);
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = table[*x as usize];
        }
    }

    /// `row[dst] -= f * row[src]`.
    fn eliminate(&mut self, dst: usize, src: usize, f: FieldElement) {
        let cols = self.cols;
        let field = &self.field;
        let mul = field.mul_row(field.neg(f));
        let (s, d): (&[u8], &mut [u8]) = if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * cols);
            (&head[src * cols..(src + 1) * cols], &mut tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(src * cols);
            (&tail[..cols], &mut head[dst * cols..(dst + 1) * cols])
        };
        for (x, &y) in d.iter_mut().zip(s) {
            if y != 0 {
                *x = field.add_row(FieldElement::from_index(*x))[mul[y as usize] as usize];
            }
        }
    }

    /// Reduces the matrix in place to reduced row echelon form and returns the
    /// pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.cols + c] != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.field.inv(self.get(r, c)).expect("pivot is nonzero");
            self.scale_row(r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if !f.is_zero() {
                        self.eliminate(i, r, f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        let rank = m.rref_in_place().len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn matrix(field: &Field, cols: usize, raw: &[Vec<u32>]) -> Matrix {
        Matrix::from_rows(field, cols, raw.iter().map(|r| r.iter().map(|&x| field.element(x).unwrap()).collect()))
    }

    /// Size of the row space, by closing the span under addition and scaling.
    fn span_size(m: &Matrix) -> usize {
        let field = m.field();
        let mut span: HashSet<Vec<FieldElement>> = HashSet::new();
        span.insert(vec![field.zero(); m.cols()]);
        for r in 0..m.rows() {
            let row = m.row_elements(r);
            let current: Vec<_> = span.iter().cloned().collect();
            for v in current {
                for c in field.elements() {
                    let w: Vec<_> = v.iter().zip(&row).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect();
                    span.insert(w);
                }
            }
        }
        span.len()
    }

    #[test]
    fn small_ranks() {
        let f3 = Field::with_order(3).unwrap();
        let m = matrix(&f3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let id = matrix(&f3, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(id.rank(), 3);
        assert_eq!(Matrix::zeros(&f3, 4, 5).rank(), 0);
        let f4 = Field::with_order(4).unwrap();
        // Row 2 is x * row 1 in F_4.
        let m = matrix(&f4, 2, &[vec![1, 2], vec![2, 3]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_shape() {
        let f5 = Field::with_order(5).unwrap();
        let m = matrix(&f5, 4, &[vec![0, 2, 4, 1], vec![0, 1, 2, 4], vec![3, 0, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.rows(), 3);
        assert_eq!(r.get(0, 0), f5.one());
        assert_eq!(r.get(1, 1), f5.one());
        assert_eq!(r.get(2, 3), f5.one());
        assert!(r.get(0, 1).is_zero() && r.get(0, 3).is_zero() && r.get(1, 3).is_zero());
    }

    proptest! {
        #[test]
        fn rank_matches_span_size(
            qi in 0usize..4, rows in 1usize..5, cols in 1usize..5,
            seed in prop::collection::vec(0u32..1000, 16),
        ) {
            let q = [2u64, 3, 4, 5][qi];
            let field = Field::with_order(q).unwrap();
            let raw: Vec<Vec<u32>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c] % q as u32).collect()).collect();
            let m = matrix(&field, cols, &raw);
            let rank = m.rank();
            prop_assert_eq!(span_size(&m), (q as usize).pow(rank as u32));
            prop_assert_eq!(span_size(&m.rref()), span_size(&m));
        }
    }
}
