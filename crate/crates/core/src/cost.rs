use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Cell;

/// An `m × n` matrix of finite, nonnegative costs, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> CostMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::DimensionMismatch { expected: (1, 1), found: (m, n) });
        }
        let mut data = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedMatrix { row: i, expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Self::from_vec(m, n, data)
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: (rows, cols), found: (data.len(), 1) });
        }
        for (idx, v) in data.iter().enumerate() {
            let (row, col) = (idx / cols, idx % cols);
            if !v.is_finite() || v.partial_cmp(v).is_none() {
                return Err(Error::NonFiniteCost { row, col });
            }
            if *v < T::zero() {
                return Err(Error::NegativeCost { row, col });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::from_vec(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, (i, j): Cell) -> T {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    /// Reorders rows and columns: entry `(s, t)` of the result is entry
    /// `(row_order[s], col_order[t])` of `self`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Self> {
        if row_order.len() != self.rows || col_order.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: (row_order.len(), col_order.len()) });
        }
        Self::from_fn(self.rows, self.cols, |s, t| self.get((row_order[s], col_order[t])))
    }

    pub fn min_entry(&self) -> T {
        self.data.iter().copied().fold(self.data[0], T::min_of)
    }

    pub fn max_entry(&self) -> T {
        self.data.iter().copied().fold(self.data[0], T::max_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_entries() {
        assert!(CostMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).is_ok());
        assert_eq!(CostMatrix::from_rows(vec![vec![1.0, -2.0]]), Err(Error::NegativeCost { row: 0, col: 1 }));
        assert_eq!(
            CostMatrix::from_rows(vec![vec![1.0], vec![f64::INFINITY]]),
            Err(Error::NonFiniteCost { row: 1, col: 0 })
        );
        assert!(matches!(CostMatrix::from_rows(vec![vec![1, 2], vec![3]]), Err(Error::RaggedMatrix { row: 1, .. })));
        assert!(CostMatrix::<i64>::from_rows(vec![]).is_err());
    }

    #[test]
    fn permutation_reindexes() {
        let c = CostMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let p = c.permuted(&[1, 0], &[2, 0, 1]).unwrap();
        assert_eq!(p.to_rows(), vec![vec![6, 4, 5], vec![3, 1, 2]]);
        assert_eq!((c.min_entry(), c.max_entry()), (1, 6));
    }
}
