use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::measure::MaxPlusMeasure;
use crate::scalar::{ExtendedReal, Finite, NegInf, Scalar};
use crate::Cell;

/// An `m × n` matrix over the extended reals with every entry `≤ 0`.
///
/// Constructing a `Plan` does not check the marginal constraints; use
/// [`is_plan`] for that. The support is the set of finite cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan<T> {
    rows: usize,
    cols: usize,
    data: Vec<ExtendedReal<T>>,
}

impl<T: Scalar> Plan<T> {
    pub fn from_rows(rows: Vec<Vec<ExtendedReal<T>>>) -> Result<Self> {
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

    pub fn from_vec(rows: usize, cols: usize, data: Vec<ExtendedReal<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: (rows, cols), found: (data.len(), 1) });
        }
        for (idx, v) in data.iter().enumerate() {
            if let Finite(x) = v {
                let (row, col) = (idx / cols, idx % cols);
                if !x.is_finite() || x.partial_cmp(x).is_none() {
                    return Err(Error::NonFiniteWeight { index: idx });
                }
                if *x > T::zero() {
                    return Err(Error::PositivePlanEntry { row, col });
                }
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtendedReal<T>) -> Result<Self> {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::from_vec(rows, cols, data)
    }

    /// The all-`NegInf` matrix. Never a plan, but a convenient starting point.
    pub fn neg_inf(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![NegInf; rows * cols] }
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

    pub fn get(&self, (i, j): Cell) -> ExtendedReal<T> {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, (i, j): Cell, v: ExtendedReal<T>) {
        debug_assert!(v <= Finite(T::zero()));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExtendedReal<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExtendedReal<T>>> {
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Finite cells in row-major order.
    pub fn support(&self) -> Vec<Cell> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(k, _)| (k / self.cols, k % self.cols))
            .collect()
    }

    pub fn row_max(&self, i: usize) -> ExtendedReal<T> {
        self.row(i).iter().fold(NegInf, |a, &b| a.oplus(b))
    }

    pub fn col_max(&self, j: usize) -> ExtendedReal<T> {
        (0..self.rows).fold(NegInf, |a, i| a.oplus(self.get((i, j))))
    }
}

/// True iff every row maximum of `h` equals the matching weight of `mu` and
/// every column maximum equals the matching weight of `nu`.
pub fn is_plan<T: Scalar>(h: &Plan<T>, mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> Result<bool> {
    if h.dims() != (mu.len(), nu.len()) {
        return Err(Error::DimensionMismatch { expected: (mu.len(), nu.len()), found: h.dims() });
    }
    let rows_ok = (0..h.rows()).all(|i| h.row_max(i) == Finite(mu.weight(i)));
    let cols_ok = (0..h.cols()).all(|j| h.col_max(j) == Finite(nu.weight(j)));
    Ok(rows_ok && cols_ok)
}

/// The max-plus transport cost `max_{i,j} (c_ij + h_ij)`.
pub fn objective<T: Scalar>(h: &Plan<T>, c: &CostMatrix<T>) -> Result<ExtendedReal<T>> {
    if h.dims() != c.dims() {
        return Err(Error::DimensionMismatch { expected: c.dims(), found: h.dims() });
    }
    Ok(h.data.iter().zip(c.as_slice()).fold(NegInf, |acc, (&hv, &cv)| acc.oplus(hv.otimes(Finite(cv)))))
}

/// The product plan `k_i + l_j`, always feasible.
pub fn trivial_plan<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> Plan<T> {
    Plan::from_fn(mu.len(), nu.len(), |i, j| Finite(mu.weight(i) + nu.weight(j)))
        .expect("sum of nonpositive weights is nonpositive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const N: ExtendedReal<i64> = NegInf;
    const fn f(v: i64) -> ExtendedReal<i64> {
        Finite(v)
    }

    fn example_one() -> (MaxPlusMeasure<i64>, MaxPlusMeasure<i64>) {
        (
            MaxPlusMeasure::new(vec![0, 0, -2, -3, -4, -4]).unwrap(),
            MaxPlusMeasure::new(vec![0, 0, 0, -1, -2, -2]).unwrap(),
        )
    }

    fn six_point_plan() -> Plan<i64> {
        Plan::from_rows(vec![
            vec![N, N, f(0), f(-1), N, f(-2)],
            vec![f(0), f(0), N, N, f(-2), N],
            vec![N, N, f(-2), N, N, N],
            vec![N, N, N, N, f(-3), N],
            vec![N, N, N, f(-4), N, N],
            vec![f(-4), N, N, N, N, N],
        ])
        .unwrap()
    }

    #[test]
    fn product_plan_is_a_plan() {
        let (mu, nu) = example_one();
        let h = trivial_plan(&mu, &nu);
        assert!(is_plan(&h, &mu, &nu).unwrap());
        assert_eq!(h.get((2, 3)), f(-3));
    }

    #[test]
    fn small_product_plan() {
        let mu = MaxPlusMeasure::new(vec![0, -1]).unwrap();
        let nu = MaxPlusMeasure::new(vec![0, -2]).unwrap();
        assert_eq!(trivial_plan(&mu, &nu).to_rows(), vec![vec![f(0), f(-2)], vec![f(-1), f(-3)]]);
        let z = MaxPlusMeasure::<i64>::fundamental(3);
        assert!(trivial_plan(&z, &z).as_ref_data().iter().all(|&v| v == f(0)));
    }

    #[test]
    fn all_neg_inf_is_not_a_plan() {
        let (mu, nu) = example_one();
        assert!(!is_plan(&Plan::neg_inf(6, 6), &mu, &nu).unwrap());
    }

    #[test]
    fn six_point_plan_is_feasible() {
        let (mu, nu) = example_one();
        assert!(is_plan(&six_point_plan(), &mu, &nu).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let (mu, nu) = example_one();
        assert!(is_plan(&Plan::neg_inf(6, 5), &mu, &nu).is_err());
        let c = CostMatrix::from_rows(vec![vec![1, 2]]).unwrap();
        assert!(objective(&Plan::<i64>::neg_inf(2, 2), &c).is_err());
    }

    #[test]
    fn objective_values() {
        let h = Plan::from_rows(vec![vec![f(0)]]).unwrap();
        let c = CostMatrix::from_rows(vec![vec![7]]).unwrap();
        assert_eq!(objective(&h, &c).unwrap(), f(7));

        // Support {(1,2),(2,2),(3,1),(3,3)} with costs 1, 2, 3, 4.
        let h = Plan::from_rows(vec![vec![N, f(0), N], vec![N, f(0), N], vec![f(0), N, f(0)]]).unwrap();
        let c = CostMatrix::from_rows(vec![vec![5, 1, 5], vec![5, 2, 5], vec![3, 5, 4]]).unwrap();
        assert_eq!(objective(&h, &c).unwrap(), f(4));

        let z = MaxPlusMeasure::<i64>::fundamental(3);
        assert_eq!(objective(&trivial_plan(&z, &z), &c).unwrap(), f(c.max_entry()));
    }

    #[test]
    fn positive_entries_rejected() {
        assert_eq!(Plan::from_rows(vec![vec![f(0), f(1)]]), Err(Error::PositivePlanEntry { row: 0, col: 1 }));
    }

    proptest! {
        #[test]
        fn objective_is_monotone(
            entries in prop::collection::vec(prop_oneof![Just(N), (-5i64..=0).prop_map(f)], 9),
            costs in prop::collection::vec(0i64..10, 9),
            cell in 0usize..9,
            drop in 1i64..4,
        ) {
            let h = Plan::from_vec(3, 3, entries).unwrap();
            let c = CostMatrix::from_vec(3, 3, costs).unwrap();
            let mut lower = h.clone();
            let cell = (cell / 3, cell % 3);
            lower.set(cell, match h.get(cell) { Finite(v) => Finite(v - drop), NegInf => NegInf });
            prop_assert!(objective(&lower, &c).unwrap() <= objective(&h, &c).unwrap());
            lower.set(cell, NegInf);
            prop_assert!(objective(&lower, &c).unwrap() <= objective(&h, &c).unwrap());
        }

        #[test]
        fn product_plan_always_feasible(
            mut k in prop::collection::vec(-6i64..=0, 1..6),
            mut l in prop::collection::vec(-6i64..=0, 1..6),
        ) {
            k[0] = 0;
            l[0] = 0;
            let mu = crate::measure::normalize_measure(&k).unwrap();
            let nu = crate::measure::normalize_measure(&l).unwrap();
            prop_assert!(is_plan(&trivial_plan(&mu, &nu), &mu, &nu).unwrap());
        }
    }

    impl<T> Plan<T> {
        fn as_ref_data(&self) -> &[ExtendedReal<T>] {
            &self.data
        }
    }
}
