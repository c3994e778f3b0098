use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// `diagonal = left · input · right` with `left`, `right` unimodular and the
/// diagonal entries non-negative, each dividing the next, zeros last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

/// Position of the nonzero entry of least absolute value in the trailing
/// submatrix starting at `(t, t)`; ties go to the lowest (row, column).
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form over the integers.
///
/// Deterministic: the pivot at each stage is the smallest nonzero entry (in
/// absolute value) of the remaining submatrix, ties broken by lowest
/// (row, column).
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = min_pivot(&d, t) {
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = d.get(i, t).div_floor(&pivot);
                let neg = -q;
                d.add_row_multiple(i, t, &neg);
                left.add_row_multiple(i, t, &neg);
                clean &= d.get(i, t).is_zero();
            }
            for j in (t + 1)..cols {
                let q = d.get(t, j).div_floor(&pivot);
                let neg = -q;
                d.add_col_multiple(j, t, &neg);
                right.add_col_multiple(j, t, &neg);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // remainders are strictly smaller than the pivot
                continue;
            }

            let offending = ((t + 1)..rows)
                .find(|&i| ((t + 1)..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }

    SmithDecomposition {
        diagonal: d,
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::determinant;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diagonal);
        assert!(s.diagonal.is_diagonal());
        assert!(determinant(&s.left).unwrap().abs().is_one());
        assert!(determinant(&s.right).unwrap().abs().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last: {f:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "{f:?}");
            }
        }
        s
    }

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        check(&IntMatrix::from_rows(rows))
            .invariant_factors()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(factors(&[vec![0, 1], vec![1, 2]]), vec![1, 1]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn rectangular_and_degenerate() {
        assert_eq!(factors(&[vec![2, 4, 6]]), vec![2]);
        assert_eq!(factors(&[vec![6], vec![4]]), vec![2]);
        assert_eq!(factors(&[vec![0, 3], vec![0, 0]]), vec![3, 0]);
        let empty = IntMatrix::zeros(0, 0);
        assert!(check(&empty).invariant_factors().is_empty());
    }

    #[test]
    fn deterministic_transforms() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![-3, 9, 7], vec![1, 1, 5]]);
        assert_eq!(smith_normal_form(&m), smith_normal_form(&m));
    }

    proptest! {
        #[test]
        fn decomposition_holds(rows in 1usize..=4, cols in 1usize..=4, seed in proptest::collection::vec(-9i64..=9, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 4..i * 4 + cols].to_vec()).collect();
            check(&IntMatrix::from_rows(&data));
        }
    }
}
