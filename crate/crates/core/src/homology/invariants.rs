use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match ((k + 1)..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -det } else { det })
}

/// Signature (positive minus negative inertia) of a symmetric matrix,
/// computed by rational congruence.
///
/// A nonzero diagonal pivot splits off a 1×1 block. When the diagonal of the
/// remainder vanishes but some off-diagonal entry `a` does not, the 2×2 block
/// `[[0, a], [a, 0]]` (signature 0) is split off instead.
pub fn signature(m: &IntMatrix) -> Result<i64> {
    if !m.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;

    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[p][p].clone();
            sig += if pivot.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| &a[i][j] - &a[i][p] * &a[p][j] / &pivot)
                        .collect()
                })
                .collect();
            continue;
        }
        let Some((p, q)) = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            // zero matrix: all remaining inertia is null
            break;
        };
        let off = a[p][q].clone();
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        // Schur complement of [[0, off], [off, 0]]:
        // a_ij - (a_ip a_qj + a_iq a_pj) / off
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / &off)
                    .collect()
            })
            .collect();
    }
    Ok(sig)
}
