//! Exact integer linear algebra: Smith normal form, determinants, signatures,
//! and the first homology of a surgered manifold.

mod invariants;
mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use invariants::{determinant, signature};
pub use matrix::IntMatrix;
pub(crate) use matrix::{json_int, json_int_vec};
pub use snf::{smith_normal_form, SmithDecomposition};

use crate::error::Result;
use crate::presentation::SurgeryPresentation;

/// A finitely generated abelian group `Z/d₁ ⊕ … ⊕ Z/dₖ`, recorded by its
/// invariant factors with the 1s dropped. A factor of 0 is a free summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyClass {
    #[serde(with = "json_int_vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl HomologyClass {
    pub fn trivial() -> Self {
        HomologyClass {
            invariant_factors: Vec::new(),
        }
    }

    /// Cokernel of `m`, read off its Smith normal form.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let s = smith_normal_form(m);
        let mut factors: Vec<BigInt> = s
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        // generators beyond the rank of a wide or tall matrix stay free
        factors.extend((m.cols().min(m.rows())..m.cols()).map(|_| BigInt::zero()));
        HomologyClass {
            invariant_factors: factors,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.invariant_factors.iter().any(Zero::is_zero) {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        for (i, d) in self.invariant_factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if d.is_zero() {
                f.write_str("Z")?;
            } else {
                write!(f, "Z/{d}")?;
            }
        }
        Ok(())
    }
}

/// H₁ of the manifold presented by `p`. Fails on meridional slopes.
pub fn first_homology(p: &SurgeryPresentation) -> Result<HomologyClass> {
    Ok(HomologyClass::cokernel(&p.generalized_relation_matrix()?))
}

/// H₁ after filling every `1/0` component trivially. Defined for every
/// presentation.
pub fn manifold_homology(p: &SurgeryPresentation) -> HomologyClass {
    first_homology(&p.without_meridional()).expect("meridional components removed")
}

/// Determinant of the relation matrix once meridional components are filled.
pub fn manifold_determinant(p: &SurgeryPresentation) -> BigInt {
    let m = p
        .without_meridional()
        .generalized_relation_matrix()
        .expect("meridional components removed");
    determinant(&m).expect("relation matrix is square")
}
