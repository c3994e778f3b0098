//! 2-bridge knot arithmetic and negative continued fractions.
//!
//! `S(p, q)` and `S(p, q')` are taken to be the same knot iff `q' ≡ q` or
//! `q·q' ≡ 1 (mod p)`. Mirror images are distinct under [`equivalent`];
//! [`equivalent_up_to_mirror`] additionally identifies `q' ≡ -q^{±1}`.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Component, ComponentId, KnotTag, Slope, SurgeryPresentation};

pub(crate) fn validate_knot_parameters(p: i64, q: i64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::EvenP(p));
    }
    let r = q.rem_euclid(p);
    if r == 0 {
        return Err(Error::DegenerateQ { p, q });
    }
    if p.gcd(&r) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// Inverse of `a` modulo `m`, for `gcd(a, m) = 1`.
fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Canonical Schubert form `S(p, q)` with `0 < q < p`, `q = min(q mod p, q⁻¹ mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoBridgeClass {
    p: i64,
    q_canonical: i64,
}

impl TwoBridgeClass {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q_canonical(&self) -> i64 {
        self.q_canonical
    }

    pub fn mirror(&self) -> TwoBridgeClass {
        normalize(self.p, -self.q_canonical).expect("mirror of a valid class is valid")
    }

    /// Representative of the class up to mirroring: the least of
    /// `±q^{±1} mod p`.
    pub fn mirror_insensitive(&self) -> TwoBridgeClass {
        let m = self.mirror();
        if m.q_canonical < self.q_canonical {
            m
        } else {
            *self
        }
    }
}

impl fmt::Display for TwoBridgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.p, self.q_canonical)
    }
}

pub fn normalize(p: i64, q: i64) -> Result<TwoBridgeClass> {
    validate_knot_parameters(p, q)?;
    let r = q.rem_euclid(p);
    let inv = mod_inverse(r, p);
    Ok(TwoBridgeClass {
        p,
        q_canonical: r.min(inv),
    })
}

pub fn equivalent(a: &TwoBridgeClass, b: &TwoBridgeClass) -> bool {
    a == b
}

pub fn equivalent_up_to_mirror(a: &TwoBridgeClass, b: &TwoBridgeClass) -> bool {
    a.mirror_insensitive() == b.mirror_insensitive()
}

/// A 2-bridge knot is hyperbolic unless it is a `(2, p)` torus knot, i.e.
/// unless `q ≡ ±1 (mod p)`.
pub fn is_hyperbolic(c: &TwoBridgeClass) -> bool {
    c.q_canonical != 1 && c.q_canonical != c.p - 1
}

pub fn knot_determinant(c: &TwoBridgeClass) -> i64 {
    c.p
}

/// Class of a tagged component, when the tag names a 2-bridge knot.
/// The figure-eight knot is `S(5, 3)`.
pub fn class_of(tag: &KnotTag) -> Option<TwoBridgeClass> {
    match *tag {
        KnotTag::FigureEight => Some(normalize(5, 3).expect("S(5,3) is valid")),
        KnotTag::TwoBridge { p, q } => normalize(p, q).ok(),
        KnotTag::Unknot | KnotTag::Unknown => None,
    }
}

/// `a₁ - 1/(a₂ - 1/(… - 1/a_m))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegContinuedFraction {
    pub coefficients: Vec<i64>,
}

impl NegContinuedFraction {
    pub fn fold(&self) -> BigRational {
        let mut it = self.coefficients.iter().rev();
        let Some(&last) = it.next() else {
            return BigRational::zero();
        };
        let mut acc = BigRational::from_integer(last.into());
        for &a in it {
            acc = BigRational::from_integer(a.into()) - acc.recip();
        }
        acc
    }
}

/// Expansion with ceiling quotients: every coefficient after the first is at
/// least 2. Negative fractions get a non-positive leading term, e.g.
/// `-7/2 = [-3, 2]`.
pub fn neg_continued_fraction(num: i64, den: i64) -> Result<NegContinuedFraction> {
    if den < 1 {
        return Err(Error::ZeroDenominator);
    }
    if num.gcd(&den) != 1 {
        return Err(Error::NotCoprime { p: num, q: den });
    }
    let (mut a, mut b) = (i128::from(num), i128::from(den));
    let mut coefficients = Vec::new();
    loop {
        let c = Integer::div_ceil(&a, &b);
        coefficients.push(i64::try_from(c).map_err(|_| Error::Overflow("continued fraction"))?);
        let r = c * b - a;
        if r == 0 {
            break;
        }
        (a, b) = (b, r);
    }
    Ok(NegContinuedFraction { coefficients })
}

/// Replaces the rational slope `a/b` on unknot `c` by an integer chain: `c`
/// gets framing `a₁` and a chain of new unknots with framings `a₂, …, a_m`
/// is linked on, each consecutive pair with linking number 1.
pub fn expand_rational_surgery(
    p: &SurgeryPresentation,
    c: ComponentId,
) -> Result<SurgeryPresentation> {
    let idx = p.index_of(c)?;
    let comp = &p.components()[idx];
    if !comp.knot.is_unknot() {
        return Err(Error::NotUnknot(c));
    }
    if comp.slope.is_meridional() {
        return Err(Error::Meridional(c));
    }
    if comp.slope.is_integral() {
        return Err(Error::AlreadyIntegral(c));
    }
    let cf = neg_continued_fraction(comp.slope.num(), comp.slope.den())?;

    let mut out = p.clone();
    out.components_mut()[idx].slope = Slope::integer(cf.coefficients[0]);
    let mut prev = idx;
    for &a in &cf.coefficients[1..] {
        let mut row = vec![0; out.len()];
        row[prev] = 1;
        let id = out.next_id();
        out.push_component(
            Component {
                id,
                knot: KnotTag::Unknot,
                slope: Slope::integer(a),
            },
            row,
        );
        prev = out.len() - 1;
    }
    Ok(out)
}
