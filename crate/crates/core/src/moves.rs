//! Algebraic shadows of Kirby and Rolfsen moves.
//!
//! Each move acts on (knot tags, slopes, linking matrix) only. The engine
//! checks every precondition and all framing/linking arithmetic; whether a
//! sequence of moves is realizable by an actual diagram is up to whoever
//! wrote it.
//!
//! Tag bookkeeping is conservative: anything that can change the knot type of
//! a component turns its tag into [`KnotTag::Unknown`]. Twisting along the
//! disk of an unknot `c` leaves a component alone if it does not link `c`,
//! and leaves an unknot alone if it links `c` exactly once (assumed to meet
//! the disk in one point). Only [`KirbyMove::Retype`] upgrades a tag.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Component, ComponentId, KnotTag, Slope, SurgeryPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum KirbyMove {
    BlowUp {
        sign: i64,
    },
    BlowDown {
        id: ComponentId,
    },
    HandleSlide {
        moving: ComponentId,
        over: ComponentId,
        sign: i64,
    },
    RolfsenTwist {
        on: ComponentId,
        t: i64,
    },
    DeleteInfinity {
        id: ComponentId,
    },
    /// The only move the engine cannot check; always reported as an axiom.
    Retype {
        id: ComponentId,
        knot: KnotTag,
        justification: String,
    },
}

impl KirbyMove {
    pub fn apply(&self, p: &SurgeryPresentation) -> Result<SurgeryPresentation> {
        match self {
            KirbyMove::BlowUp { sign } => blow_up(p, *sign),
            KirbyMove::BlowDown { id } => blow_down(p, *id),
            KirbyMove::HandleSlide { moving, over, sign } => handle_slide(p, *moving, *over, *sign),
            KirbyMove::RolfsenTwist { on, t } => rolfsen_twist(p, *on, *t),
            KirbyMove::DeleteInfinity { id } => delete_infinity(p, *id),
            KirbyMove::Retype {
                id,
                knot,
                justification,
            } => retype(p, *id, *knot, justification),
        }
    }

    pub fn is_retype(&self) -> bool {
        matches!(self, KirbyMove::Retype { .. })
    }
}

impl fmt::Display for KirbyMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KirbyMove::BlowUp { sign } => write!(f, "blow_up({sign:+})"),
            KirbyMove::BlowDown { id } => write!(f, "blow_down({id})"),
            KirbyMove::HandleSlide { moving, over, sign } => {
                write!(f, "handle_slide({moving} over {over}, {sign:+})")
            }
            KirbyMove::RolfsenTwist { on, t } => write!(f, "rolfsen_twist({on}, t={t})"),
            KirbyMove::DeleteInfinity { id } => write!(f, "delete_infinity({id})"),
            KirbyMove::Retype { id, knot, .. } => write!(f, "retype({id} -> {knot})"),
        }
    }
}

fn check_sign(sign: i64) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidSign(sign))
    }
}

fn overflow() -> Error {
    Error::Overflow("move arithmetic")
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or_else(overflow)
}

fn tag_after_twist(tag: KnotTag, lk: i64) -> KnotTag {
    match (tag, lk) {
        (_, 0) => tag,
        (KnotTag::Unknot, 1 | -1) => KnotTag::Unknot,
        _ => KnotTag::Unknown,
    }
}

/// `t` full twists along the disk bounded by the unknot at `c`, leaving the
/// slope of `c` itself untouched.
fn twist_others(p: &mut SurgeryPresentation, c: usize, t: i64) -> Result<()> {
    let n = p.len();
    let col: Vec<i64> = p.linking().iter().map(|row| row[c]).collect();
    for i in (0..n).filter(|&i| i != c) {
        let lk = col[i];
        if lk == 0 {
            continue;
        }
        let comp = &mut p.components_mut()[i];
        let shift = mul(mul(t, comp.slope.den())?, mul(lk, lk)?)?;
        comp.slope = Slope::new(add(comp.slope.num(), shift)?, comp.slope.den())?;
        comp.knot = tag_after_twist(comp.knot, lk);
    }
    let lk = p.linking_mut();
    for i in (0..n).filter(|&i| i != c) {
        for j in (0..n).filter(|&j| j != c && j != i) {
            lk[i][j] = add(lk[i][j], mul(t, mul(col[i], col[j])?)?)?;
        }
    }
    Ok(())
}

/// Adds a split unknot framed `sign`.
pub fn blow_up(p: &SurgeryPresentation, sign: i64) -> Result<SurgeryPresentation> {
    check_sign(sign)?;
    let mut out = p.clone();
    let id = out.next_id();
    out.push_component(
        Component {
            id,
            knot: KnotTag::Unknot,
            slope: Slope::integer(sign),
        },
        vec![0; p.len()],
    );
    Ok(out)
}

pub fn blow_down(p: &SurgeryPresentation, c: ComponentId) -> Result<SurgeryPresentation> {
    let idx = p.index_of(c)?;
    let comp = &p.components()[idx];
    if !comp.knot.is_unknot() {
        return Err(Error::NotUnknot(c));
    }
    let eps = match comp.slope.framing() {
        Some(f @ (1 | -1)) => f,
        _ => return Err(Error::FramingNotUnit(c)),
    };
    let mut out = p.clone();
    twist_others(&mut out, idx, -eps)?;
    out.remove_index(idx);
    Ok(out)
}

/// Slides `moving` over `over` along a band; `sign = -1` uses the reversed
/// push-off. On the framed matrix this is `A ↦ EᵀAE` with `E = I + sign·e_{over,moving}`.
pub fn handle_slide(
    p: &SurgeryPresentation,
    moving: ComponentId,
    over: ComponentId,
    sign: i64,
) -> Result<SurgeryPresentation> {
    check_sign(sign)?;
    if moving == over {
        return Err(Error::SameComponent(moving));
    }
    let i = p.index_of(moving)?;
    let j = p.index_of(over)?;
    let fi = p.components()[i].slope.framing().ok_or(Error::NonIntegral(moving))?;
    let fj = p.components()[j].slope.framing().ok_or(Error::NonIntegral(over))?;

    let mut out = p.clone();
    let lk_ij = p.linking()[i][j];
    let new_fi = add(add(fi, fj)?, mul(2 * sign, lk_ij)?)?;
    let comp = &mut out.components_mut()[i];
    comp.slope = Slope::integer(new_fi);
    comp.knot = KnotTag::Unknown;

    let lk = out.linking_mut();
    for m in 0..p.len() {
        if m == i {
            continue;
        }
        let delta = if m == j { fj } else { p.linking()[j][m] };
        let v = add(lk[i][m], mul(sign, delta)?)?;
        lk[i][m] = v;
        lk[m][i] = v;
    }
    Ok(out)
}

/// `t` full twists along the disk bounded by the unknot `c`: its slope
/// `a/b` becomes `a/(b + t·a)`, every other slope shifts by `t·lk(i,c)²`,
/// and `lk(i,j)` shifts by `t·lk(i,c)·lk(j,c)`.
pub fn rolfsen_twist(p: &SurgeryPresentation, c: ComponentId, t: i64) -> Result<SurgeryPresentation> {
    let idx = p.index_of(c)?;
    let comp = &p.components()[idx];
    if !comp.knot.is_unknot() {
        return Err(Error::NotUnknot(c));
    }
    let (a, b) = (comp.slope.num(), comp.slope.den());
    let mut out = p.clone();
    out.components_mut()[idx].slope = Slope::new(a, add(b, mul(t, a)?)?)?;
    twist_others(&mut out, idx, t)?;
    Ok(out)
}

/// Removes an unknot with slope `1/0` (trivial filling).
pub fn delete_infinity(p: &SurgeryPresentation, c: ComponentId) -> Result<SurgeryPresentation> {
    let idx = p.index_of(c)?;
    let comp = &p.components()[idx];
    if !comp.slope.is_meridional() {
        return Err(Error::NotMeridional(c));
    }
    if !comp.knot.is_unknot() {
        return Err(Error::NotUnknot(c));
    }
    let mut out = p.clone();
    out.remove_index(idx);
    Ok(out)
}

/// Replaces the knot tag of `c`. Nothing else changes.
pub fn retype(
    p: &SurgeryPresentation,
    c: ComponentId,
    tag: KnotTag,
    justification: &str,
) -> Result<SurgeryPresentation> {
    let idx = p.index_of(c)?;
    if justification.trim().is_empty() {
        return Err(Error::EmptyJustification);
    }
    tag.validate()?;
    let mut out = p.clone();
    out.components_mut()[idx].knot = tag;
    Ok(out)
}
