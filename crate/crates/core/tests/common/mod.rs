#![allow(dead_code)]

use kirby_core::homology::{determinant, manifold_homology, signature};
use kirby_core::moves::{blow_down, blow_up, delete_infinity, handle_slide, retype, rolfsen_twist};
use kirby_core::twobridge::expand_rational_surgery;
use kirby_core::{Component, ComponentId, KnotTag, Slope, SurgeryPresentation};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_slope<R: Rng>(rng: &mut R) -> Slope {
    if rng.gen_bool(0.6) {
        Slope::integer(rng.gen_range(-5..=5))
    } else {
        loop {
            if let Ok(s) = Slope::new(rng.gen_range(-5..=5), rng.gen_range(1..=5)) {
                return s;
            }
        }
    }
}

pub fn random_tag<R: Rng>(rng: &mut R) -> KnotTag {
    *[
        KnotTag::Unknot,
        KnotTag::Unknot,
        KnotTag::Unknot,
        KnotTag::FigureEight,
        KnotTag::Unknown,
        KnotTag::TwoBridge { p: 7, q: 3 },
    ]
    .choose(rng)
    .unwrap()
}

/// Random presentation with `1..=max_n` components, entries bounded by 5.
pub fn random_presentation<R: Rng>(rng: &mut R, max_n: usize) -> SurgeryPresentation {
    let n = rng.gen_range(1..=max_n);
    let comps = (0..n).map(|_| (random_tag(rng), random_slope(rng))).collect();
    let mut lk = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(-5..=5);
            lk[i][j] = v;
            lk[j][i] = v;
        }
    }
    SurgeryPresentation::new(comps, lk).unwrap()
}

/// Copy of `p` with component `idx` replaced.
pub fn with_component(p: &SurgeryPresentation, idx: usize, knot: KnotTag, slope: Slope) -> SurgeryPresentation {
    let mut comps: Vec<Component> = p.components().to_vec();
    comps[idx].knot = knot;
    comps[idx].slope = slope;
    SurgeryPresentation::from_parts(comps, p.linking().to_vec()).unwrap()
}

fn integral_det(p: &SurgeryPresentation) -> Option<BigInt> {
    p.framed_linking_matrix()
        .ok()
        .map(|m| determinant(&m.to_int_matrix()).unwrap())
}

fn integral_sig(p: &SurgeryPresentation) -> Option<i64> {
    p.framed_linking_matrix()
        .ok()
        .map(|m| signature(&m.to_int_matrix()).unwrap())
}

fn slopes(p: &SurgeryPresentation) -> Vec<Slope> {
    p.components().iter().map(|c| c.slope).collect()
}

fn same_homology(a: &SurgeryPresentation, b: &SurgeryPresentation, what: &str) -> Result<(), String> {
    let (ha, hb) = (manifold_homology(a), manifold_homology(b));
    if ha == hb {
        Ok(())
    } else {
        Err(format!("{what}: H1 {ha} became {hb}\nbefore: {a:?}\nafter: {b:?}"))
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

/// Which checks of [`check_moves`] ran; each counter is one trial of that
/// property.
#[derive(Debug, Default, Clone, Copy)]
pub struct MoveTally {
    pub blow_up: usize,
    pub blow_down: usize,
    pub handle_slide: usize,
    pub rolfsen_twist: usize,
    pub delete_infinity: usize,
    pub retype: usize,
    pub blow_pair_identity: usize,
    pub slide_pair_identity: usize,
    pub twist_pair_identity: usize,
    pub blow_down_twist_equivalence: usize,
}

/// Applies every move type to variants of `p` and checks homology
/// invariance, determinant and signature bookkeeping, and inverse pairs.
pub fn check_moves<R: Rng>(p: &SurgeryPresentation, rng: &mut R, tally: &mut MoveTally) -> Result<(), String> {
    let n = p.len();
    let id = |i: usize, q: &SurgeryPresentation| q.components()[i].id;

    // blow up, and blow up followed by blow down
    let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
    let up = blow_up(p, eps).map_err(|e| e.to_string())?;
    same_homology(p, &up, "blow_up")?;
    if let (Some(a), Some(b)) = (integral_det(p), integral_det(&up)) {
        ensure!(b == a * eps, "blow_up det");
        ensure!(integral_sig(&up).unwrap() == integral_sig(p).unwrap() + eps, "blow_up signature");
    }
    tally.blow_up += 1;
    let new_id = up.components()[n].id;
    ensure!(blow_down(&up, new_id).map_err(|e| e.to_string())? == *p, "blow_up/blow_down identity");
    tally.blow_pair_identity += 1;

    // blow down a forced ±1 unknot, and compare with twist + delete
    let c = rng.gen_range(0..n);
    let forced = with_component(p, c, KnotTag::Unknot, Slope::integer(eps));
    let down = blow_down(&forced, id(c, &forced)).map_err(|e| e.to_string())?;
    same_homology(&forced, &down, "blow_down")?;
    if let (Some(a), Some(b)) = (integral_det(&forced), integral_det(&down)) {
        ensure!(a == b * eps, "blow_down det");
    }
    tally.blow_down += 1;
    let twisted = rolfsen_twist(&forced, id(c, &forced), -eps).map_err(|e| e.to_string())?;
    let via_twist = delete_infinity(&twisted, id(c, &forced)).map_err(|e| e.to_string())?;
    ensure!(via_twist == down, "blow_down != twist + delete_infinity");
    tally.blow_down_twist_equivalence += 1;

    // handle slide between two forced-integral components
    if n >= 2 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut q = p.clone();
        for k in [i, j] {
            let c = &q.components()[k];
            if !c.slope.is_integral() {
                q = with_component(&q, k, c.knot, Slope::integer(rng.gen_range(-5..=5)));
            }
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let slid = handle_slide(&q, id(i, &q), id(j, &q), sign).map_err(|e| e.to_string())?;
        same_homology(&q, &slid, "handle_slide")?;
        if let (Some(a), Some(b)) = (integral_det(&q), integral_det(&slid)) {
            ensure!(a == b, "handle_slide det");
            ensure!(integral_sig(&q) == integral_sig(&slid), "handle_slide signature");
        }
        tally.handle_slide += 1;
        let back = handle_slide(&slid, id(i, &q), id(j, &q), -sign).map_err(|e| e.to_string())?;
        ensure!(back.linking() == q.linking() && slopes(&back) == slopes(&q), "slide/anti-slide identity");
        tally.slide_pair_identity += 1;
    }

    // Rolfsen twist on a forced unknot with an arbitrary slope
    let c = rng.gen_range(0..n);
    let q = with_component(p, c, KnotTag::Unknot, p.components()[c].slope);
    let t = rng.gen_range(-3..=3);
    let tw = rolfsen_twist(&q, id(c, &q), t).map_err(|e| e.to_string())?;
    same_homology(&q, &tw, "rolfsen_twist")?;
    tally.rolfsen_twist += 1;
    let back = rolfsen_twist(&tw, id(c, &q), -t).map_err(|e| e.to_string())?;
    ensure!(back.linking() == q.linking() && slopes(&back) == slopes(&q), "twist(t)/twist(-t) identity");
    tally.twist_pair_identity += 1;

    // delete a forced meridional unknot
    let c = rng.gen_range(0..n);
    let q = with_component(p, c, KnotTag::Unknot, Slope::MERIDIAN);
    let del = delete_infinity(&q, id(c, &q)).map_err(|e| e.to_string())?;
    same_homology(&q, &del, "delete_infinity")?;
    tally.delete_infinity += 1;

    // retype
    let c = rng.gen_range(0..n);
    let r = retype(p, id(c, p), KnotTag::Unknot, "test axiom").map_err(|e| e.to_string())?;
    same_homology(p, &r, "retype")?;
    ensure!(r.linking() == p.linking() && slopes(&r) == slopes(p), "retype changed data");
    tally.retype += 1;

    Ok(())
}

/// Forces a non-integral unknot into `p` and checks that expanding it into
/// an integer chain leaves H₁ unchanged.
pub fn check_expansion<R: Rng>(p: &SurgeryPresentation, rng: &mut R) -> Result<(), String> {
    let c = rng.gen_range(0..p.len());
    let slope = loop {
        if let Ok(s) = Slope::new(rng.gen_range(-12..=12), rng.gen_range(2..=9)) {
            if !s.is_integral() {
                break s;
            }
        }
    };
    let q = with_component(p, c, KnotTag::Unknot, slope);
    let e = expand_rational_surgery(&q, q.components()[c].id).map_err(|e| e.to_string())?;
    same_homology(&q, &e, "expand_rational_surgery")
}

pub fn component_id(n: u32) -> ComponentId {
    ComponentId(n)
}
