//! The n-component link family with a non-trivial S³ surgery.
//!
//! `K₁` is the figure-eight knot and `K₂, …, K_n` start as meridians of it.
//! Sliding each meridian over `K₁` along a band with `i + k` full twists
//! yields components `K_i = S(1 + 20(i+k), 2 − 10(i+k))` with surgery
//! coefficients `(n−2, n, n+1, …, n+1)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{determinant, first_homology, json_int, HomologyClass};
use crate::moves::KirbyMove;
use crate::presentation::{ComponentId, KnotTag, Slope, SurgeryPresentation};
use crate::script::{verify_script, MoveScript, RetypeStep, VerificationReport};
use crate::twobridge::{class_of, equivalent, equivalent_up_to_mirror, is_hyperbolic, TwoBridgeClass};

const BAND_SUM_UNDONE: &str =
    "undoing the band sum with a push-off of K_1 restores a meridian of K_1, which is unknotted";
const UNKNOT_K1: &str =
    "crossing changes on K_1, realized by handle slides over its 0-framed meridian K_2, turn K_1 into an unknot";
const TUNNEL_UPPER_BOUND: &str =
    "n-1 arcs joining consecutive band-summed components form an unknotting tunnel system (read off the band-sum diagram)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilyParams {
    n: i64,
    k: i64,
}

impl FamilyParams {
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if n < 2 || k < 0 || n > u32::MAX as i64 {
            return Err(Error::InvalidParams { n, k });
        }
        Ok(FamilyParams { n, k })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    fn count(&self) -> usize {
        self.n as usize
    }
}

fn id(i: usize) -> ComponentId {
    ComponentId(i as u32)
}

/// `S(1 + 20m, 2 − 10m)` with `m = i + k`, the knot type of component `i ≥ 2`.
pub fn family_knot(i: i64, k: i64) -> Result<KnotTag> {
    let overflow = || Error::Overflow("family knot parameters");
    let m = i.checked_add(k).ok_or_else(overflow)?;
    let p = m.checked_mul(20).and_then(|v| v.checked_add(1)).ok_or_else(overflow)?;
    let q = m.checked_mul(10).and_then(|v| 2i64.checked_sub(v)).ok_or_else(overflow)?;
    KnotTag::two_bridge(p, q)
}

/// Figure-eight `K₁` framed `n − 2` with meridians `K₂, …, K_n` framed
/// `0, 1, …, 1`; each meridian links `K₁` once and the meridians are
/// pairwise unlinked.
pub fn base_presentation(params: FamilyParams) -> SurgeryPresentation {
    let n = params.count();
    let mut comps = vec![(KnotTag::FigureEight, Slope::integer(params.n - 2))];
    comps.extend((2..=n).map(|i| (KnotTag::Unknot, Slope::integer(if i == 2 { 0 } else { 1 }))));
    let mut lk = vec![vec![0; n]; n];
    for i in 1..n {
        lk[0][i] = 1;
        lk[i][0] = 1;
    }
    SurgeryPresentation::new(comps, lk).expect("base presentation is valid")
}

/// The link after the band sums: coefficients `(n−2, n, n+1, …, n+1)`,
/// `lk(K₁, K_i) = n − 1` and `lk(K_i, K_j) = n` for `2 ≤ i < j`.
pub fn final_presentation(params: FamilyParams) -> Result<SurgeryPresentation> {
    let n = params.count();
    let mut comps = vec![(KnotTag::FigureEight, Slope::integer(params.n - 2))];
    for i in 2..=n {
        let slope = if i == 2 { params.n } else { params.n + 1 };
        comps.push((family_knot(i as i64, params.k)?, Slope::integer(slope)));
    }
    let lk = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match (a, b) {
                    _ if a == b => 0,
                    (0, _) | (_, 0) => params.n - 1,
                    _ => params.n,
                })
                .collect()
        })
        .collect();
    SurgeryPresentation::new(comps, lk)
}

/// Moves from [`final_presentation`] down to the empty presentation.
///
/// Inverse slides recover [`base_presentation`]; the `+1`-framed meridians
/// are blown down; a `−1` twist on `K₂` leaves the Hopf-type pair
/// `[[−1, 1], [1, 0]]`, which unravels once `K₁` is an unknot. (The classical
/// route passes through the Hopf link framed `0` and `2` instead.)
pub fn reduction_script(params: FamilyParams) -> Result<MoveScript> {
    let n = params.count();
    let mut moves = Vec::new();
    for i in 2..=n {
        moves.push(KirbyMove::HandleSlide {
            moving: id(i),
            over: id(1),
            sign: -1,
        });
        moves.push(KirbyMove::Retype {
            id: id(i),
            knot: KnotTag::Unknot,
            justification: BAND_SUM_UNDONE.into(),
        });
    }
    moves.extend((3..=n).rev().map(|i| KirbyMove::BlowDown { id: id(i) }));
    moves.push(KirbyMove::RolfsenTwist { on: id(2), t: -1 });
    moves.push(KirbyMove::Retype {
        id: id(1),
        knot: KnotTag::Unknot,
        justification: UNKNOT_K1.into(),
    });
    moves.push(KirbyMove::BlowDown { id: id(1) });
    moves.push(KirbyMove::BlowDown { id: id(2) });
    Ok(MoveScript {
        initial: final_presentation(params)?,
        moves,
        claimed_final: SurgeryPresentation::empty(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Properties {
    /// (i) the script verifies and no slope is meridional.
    pub surgery_yields_s3: bool,
    /// (ii) pairwise non-equivalent, hyperbolic 2-bridge components.
    pub distinct_hyperbolic_components: bool,
    /// (iii) via connectivity of the nonzero-linking graph (sufficient only).
    pub unsplittable: bool,
    /// (iv) lower bound `components − 1` meets the cited upper bound.
    pub tunnel_number_n_minus_1: bool,
}

impl Properties {
    pub fn all_hold(&self) -> bool {
        self.surgery_yields_s3
            && self.distinct_hyperbolic_components
            && self.unsplittable
            && self.tunnel_number_n_minus_1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TunnelBounds {
    /// Tunnel number is at least the number of components minus one.
    pub lower: i64,
    /// Cited, not derived.
    pub upper: i64,
    pub upper_source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingSummary {
    /// Every pair of components links nontrivially.
    pub complete: bool,
    pub connected: bool,
    /// Distinct off-diagonal linking numbers, ascending.
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub params: FamilyParams,
    pub presentation: SurgeryPresentation,
    #[serde(with = "json_int")]
    pub framed_determinant: BigInt,
    pub first_homology: HomologyClass,
    pub script: MoveScript,
    pub s3_report: VerificationReport,
    pub component_classes: Vec<TwoBridgeClass>,
    pub all_hyperbolic: bool,
    pub pairwise_distinct: bool,
    pub pairwise_distinct_up_to_mirror: bool,
    pub linking: LinkingSummary,
    pub tunnel_number: TunnelBounds,
    pub properties: Properties,
    pub retype_axioms: Vec<RetypeStep>,
    pub cited_facts: Vec<String>,
}

fn linking_summary(p: &SurgeryPresentation) -> LinkingSummary {
    let n = p.len();
    let lk = p.linking();
    let mut values: Vec<i64> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| lk[i][j]))
        .collect();
    values.sort_unstable();
    values.dedup();
    let complete = (0..n).all(|i| ((i + 1)..n).all(|j| lk[i][j] != 0));

    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    if n > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if !seen[j] && lk[i][j] != 0 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    LinkingSummary {
        complete,
        connected: seen.iter().all(|&s| s),
        values,
    }
}

fn component_classes(p: &SurgeryPresentation) -> Option<Vec<TwoBridgeClass>> {
    p.components().iter().map(|c| class_of(&c.knot)).collect()
}

pub fn certify(params: FamilyParams) -> Result<FamilyCertificate> {
    let presentation = final_presentation(params)?;
    let framed = presentation.framed_linking_matrix()?;
    let framed_determinant = determinant(&framed.to_int_matrix())?;
    let homology = first_homology(&presentation)?;
    let script = reduction_script(params)?;
    let s3_report = verify_script(&script);

    let non_trivial = presentation.components().iter().all(|c| !c.slope.is_meridional());
    let surgery_yields_s3 = s3_report.ok
        && s3_report.homology_constant()
        && homology.is_trivial()
        && non_trivial;

    let classes = component_classes(&presentation);
    let (all_hyperbolic, pairwise_distinct, pairwise_distinct_up_to_mirror) = match &classes {
        Some(cs) => {
            let pairs = || (0..cs.len()).flat_map(|i| ((i + 1)..cs.len()).map(move |j| (i, j)));
            (
                cs.iter().all(is_hyperbolic),
                pairs().all(|(i, j)| !equivalent(&cs[i], &cs[j])),
                pairs().all(|(i, j)| !equivalent_up_to_mirror(&cs[i], &cs[j])),
            )
        }
        None => (false, false, false),
    };

    let linking = linking_summary(&presentation);
    let tunnel_number = TunnelBounds {
        lower: params.n - 1,
        upper: params.n - 1,
        upper_source: TUNNEL_UPPER_BOUND.into(),
    };

    let properties = Properties {
        surgery_yields_s3,
        distinct_hyperbolic_components: all_hyperbolic && pairwise_distinct,
        unsplittable: linking.connected,
        tunnel_number_n_minus_1: tunnel_number.lower == tunnel_number.upper
            && tunnel_number.lower == presentation.len() as i64 - 1,
    };

    let mut cited_facts = vec![
        "K_1 is the figure-eight knot S(5,3)".to_string(),
        TUNNEL_UPPER_BOUND.to_string(),
    ];
    for c in &presentation.components()[1..] {
        cited_facts.push(format!("{} is the 2-bridge knot {}", c.id, c.knot));
    }

    Ok(FamilyCertificate {
        params,
        presentation,
        framed_determinant,
        first_homology: homology,
        retype_axioms: s3_report.retype_steps.clone(),
        script,
        s3_report,
        component_classes: classes.unwrap_or_default(),
        all_hyperbolic,
        pairwise_distinct,
        pairwise_distinct_up_to_mirror,
        linking,
        tunnel_number,
        properties,
        cited_facts,
    })
}

impl FamilyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn render_table(&self) -> String {
        let mark = |b: bool| if b { "yes" } else { "NO" };
        let mut out = String::new();
        let _ = writeln!(out, "family link n={} k={}", self.params.n, self.params.k);
        let _ = writeln!(out, "framed det: {}   H1: {}", self.framed_determinant, self.first_homology);
        let classes: Vec<String> = self.component_classes.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "components: {}", classes.join(", "));
        let _ = writeln!(out);
        let _ = writeln!(out, "property                                  | holds");
        let _ = writeln!(out, "------------------------------------------+------");
        let p = &self.properties;
        for (name, v) in [
            ("(i)   non-trivial surgery yields S^3", p.surgery_yields_s3),
            ("(ii)  components distinct and hyperbolic", p.distinct_hyperbolic_components),
            ("(iii) unsplittable (linking graph)", p.unsplittable),
            ("(iv)  tunnel number n-1", p.tunnel_number_n_minus_1),
        ] {
            let _ = writeln!(out, "{name:<42}| {}", mark(v));
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "flagged axioms (retype steps): {}", self.retype_axioms.len());
        for r in &self.retype_axioms {
            let _ = writeln!(out, "  step {:>2} {}: {}", r.step, r.id, r.justification);
        }
        let _ = writeln!(out, "cited facts:");
        for f in &self.cited_facts {
            let _ = writeln!(out, "  - {f}");
        }
        out
    }
}

/// True iff the multisets of component classes differ.
pub fn distinct_links(a: FamilyParams, b: FamilyParams) -> Result<bool> {
    let classes = |p: FamilyParams| -> Result<Vec<TwoBridgeClass>> {
        let mut cs = component_classes(&final_presentation(p)?).expect("family components are 2-bridge");
        cs.sort_unstable();
        Ok(cs)
    };
    Ok(classes(a)? != classes(b)?)
}
