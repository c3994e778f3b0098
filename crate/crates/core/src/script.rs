//! Move scripts and their replay verifier.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::homology::{json_int, json_int_vec, manifold_determinant, manifold_homology, HomologyClass};
use crate::moves::KirbyMove;
use crate::presentation::{ComponentId, SurgeryPresentation};

/// A certificate that `initial` and `claimed_final` present the same
/// 3-manifold, as a sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveScript {
    pub initial: SurgeryPresentation,
    pub moves: Vec<KirbyMove>,
    #[serde(rename = "final")]
    pub claimed_final: SurgeryPresentation,
}

impl MoveScript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("script serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetypeStep {
    pub step: usize,
    pub id: ComponentId,
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub step: usize,
    pub reason: String,
}

/// One replayed state. Step 0 is the initial presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(rename = "move")]
    pub mv: String,
    #[serde(with = "json_int")]
    pub det: BigInt,
    #[serde(with = "json_int_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub flags: Vec<String>,
}

/// Outcome of [`verify_script`]. `homology_trace[s]` holds the invariant
/// factors of H₁ after `s` moves (entry 0 is the initial presentation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub steps_checked: usize,
    pub homology_trace: Vec<HomologyClass>,
    pub retype_steps: Vec<RetypeStep>,
    pub failure: Option<Failure>,
    pub steps: Vec<StepRecord>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn homology_constant(&self) -> bool {
        self.homology_trace.windows(2).all(|w| w[0] == w[1])
    }

    /// One row per replayed state: move, determinant, invariant factors, flags.
    pub fn render_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .steps
            .iter()
            .map(|s| {
                [
                    s.step.to_string(),
                    s.mv.clone(),
                    s.det.to_string(),
                    HomologyClass {
                        invariant_factors: s.invariant_factors.clone(),
                    }
                    .to_string(),
                    s.flags.join(", "),
                ]
            })
            .collect();
        let header = ["step", "move", "det", "H1", "flags"];
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let mut l = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i > 0 {
                    l.push_str(" | ");
                }
                let _ = write!(l, "{:<w$}", c, w = widths[i]);
            }
            out.push_str(l.trim_end());
            out.push('\n');
        };
        line(&mut out, &header);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&mut out, &rule.iter().map(String::as_str).collect::<Vec<_>>());
        for r in &rows {
            line(&mut out, &r.iter().map(String::as_str).collect::<Vec<_>>());
        }
        let verdict = match &self.failure {
            None => format!("ok: {} moves checked, {} retype axiom(s)", self.steps_checked, self.retype_steps.len()),
            Some(f) => format!("FAILED at step {}: {}", f.step, f.reason),
        };
        out.push_str(&verdict);
        out.push('\n');
        out
    }
}

fn record(step: usize, mv: String, p: &SurgeryPresentation, flags: Vec<String>) -> (StepRecord, HomologyClass) {
    let h = manifold_homology(p);
    let rec = StepRecord {
        step,
        mv,
        det: manifold_determinant(p),
        invariant_factors: h.invariant_factors.clone(),
        flags,
    };
    (rec, h)
}

/// Replays `script` from its initial presentation, checking every move's
/// preconditions and that H₁ never changes, then compares the result with
/// the claimed final presentation (ids ignored).
pub fn verify_script(script: &MoveScript) -> VerificationReport {
    let mut current = script.initial.clone();
    let (rec0, h0) = record(0, "initial".into(), &current, Vec::new());
    let mut report = VerificationReport {
        ok: false,
        steps_checked: 0,
        homology_trace: vec![h0],
        retype_steps: Vec::new(),
        failure: None,
        steps: vec![rec0],
    };

    for (k, mv) in script.moves.iter().enumerate() {
        let step = k + 1;
        let next = match mv.apply(&current) {
            Ok(next) => next,
            Err(e) => {
                report.failure = Some(Failure {
                    step,
                    reason: format!("{mv}: {e}"),
                });
                return report;
            }
        };
        let mut flags = Vec::new();
        if let KirbyMove::Retype { id, justification, .. } = mv {
            flags.push("axiom".to_string());
            report.retype_steps.push(RetypeStep {
                step,
                id: *id,
                justification: justification.clone(),
            });
        }
        let (rec, h) = record(step, mv.to_string(), &next, flags);
        let before = report.homology_trace.last().expect("trace starts non-empty").clone();
        report.steps.push(rec);
        report.homology_trace.push(h.clone());
        report.steps_checked = step;
        current = next;
        if h != before {
            report.failure = Some(Failure {
                step,
                reason: format!("H1 changed from {before} to {h}"),
            });
            return report;
        }
    }

    if !current.same_up_to_renumbering(&script.claimed_final) {
        report.failure = Some(Failure {
            step: script.moves.len(),
            reason: "replayed presentation differs from the claimed final presentation".into(),
        });
        return report;
    }
    report.ok = true;
    report
}
