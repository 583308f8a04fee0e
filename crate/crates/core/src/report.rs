//! Machine-checkable records of replayed case analyses.

use std::fmt::Write as _;

use serde::Serialize;

use crate::basket::WeightedBasket;
use crate::rr::{plurigenera, volume};
use crate::search::{Certificate, Elimination};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurvivorRow {
    pub branch: String,
    pub basket: String,
    pub p1: u32,
    pub volume: String,
    #[serde(rename = "rX")]
    pub r_x: u64,
    pub rmax: u32,
    #[serde(rename = "P")]
    pub p: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1: Option<u32>,
}

impl SurvivorRow {
    pub fn new(branch: &str, wb: &WeightedBasket, horizon: u32) -> Self {
        let p = plurigenera(wb, horizon).map(|s| s.values).unwrap_or_default();
        Self {
            branch: branch.to_string(),
            basket: wb.basket.to_string(),
            p1: wb.p1,
            volume: volume(wb).to_string(),
            r_x: wb.basket.gorenstein_index(),
            rmax: wb.basket.r_max(),
            p,
            delta1: None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EliminatedRow {
    pub branch: String,
    pub basket: String,
    pub p1: u32,
    pub certificate: Certificate,
    pub reason: String,
}

impl EliminatedRow {
    pub fn new(branch: &str, e: &Elimination) -> Self {
        Self {
            branch: branch.to_string(),
            basket: e.basket.basket.to_string(),
            p1: e.basket.p1,
            certificate: e.certificate.clone(),
            reason: e.certificate.to_string(),
        }
    }

    pub fn weighted(&self) -> WeightedBasket {
        WeightedBasket::parse(&self.basket, self.p1).expect("report baskets are canonical")
    }
}

/// One branch of a case split and what the enumeration found in it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BranchRecord {
    pub name: String,
    pub constraints: Vec<String>,
    pub seeds: usize,
    pub survivors: usize,
    pub eliminated: usize,
    pub outcome: String,
}

/// A leaf of a threshold case tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Leaf {
    pub name: String,
    pub inputs: String,
    pub threshold: u32,
    pub target: u32,
    /// Steps taken as stated rather than derived.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flagged: Vec<String>,
}

impl Leaf {
    pub fn ok(&self) -> bool {
        self.threshold <= self.target
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExceptionReport {
    pub label: String,
    pub basket: String,
    /// Best bound from the tabulated local conditions and the multiples argument.
    pub computed_bound: Option<u32>,
    /// The same with the end-point test in place of the tabulated conditions.
    /// Informational only.
    pub endpoint_bound: Option<u32>,
    /// Least `m` with `P_-m >= 3`, a lower bound for `δ_1`.
    pub lower_bound: Option<u32>,
    /// Stated value, not derived here.
    pub asserted: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Coverage {
    pub audited: usize,
    pub uncovered: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReplayReport {
    pub case: String,
    pub constraints: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<BranchRecord>,
    pub survivors: Vec<SurvivorRow>,
    pub eliminated: Vec<EliminatedRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub exceptions: Vec<ExceptionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub leaves: Vec<Leaf>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub axioms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<Coverage>,
    pub conclusion: String,
    /// Whether the replay reached its expected conclusion.
    pub holds: bool,
}

impl ReplayReport {
    pub fn new(case: &str) -> Self {
        Self {
            case: case.to_string(),
            constraints: Vec::new(),
            branches: Vec::new(),
            survivors: Vec::new(),
            eliminated: Vec::new(),
            exceptions: Vec::new(),
            leaves: Vec::new(),
            axioms: Vec::new(),
            coverage: None,
            conclusion: String::new(),
            holds: false,
        }
    }

    /// Re-evaluates every elimination certificate from scratch.
    pub fn failed_certificates(&self) -> Vec<&EliminatedRow> {
        self.eliminated.iter().filter(|e| !e.certificate.verify(&e.weighted())).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering. Eliminations are summarized per branch
    /// unless `full` is set.
    pub fn render_text(&self, full: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "case: {}", self.case);
        for c in &self.constraints {
            let _ = writeln!(s, "  constraint: {c}");
        }
        for b in &self.branches {
            let _ = writeln!(
                s,
                "branch {}: {} seeds, {} survivors, {} eliminated; {}",
                b.name, b.seeds, b.survivors, b.eliminated, b.outcome
            );
            for c in &b.constraints {
                let _ = writeln!(s, "    {c}");
            }
        }
        if !self.survivors.is_empty() {
            let _ = writeln!(s, "survivors:");
            for r in &self.survivors {
                let d = r.delta1.map(|d| format!("  delta1 <= {d}")).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "  [{}] {{{}}} p1={} -K^3={} rX={} rmax={}{d}",
                    r.branch, r.basket, r.p1, r.volume, r.r_x, r.rmax
                );
            }
        }
        let shown: Vec<&EliminatedRow> = if full {
            self.eliminated.iter().collect()
        } else {
            self.eliminated
                .iter()
                .filter(|e| !matches!(e.certificate, Certificate::Gamma { .. }))
                .collect()
        };
        if !shown.is_empty() {
            let _ = writeln!(s, "eliminated ({} total, {} shown):", self.eliminated.len(), shown.len());
            for e in shown {
                let _ = writeln!(s, "  [{}] {{{}}}: {}", e.branch, e.basket, e.reason);
            }
        }
        for e in &self.exceptions {
            let _ = writeln!(
                s,
                "exception {} {{{}}}: computed <= {}, end-point test <= {}, P_-m >= 3 first at m = {}, stated delta1 {} (flagged)",
                e.label,
                e.basket,
                e.computed_bound.map_or("none".into(), |v| v.to_string()),
                e.endpoint_bound.map_or("none".into(), |v| v.to_string()),
                e.lower_bound.map_or("none".into(), |v| v.to_string()),
                e.asserted
            );
        }
        for l in &self.leaves {
            let flag = if l.flagged.is_empty() { String::new() } else { format!(" [flagged: {}]", l.flagged.join("; ")) };
            let _ = writeln!(
                s,
                "leaf {}: {} -> {} (target {}) {}{flag}",
                l.name,
                l.inputs,
                l.threshold,
                l.target,
                if l.ok() { "ok" } else { "EXCEEDS" }
            );
        }
        for a in &self.axioms {
            let _ = writeln!(s, "axiom (flagged): {a}");
        }
        if let Some(c) = &self.coverage {
            let _ = writeln!(s, "coverage: {} audited, {} uncovered", c.audited, c.uncovered.len());
            for u in &c.uncovered {
                let _ = writeln!(s, "  uncovered: {u}");
            }
        }
        let _ = writeln!(s, "conclusion: {}", self.conclusion);
        s
    }
}
