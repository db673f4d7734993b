use super::verify::DiagramReport;
use serde::Serialize;

/// Outcome of one downward implication, checked constructively on random
/// families.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeResult {
    pub index: usize,
    pub from: &'static str,
    pub to: &'static str,
    pub check: &'static str,
    pub trials: u32,
    pub violations: u32,
    pub first_counterexample: Option<String>,
}

/// Outcome of a structural row equivalence.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceResult {
    pub name: &'static str,
    pub detail: &'static str,
    pub structural: bool,
    pub trials: u32,
    pub violations: u32,
    pub first_counterexample: Option<String>,
}

/// Outcome of one counterexample bullet.
#[derive(Debug, Clone, Serialize)]
pub struct BulletResult {
    pub index: usize,
    pub family: String,
    pub claim: String,
    pub blocks_reversal_of_edge: usize,
    pub confirmed: bool,
    pub evidence: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Deterministic rendering; the text format mirrors the diagram layout with a
/// node column and one arrow line per implication.
pub fn render_report(report: &DiagramReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).expect("report serializes") + "\n"
        }
        ReportFormat::Text => render_text(report),
    }
}

fn render_text(r: &DiagramReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "stochastic boundedness diagram  (p = {}, q = {}, seed = {}, trials = {})\n",
        r.p, r.q, r.seed, r.trials
    ));
    if !r.edges.is_empty() {
        out.push('\n');
        for edge in &r.edges {
            out.push_str(&format!("  [{:>2}] {}\n", edge.index, edge.from));
            let mark = if edge.violations == 0 { "✓" } else { "✗" };
            out.push_str(&format!(
                "        ⇓  {mark} {} ({} trials, {} violations)\n",
                edge.check, edge.trials, edge.violations
            ));
            if let Some(cex) = &edge.first_counterexample {
                out.push_str(&format!("           counterexample: {cex}\n"));
            }
            if edge.index == r.edges.len() {
                out.push_str(&format!("  [{:>2}] {}\n", edge.index + 1, edge.to));
            }
        }
    }
    if !r.equivalences.is_empty() {
        out.push_str("\nrow equivalences:\n");
        for eq in &r.equivalences {
            let mark = if eq.violations == 0 { "✓" } else { "✗" };
            let kind = if eq.structural { " [structural]" } else { "" };
            out.push_str(&format!(
                "  {mark} {}{kind}: {} ({} trials, {} violations)\n",
                eq.name, eq.detail, eq.trials, eq.violations
            ));
            if let Some(cex) = &eq.first_counterexample {
                out.push_str(&format!("      counterexample: {cex}\n"));
            }
        }
    }
    if !r.bullets.is_empty() {
        out.push_str("\ncounterexamples (sharpness of the one-way implications):\n");
        for b in &r.bullets {
            let mark = if b.confirmed { "✓ confirmed" } else { "✗ NOT confirmed" };
            out.push_str(&format!(
                "  [{}] {} — {}\n      {mark}; blocks reversal of edge {}\n",
                b.index, b.family, b.claim, b.blocks_reversal_of_edge
            ));
            for e in &b.evidence {
                out.push_str(&format!("      · {e}\n"));
            }
        }
    }
    out
}
