use serde::Serialize;

/// Three-valued outcome of a family-level criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

/// Qualitative behaviour of the criterion values along the probe grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Decaying,
    Flat,
    Growing,
    None,
}

/// Verdict with numeric evidence: `(grid point, criterion value)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub trend: Trend,
    pub evidence: Vec<(f64, f64)>,
}

impl Verdict {
    pub fn new(status: Status, evidence: Vec<(f64, f64)>) -> Self {
        let trend = classify_trend(&evidence);
        Self {
            status,
            trend,
            evidence,
        }
    }

    pub fn bare(status: Status) -> Self {
        Self {
            status,
            trend: Trend::None,
            evidence: Vec::new(),
        }
    }
}

/// Window factor below which a sequence counts as shrinking.
pub const TREND_SHRINK_FACTOR: f64 = 1.5;
/// A criterion below this at the largest grid point supports a limit claim.
pub const TREND_EPSILON: f64 = 1e-3;
/// A criterion bounded below by this across all windows refutes a limit claim.
pub const TREND_DELTA: f64 = 1e-2;

/// Labels the evidence sequence by its last three doubling windows.
pub fn classify_trend(evidence: &[(f64, f64)]) -> Trend {
    if evidence.len() < 2 {
        return Trend::None;
    }
    let tail: Vec<f64> = evidence
        .iter()
        .rev()
        .take(4)
        .map(|(_, v)| *v)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    let shrinks = tail
        .windows(2)
        .all(|w| w[1] == 0.0 || w[0] >= TREND_SHRINK_FACTOR * w[1]);
    if shrinks {
        return Trend::Decaying;
    }
    let grows = tail.windows(2).all(|w| w[1] >= TREND_SHRINK_FACTOR * w[0]);
    if grows {
        return Trend::Growing;
    }
    Trend::Flat
}

/// Renders a numeric limit claim ("criterion → 0") from grid evidence alone:
/// holds when the final value sits below [`TREND_EPSILON`] and the tail
/// windows shrink by at least [`TREND_SHRINK_FACTOR`]; fails when every
/// window stays above [`TREND_DELTA`]; inconclusive otherwise. Builtin
/// families override this with closed-form facts, keeping the windows as
/// evidence.
pub fn limit_status_from_evidence(evidence: &[(f64, f64)]) -> Status {
    if evidence.is_empty() {
        return Status::Inconclusive;
    }
    let last = evidence[evidence.len() - 1].1;
    if last < TREND_EPSILON && classify_trend(evidence) == Trend::Decaying {
        return Status::Holds;
    }
    if evidence.iter().all(|(_, v)| *v >= TREND_DELTA) {
        return Status::Fails;
    }
    Status::Inconclusive
}
