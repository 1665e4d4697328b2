//! Run reports: outcome plus a full cost breakdown, serializable to JSON.

use serde::{Deserialize, Serialize};

use crate::amplify::{DECISION_CUTOFF_MULTIPLIER, QSEARCH_GROWTH};
use crate::oracle::{ClawPair, QueryLedger};

/// Cost accounting mode of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Execute the randomized schedules and report actual ledger counts.
    Sampled,
    /// Evaluate the exact expected cost of the same schedules.
    Analytic,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Sampled => write!(f, "sampled"),
            Mode::Analytic => write!(f, "analytic"),
        }
    }
}

/// Outcome of a claw/collision run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunResult {
    ClawFound { x: usize, y: usize },
    CollisionFound { x: usize, y: usize },
    Distinct,
    NotFound,
}

impl RunResult {
    pub fn witness(&self) -> Option<ClawPair> {
        match *self {
            RunResult::ClawFound { x, y } | RunResult::CollisionFound { x, y } => {
                Some(ClawPair { x, y })
            }
            _ => None,
        }
    }

    pub fn is_witnessed(&self) -> bool {
        self.witness().is_some()
    }
}

/// Schedule constants and per-run parameters echoed for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    /// Growth factor of the unknown-t schedule.
    pub growth: f64,
    /// Decision cutoff multiplier (applications per ceil(sqrt(K))).
    pub decision_cutoff_multiplier: u64,
    /// PRNG algorithm name.
    pub rng: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff_rounds: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_cutoff: Option<u64>,
    /// Exact per-round success probability used by the outer amplification.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_success: Option<f64>,
    /// Fraction of stage-1 items whose success completes the outer round
    /// (triangle runs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage1_fraction: Option<f64>,
}

impl Default for ReportParams {
    fn default() -> Self {
        Self {
            growth: QSEARCH_GROWTH,
            decision_cutoff_multiplier: DECISION_CUTOFF_MULTIPLIER,
            rng: crate::oracle::gen::RNG_ALGORITHM.to_string(),
            seed: None,
            ell: None,
            r: None,
            k: None,
            subset_size: None,
            cutoff_rounds: None,
            inner_cutoff: None,
            round_success: None,
            stage1_fraction: None,
        }
    }
}

/// Outcome and cost breakdown of one claw/collision run.
///
/// In sampled mode the cost fields are integral ledger counts; in analytic
/// mode they are exact expected values of the same schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub mode: Mode,
    pub result: RunResult,
    pub comparisons: f64,
    pub evaluations: f64,
    pub edge_queries: f64,
    pub outer_rounds: f64,
    pub params: ReportParams,
}

impl RunReport {
    pub fn sampled(
        algorithm: &str,
        result: RunResult,
        ledger: &QueryLedger,
        outer_rounds: u64,
        params: ReportParams,
    ) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            mode: Mode::Sampled,
            result,
            comparisons: ledger.comparisons() as f64,
            evaluations: ledger.evaluations() as f64,
            edge_queries: ledger.edge_queries() as f64,
            outer_rounds: outer_rounds as f64,
            params,
        }
    }

    pub fn analytic(
        algorithm: &str,
        result: RunResult,
        comparisons: f64,
        outer_rounds: f64,
        params: ReportParams,
    ) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            mode: Mode::Analytic,
            result,
            comparisons,
            evaluations: 0.0,
            edge_queries: 0.0,
            outer_rounds,
            params,
        }
    }
}
