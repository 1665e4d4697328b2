//! Exact classical baselines under the same comparison metering.

use crate::claw::cost::metered_mergesort;
use crate::error::Result;
use crate::oracle::{ClawProblem, FunctionInstance, QueryLedger, Side};
use crate::report::{ReportParams, RunReport, RunResult};

/// Sort-and-scan distinctness: mergesort the table then compare each
/// adjacent sorted pair once. Never errs; at most N ceil(log2 N) + N - 1
/// comparisons.
pub fn classical_sort_ed(f: &FunctionInstance) -> Result<RunReport> {
    let n = f.size();
    let problem = ClawProblem::within(f);
    let mut ledger = QueryLedger::new();
    let ids: Vec<usize> = (1..=n).collect();
    let sorted = metered_mergesort(&problem, Side::F, &ids, &mut ledger)?;
    let mut result = RunResult::Distinct;
    for w in sorted.windows(2) {
        // Sorted order gives f(w0) <= f(w1); the reverse comparison tests equality.
        if problem.compare(Side::F, w[1], Side::F, w[0], &mut ledger)? {
            let (x, y) = (w[0].min(w[1]), w[0].max(w[1]));
            result = RunResult::CollisionFound { x, y };
            break;
        }
    }
    Ok(RunReport::sampled(
        "classical_sort_ed",
        result,
        &ledger,
        1,
        ReportParams::default(),
    ))
}

/// Sort f, then binary-search every g(y) in it; exact, stops at the first
/// claw. Costs at most N ceil(log2 N) + M (ceil(log2(N+1)) + 1) comparisons.
pub fn classical_claw(f: &FunctionInstance, g: &FunctionInstance) -> Result<RunReport> {
    let n = f.size();
    let m = g.size();
    let problem = ClawProblem::between(f, g);
    let mut ledger = QueryLedger::new();
    let ids: Vec<usize> = (1..=n).collect();
    let sorted = metered_mergesort(&problem, Side::F, &ids, &mut ledger)?;
    let mut result = RunResult::NotFound;
    'outer: for y in 1..=m {
        // Classical lower bound: leftmost position with f >= g(y).
        let mut lo = 0usize;
        let mut hi = n;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if problem.compare(Side::G, y, Side::F, sorted[mid], &mut ledger)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if lo < n {
            // We know g(y) <= f(sorted[lo]); one more comparison decides equality.
            if problem.compare(Side::F, sorted[lo], Side::G, y, &mut ledger)? {
                result = RunResult::ClawFound { x: sorted[lo], y };
                break 'outer;
            }
        }
    }
    Ok(RunReport::sampled(
        "classical_claw",
        result,
        &ledger,
        1,
        ReportParams::default(),
    ))
}
