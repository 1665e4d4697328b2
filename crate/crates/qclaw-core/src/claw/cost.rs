//! Metered comparison-model primitives shared by the finders.

use crate::error::Result;
use crate::numerics::ceil_log2;
use crate::oracle::{ClawProblem, QueryLedger, Side};

/// Top-down mergesort of domain ids by table value, one metered comparison
/// per merge step. Stable; returns the ids in non-decreasing value order.
pub fn metered_mergesort(
    problem: &ClawProblem,
    side: Side,
    ids: &[usize],
    ledger: &mut QueryLedger,
) -> Result<Vec<usize>> {
    if ids.len() <= 1 {
        return Ok(ids.to_vec());
    }
    let mid = ids.len() / 2;
    let left = metered_mergesort(problem, side, &ids[..mid], ledger)?;
    let right = metered_mergesort(problem, side, &ids[mid..], ledger)?;
    let mut out = Vec::with_capacity(ids.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if problem.compare(side, left[i], side, right[j], ledger)? {
            out.push(left[i]);
            i += 1;
        } else {
            out.push(right[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    Ok(out)
}

/// Comparison count of the fixed-schedule search over `len` sorted keys.
pub fn fixed_search_cost(len: usize) -> u64 {
    ceil_log2(len + 1) as u64
}

/// Reversible-style lower bound: finds the leftmost position (0..=len) whose
/// key is >= the target using exactly `fixed_search_cost(len)` metered
/// comparisons. Rounds where the interval has already collapsed burn a
/// padding comparison so every invocation costs the same.
pub fn fixed_schedule_lower_bound(
    problem: &ClawProblem,
    sorted_side: Side,
    sorted_ids: &[usize],
    target_side: Side,
    target_id: usize,
    ledger: &mut QueryLedger,
) -> Result<usize> {
    let steps = fixed_search_cost(sorted_ids.len());
    let mut lo = 0usize;
    let mut hi = sorted_ids.len();
    for _ in 0..steps {
        if lo < hi {
            let mid = (lo + hi) / 2;
            // [target <= key(mid)] holds exactly when position mid is >= target.
            if problem.compare(target_side, target_id, sorted_side, sorted_ids[mid], ledger)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        } else {
            problem.compare(target_side, target_id, target_side, target_id, ledger)?;
        }
    }
    Ok(lo)
}
