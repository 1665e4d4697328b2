//! Claw finding when both tables are ordered: decompose into 2*ceil(N/r)
//! aligned subproblems of size r = ceil(log2(N)^2), amplify a search over
//! them, and recurse, giving sqrt(N) times a near-constant factor overall.
//!
//! A probe of one subproblem costs a fixed-schedule alignment search of
//! ceil(log2(N+1)) comparisons plus the recursive cost at size r. Unequal or
//! boundary-clipped windows are padded with +infinity sentinels; sentinel
//! comparisons are metered like any other access but can never form a claw.

use rand::Rng;

use crate::amplify::{DECISION_CUTOFF_MULTIPLIER, QSEARCH_GROWTH};
use crate::error::{Error, Result};
use crate::numerics::{ceil_log2, isqrt};
use crate::oracle::{ClawProblem, FunctionInstance, QueryLedger, RunRng};
use crate::report::{Mode, ReportParams, RunReport, RunResult};

/// Sizes at or below this are solved by the metered merge-intersect scan.
/// 19 is the smallest floor under which r(N) = ceil(log2(N)^2) still equals
/// N and the decomposition would stop shrinking.
pub const BASE_MERGE_THRESHOLD: usize = 19;

/// Iterated-logarithm count: min { i >= 0 : log2^(i)(n) <= 1 }.
pub fn log_star(n: usize) -> u32 {
    let mut x = n as f64;
    let mut i = 0;
    while x > 1.0 {
        x = x.log2();
        i += 1;
    }
    i
}

/// Subproblem edge r = ceil(log2(n)^2).
pub fn recursion_block(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    ((n as f64).log2().powi(2).ceil() as usize).max(1)
}

fn is_base(n: usize) -> bool {
    n <= BASE_MERGE_THRESHOLD || recursion_block(n) >= n
}

fn decision_cutoff(k: usize) -> u64 {
    let root = isqrt(k);
    let ceil_root = if root * root == k { root } else { root + 1 };
    DECISION_CUTOFF_MULTIPLIER * ceil_root as u64
}

/// One aligned subproblem: a block window of one table and the window of the
/// other table starting at the least entry >= the block's first value.
/// Windows are 1-based global index ranges; an empty aligned window has
/// length 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subproblem {
    pub f_start: usize,
    pub f_len: usize,
    pub g_start: usize,
    pub g_len: usize,
}

/// The 2*ceil(N/r) subproblem descriptors of an equal-size ordered pair.
pub fn subproblems(
    f: &FunctionInstance,
    g: &FunctionInstance,
    r: usize,
) -> Result<Vec<Subproblem>> {
    if !f.is_ordered() || !g.is_ordered() {
        return Err(Error::InvalidArgument("both tables must be ordered".into()));
    }
    if f.size() != g.size() {
        return Err(Error::InvalidArgument(
            "decomposition expects equal domain sizes".into(),
        ));
    }
    let n = f.size();
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "block size {r} outside 1..={n}"
        )));
    }
    let count = n.div_ceil(r);
    let mut out = Vec::with_capacity(2 * count);
    for i in 0..count {
        let block_start = i * r + 1;
        let block_len = r.min(n - i * r);
        let target = f.value(block_start)?;
        let j = g.values().partition_point(|&v| v < target) + 1;
        let g_len = if j <= n { r.min(n - j + 1) } else { 0 };
        out.push(Subproblem {
            f_start: block_start,
            f_len: block_len,
            g_start: j,
            g_len,
        });
    }
    for j_block in 0..count {
        let block_start = j_block * r + 1;
        let block_len = r.min(n - j_block * r);
        let target = g.value(block_start)?;
        let i = f.values().partition_point(|&v| v < target) + 1;
        let f_len = if i <= n { r.min(n - i + 1) } else { 0 };
        out.push(Subproblem {
            f_start: i,
            f_len,
            g_start: block_start,
            g_len: block_len,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Padded windows
// ---------------------------------------------------------------------------

/// A window into one table, padded with +infinity sentinels up to the
/// nominal recursion size.
#[derive(Debug, Clone, Copy)]
struct Win<'a> {
    inst: &'a FunctionInstance,
    start: usize,
    len: usize,
}

impl<'a> Win<'a> {
    fn value(&self, i: usize) -> Option<i64> {
        if i >= 1 && i <= self.len {
            Some(
                self.inst
                    .value(self.start + i - 1)
                    .expect("window in range"),
            )
        } else {
            None
        }
    }

    fn global(&self, i: usize) -> usize {
        self.start + i - 1
    }
}

/// Metered sentinel-aware comparison on padded windows; sentinels sort above
/// every real value.
fn win_compare(a: &Win, i: usize, b: &Win, j: usize, ledger: &mut QueryLedger) -> bool {
    ledger.count_comparison();
    match (a.value(i), b.value(j)) {
        (Some(va), Some(vb)) => va <= vb,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => true,
    }
}

/// White-box counterpart of the alignment rule: least local index j in
/// 1..=nominal with window value >= target (sentinels count as +infinity);
/// nominal+1 when the target itself is a sentinel and no sentinel exists.
fn alignment_index(target: Option<i64>, win: &Win, nominal: usize) -> usize {
    match target {
        Some(t) => {
            for j in 1..=nominal {
                match win.value(j) {
                    Some(v) if v >= t => return j,
                    Some(_) => {}
                    None => return j,
                }
            }
            nominal + 1
        }
        None => {
            if win.len < nominal {
                win.len + 1
            } else {
                nominal + 1
            }
        }
    }
}

/// Fixed-schedule metered lower bound over a padded window: exactly
/// ceil(log2(nominal+1)) comparisons.
fn metered_alignment(
    target_win: &Win,
    target_idx: usize,
    search_win: &Win,
    nominal: usize,
    ledger: &mut QueryLedger,
) -> usize {
    let steps = ceil_log2(nominal + 1);
    let mut lo = 0usize;
    let mut hi = nominal;
    for _ in 0..steps {
        if lo < hi {
            let mid = (lo + hi) / 2;
            if win_compare(target_win, target_idx, search_win, mid + 1, ledger) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        } else {
            win_compare(target_win, target_idx, target_win, target_idx, ledger);
        }
    }
    lo + 1
}

/// Metered merge-intersect over the real parts of two sorted windows:
/// at most 2p + q comparisons.
fn merge_intersect(wf: &Win, wg: &Win, ledger: &mut QueryLedger) -> Option<(usize, usize)> {
    let mut i = 1usize;
    let mut j = 1usize;
    while i <= wf.len && j <= wg.len {
        if win_compare(wf, i, wg, j, ledger) {
            if win_compare(wg, j, wf, i, ledger) {
                return Some((wf.global(i), wg.global(j)));
            }
            i += 1;
        } else {
            j += 1;
        }
    }
    None
}

/// White-box claw scan over the real parts of two sorted windows.
fn window_has_claw(wf: &Win, wg: &Win) -> bool {
    let mut i = 1usize;
    let mut j = 1usize;
    while i <= wf.len && j <= wg.len {
        let a = wf.value(i).unwrap();
        let b = wg.value(j).unwrap();
        if a == b {
            return true;
        }
        if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    false
}

/// Builds subproblem `s` of a padded pair of nominal size `n` with block
/// size `r`; returns the two child windows (each of nominal size r).
fn build_subproblem<'a>(
    wf: &Win<'a>,
    wg: &Win<'a>,
    n: usize,
    r: usize,
    s: usize,
) -> (Win<'a>, Win<'a>) {
    let count = n.div_ceil(r);
    let (block_side, aligned_side, block_idx, block_is_f) = if s < count {
        (wf, wg, s, true)
    } else {
        (wg, wf, s - count, false)
    };
    let local_start = block_idx * r + 1;
    let block_real = block_side
        .len
        .saturating_sub(block_idx * r)
        .min(r.min(n - block_idx * r));
    let block_win = Win {
        inst: block_side.inst,
        start: block_side.start + local_start - 1,
        len: block_real,
    };
    let target = block_side.value(local_start);
    let j = alignment_index(target, aligned_side, n);
    let aligned_real = if j <= aligned_side.len {
        r.min(aligned_side.len - j + 1)
    } else {
        0
    };
    let aligned_win = Win {
        inst: aligned_side.inst,
        start: aligned_side.start + j - 1,
        len: aligned_real,
    };
    if block_is_f {
        (block_win, aligned_win)
    } else {
        (aligned_win, block_win)
    }
}

/// Sampled recursion. Returns the found global claw (if any) and the number
/// of outer applications used at this level.
fn rec_sampled(
    wf: &Win,
    wg: &Win,
    nominal: usize,
    rng: &mut RunRng,
    ledger: &mut QueryLedger,
    cutoff_override: Option<u64>,
    block_override: Option<usize>,
) -> Result<(Option<(usize, usize)>, u64)> {
    if is_base(nominal) && block_override.is_none() {
        return Ok((merge_intersect(wf, wg, ledger), 1));
    }
    let r = block_override.unwrap_or_else(|| recursion_block(nominal));
    let count = nominal.div_ceil(r);
    let k_sub = 2 * count;
    let marked: Vec<bool> = (0..k_sub)
        .map(|s| {
            let (sf, sg) = build_subproblem(wf, wg, nominal, r, s);
            window_has_claw(&sf, &sg)
        })
        .collect();
    let marked_ids: Vec<usize> = (0..k_sub).filter(|&s| marked[s]).collect();
    let unmarked_ids: Vec<usize> = (0..k_sub).filter(|&s| !marked[s]).collect();
    let t = marked_ids.len();
    let theta = ((t as f64 / k_sub as f64).sqrt()).asin();
    let cutoff = cutoff_override.unwrap_or_else(|| decision_cutoff(k_sub));
    let cap = (k_sub as f64).sqrt();

    let probe =
        |s: usize, rng: &mut RunRng, ledger: &mut QueryLedger| -> Result<Option<(usize, usize)>> {
            let (sf, sg) = build_subproblem(wf, wg, nominal, r, s);
            // Charge the alignment search at this level's size, then recurse.
            let count_local = nominal.div_ceil(r);
            let (block_win, aligned_win, block_idx) = if s < count_local {
                (*wf, *wg, s)
            } else {
                (*wg, *wf, s - count_local)
            };
            metered_alignment(&block_win, block_idx * r + 1, &aligned_win, nominal, ledger);
            let (claw, _) = rec_sampled(&sf, &sg, r, rng, ledger, None, None)?;
            Ok(claw)
        };

    let mut m = 1.0f64;
    let mut used = 0u64;
    if cutoff == 0 {
        return Ok((None, 0));
    }
    loop {
        let draws = (m.ceil() as u64).max(1);
        let mut j = rng.gen_range(0..draws);
        j = j.min(cutoff - used - 1);
        for _ in 0..j {
            let s = rng.gen_range(0..k_sub);
            probe(s, rng, ledger)?;
        }
        // Measurement: the verification probe runs on the measured subproblem.
        let success = t > 0 && {
            let p = ((2 * j + 1) as f64 * theta).sin().powi(2);
            rng.gen_bool(p.clamp(0.0, 1.0))
        };
        let s_measured = if success {
            marked_ids[rng.gen_range(0..t)]
        } else if !unmarked_ids.is_empty() {
            unmarked_ids[rng.gen_range(0..unmarked_ids.len())]
        } else {
            rng.gen_range(0..k_sub)
        };
        let verified = probe(s_measured, rng, ledger)?;
        used += j + 1;
        if success {
            if let Some(claw) = verified {
                return Ok((Some(claw), used));
            }
            // Recursive verification missed; keep amplifying.
        }
        if used >= cutoff {
            return Ok((None, used));
        }
        m = (m * QSEARCH_GROWTH).min(cap).max(1.0);
    }
}

/// Iteration count of known-amplitude amplification over `k` items with `t`
/// marked, kept real-valued: pi / (4 asin(sqrt(t/k))). Nested levels are
/// measurement-free (one final measurement at the top), so no verification
/// term enters here.
fn nested_amplification_apps(k: usize, t: usize) -> f64 {
    std::f64::consts::PI / (4.0 * ((t as f64 / k as f64).sqrt()).asin())
}

/// Pinned analytic cost recursion at nominal size `n`, assuming one claw-
/// bearing subproblem per level:
/// T(n) = pi/(4 asin(sqrt(1/K))) * (ceil(log2(n+1)) + T(r)), K = 2 ceil(n/r),
/// with the worst-case merge cost 3n at the base.
pub fn both_ordered_pinned_cost(n: usize) -> Result<f64> {
    if is_base(n) {
        return Ok(3.0 * n as f64);
    }
    let r = recursion_block(n);
    let k_sub = 2 * n.div_ceil(r);
    Ok(nested_amplification_apps(k_sub, 1)
        * (ceil_log2(n + 1) as f64 + both_ordered_pinned_cost(r)?))
}

/// Claw finding when both tables are ordered. Unequal sizes are padded to
/// the larger with sentinels. Succeeds with probability at least 2/3 when a
/// claw exists; witness-free runs stop after the decision cutoff.
pub fn both_ordered_claw(
    f: &FunctionInstance,
    g: &FunctionInstance,
    mode: Mode,
    rng: &mut RunRng,
    cutoff: Option<u64>,
    block_override: Option<usize>,
) -> Result<RunReport> {
    if !f.is_ordered() || !g.is_ordered() {
        return Err(Error::InvalidArgument("both tables must be ordered".into()));
    }
    let nominal = f.size().max(g.size());
    if let Some(b) = block_override {
        if b == 0 || b >= nominal {
            return Err(Error::InvalidArgument(format!(
                "top-level block override {b} outside 1..{nominal}"
            )));
        }
    }
    let wf = Win {
        inst: f,
        start: 1,
        len: f.size(),
    };
    let wg = Win {
        inst: g,
        start: 1,
        len: g.size(),
    };
    let base = is_base(nominal) && block_override.is_none();
    let r = if base {
        nominal
    } else {
        block_override.unwrap_or_else(|| recursion_block(nominal))
    };
    let params = ReportParams {
        r: Some(r),
        cutoff_rounds: cutoff,
        ..ReportParams::default()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let (claw, used) =
                rec_sampled(&wf, &wg, nominal, rng, &mut ledger, cutoff, block_override)?;
            let result = match claw {
                Some((x, y)) => {
                    debug_assert_eq!(f.value(x)?, g.value(y)?);
                    RunResult::ClawFound { x, y }
                }
                None => RunResult::NotFound,
            };
            Ok(RunReport::sampled(
                "both_ordered",
                result,
                &ledger,
                used,
                params,
            ))
        }
        Mode::Analytic => {
            let problem = ClawProblem::between(f, g);
            let witness = {
                let mut claws = problem.claw_set();
                claws.sort_by_key(|c| (c.x, c.y));
                claws.first().copied()
            };
            if base {
                let comps = 3.0 * nominal as f64;
                let result = match witness {
                    Some(c) => RunResult::ClawFound { x: c.x, y: c.y },
                    None => RunResult::NotFound,
                };
                return Ok(RunReport::analytic(
                    "both_ordered",
                    result,
                    comps,
                    1.0,
                    params,
                ));
            }
            let count = nominal.div_ceil(r);
            let k_sub = 2 * count;
            let t = (0..k_sub)
                .filter(|&s| {
                    let (sf, sg) = build_subproblem(&wf, &wg, nominal, r, s);
                    window_has_claw(&sf, &sg)
                })
                .count();
            let probe_cost = ceil_log2(nominal + 1) as f64 + both_ordered_pinned_cost(r)?;
            let (apps, result) = if t > 0 {
                let c = witness.expect("claw-bearing subproblem implies a claw");
                (
                    nested_amplification_apps(k_sub, t),
                    RunResult::ClawFound { x: c.x, y: c.y },
                )
            } else {
                let cut = cutoff.unwrap_or_else(|| decision_cutoff(k_sub));
                (cut as f64, RunResult::NotFound)
            };
            Ok(RunReport::analytic(
                "both_ordered",
                result,
                apps * probe_cost,
                apps,
                params,
            ))
        }
    }
}
