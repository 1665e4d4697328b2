//! Finders that exploit an ordered f: claw search by rotation-level search
//! over g's domain with a binary-search predicate, and collision search over
//! the consecutive-pair space.

use crate::amplify::{expected_applications_capped, qsearch_metered, DECISION_CUTOFF_MULTIPLIER};
use crate::claw::cost::{fixed_schedule_lower_bound, fixed_search_cost};
use crate::error::{Error, Result};
use crate::numerics::isqrt;
use crate::oracle::{ClawProblem, FunctionInstance, QueryLedger, RunRng, Side};
use crate::report::{Mode, ReportParams, RunReport, RunResult};

/// Decision-rule cutoff: 3 * ceil(sqrt(K)) applications.
fn decision_cutoff(k: usize) -> u64 {
    let root = isqrt(k);
    let ceil_root = if root * root == k { root } else { root + 1 };
    DECISION_CUTOFF_MULTIPLIER * ceil_root as u64
}

/// Claw finding with ordered f: search all y in `[M]`; one predicate
/// application costs a fixed-schedule binary search over f,
/// ceil(log2(N+1)) comparisons.
pub fn ordered_claw(
    f: &FunctionInstance,
    g: &FunctionInstance,
    mode: Mode,
    rng: &mut RunRng,
    cutoff: Option<u64>,
) -> Result<RunReport> {
    if !f.is_ordered() {
        return Err(Error::InvalidArgument(
            "ordered claw search needs ordered f".into(),
        ));
    }
    let n = f.size();
    let m = g.size();
    let problem = ClawProblem::between(f, g);
    let pred_cost = fixed_search_cost(n);
    let f_ids: Vec<usize> = (1..=n).collect();

    // White-box marked set: y is marked when g(y) occurs in f.
    let marked_of = |y0: usize| -> bool {
        let target = g.value(y0 + 1).expect("validated index");
        f.values().binary_search(&target).is_ok()
    };
    let t = (0..m).filter(|&y| marked_of(y)).count();

    let params = ReportParams {
        cutoff_rounds: cutoff,
        ..ReportParams::default()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let out = {
                let ledger = &mut ledger;
                qsearch_metered(m, marked_of, rng, cutoff, || {
                    fixed_schedule_lower_bound(&problem, Side::F, &f_ids, Side::G, 1, ledger)?;
                    Ok(())
                })?
            };
            let result = match out.found {
                Some(y0) => {
                    let y = y0 + 1;
                    let target = g.value(y)?;
                    let x = f.values().partition_point(|&v| v < target) + 1;
                    debug_assert!(problem.is_claw(x, y)?);
                    RunResult::ClawFound { x, y }
                }
                None => RunResult::NotFound,
            };
            Ok(RunReport::sampled(
                "ordered_claw",
                result,
                &ledger,
                out.oracle_applications,
                params,
            ))
        }
        Mode::Analytic => {
            if t > 0 {
                let apps = expected_applications_capped(m, t)?;
                let y = (0..m).find(|&y0| marked_of(y0)).expect("t > 0") + 1;
                let target = g.value(y)?;
                let x = f.values().partition_point(|&v| v < target) + 1;
                Ok(RunReport::analytic(
                    "ordered_claw",
                    RunResult::ClawFound { x, y },
                    apps * pred_cost as f64,
                    apps,
                    params,
                ))
            } else {
                let cutoff = cutoff.unwrap_or_else(|| decision_cutoff(m));
                let mut params = params;
                params.cutoff_rounds = Some(cutoff);
                Ok(RunReport::analytic(
                    "ordered_claw",
                    RunResult::NotFound,
                    cutoff as f64 * pred_cost as f64,
                    cutoff as f64,
                    params,
                ))
            }
        }
    }
}

/// Collision finding in an ordered table: search the N-1 consecutive pairs;
/// the predicate [f(i+1) <= f(i)] is a single comparison and, under order,
/// detects exactly the ties.
pub fn ordered_collision(
    f: &FunctionInstance,
    mode: Mode,
    rng: &mut RunRng,
    cutoff: Option<u64>,
) -> Result<RunReport> {
    if !f.is_ordered() {
        return Err(Error::InvalidArgument(
            "ordered collision search needs ordered f".into(),
        ));
    }
    let n = f.size();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 points".into()));
    }
    let problem = ClawProblem::within(f);
    let k = n - 1;
    let marked_of = |i0: usize| f.values()[i0] == f.values()[i0 + 1];
    let t = (0..k).filter(|&i| marked_of(i)).count();
    let params = ReportParams {
        cutoff_rounds: cutoff,
        ..ReportParams::default()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let out = {
                let ledger = &mut ledger;
                qsearch_metered(k, marked_of, rng, cutoff, || {
                    problem.compare(Side::F, 2, Side::F, 1, ledger)?;
                    Ok(())
                })?
            };
            let result = match out.found {
                Some(i0) => RunResult::CollisionFound {
                    x: i0 + 1,
                    y: i0 + 2,
                },
                None => RunResult::NotFound,
            };
            Ok(RunReport::sampled(
                "ordered_collision",
                result,
                &ledger,
                out.oracle_applications,
                params,
            ))
        }
        Mode::Analytic => {
            if t > 0 {
                let apps = expected_applications_capped(k, t)?;
                let i0 = (0..k).find(|&i| marked_of(i)).expect("t > 0");
                Ok(RunReport::analytic(
                    "ordered_collision",
                    RunResult::CollisionFound {
                        x: i0 + 1,
                        y: i0 + 2,
                    },
                    apps,
                    apps,
                    params,
                ))
            } else {
                let cutoff = cutoff.unwrap_or_else(|| decision_cutoff(k));
                let mut params = params;
                params.cutoff_rounds = Some(cutoff);
                Ok(RunReport::analytic(
                    "ordered_collision",
                    RunResult::NotFound,
                    cutoff as f64,
                    cutoff as f64,
                    params,
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_ordered_pair, rng_from_seed};

    fn ord(values: &[i64]) -> FunctionInstance {
        FunctionInstance::new(values.to_vec(), true).unwrap()
    }

    #[test]
    fn ordered_claw_unique_witness() {
        let f = ord(&[1, 3, 5, 7]);
        let g = FunctionInstance::new(vec![6, 2, 7], false).unwrap();
        let mut rng = rng_from_seed(1);
        let report = ordered_claw(&f, &g, Mode::Sampled, &mut rng, None).unwrap();
        assert_eq!(report.result, RunResult::ClawFound { x: 4, y: 3 });
        // Comparisons are whole multiples of the fixed predicate schedule.
        let pred = fixed_search_cost(4) as f64;
        assert_eq!(report.comparisons % pred, 0.0);
    }

    #[test]
    fn ordered_claw_no_witness_with_cutoff() {
        let (f, g) = gen_ordered_pair(16, 16, false, 5).unwrap();
        let mut rng = rng_from_seed(2);
        let report = ordered_claw(&f, &g, Mode::Sampled, &mut rng, Some(12)).unwrap();
        assert_eq!(report.result, RunResult::NotFound);
        assert_eq!(report.outer_rounds, 12.0);
        assert!(ordered_claw(&f, &g, Mode::Sampled, &mut rng, None).is_err());
    }

    #[test]
    fn ordered_claw_requires_order() {
        let f = FunctionInstance::new(vec![3, 1], false).unwrap();
        let g = FunctionInstance::new(vec![1], false).unwrap();
        let mut rng = rng_from_seed(3);
        assert!(ordered_claw(&f, &g, Mode::Sampled, &mut rng, None).is_err());
    }

    #[test]
    fn ordered_collision_finds_adjacent_tie() {
        let f = ord(&[1, 2, 2, 5]);
        let mut rng = rng_from_seed(4);
        let report = ordered_collision(&f, Mode::Sampled, &mut rng, None).unwrap();
        assert_eq!(report.result, RunResult::CollisionFound { x: 2, y: 3 });
    }

    #[test]
    fn ordered_collision_strictly_increasing_reports_absence() {
        let f = ord(&[1, 2, 3, 4, 5]);
        let mut rng = rng_from_seed(5);
        let report = ordered_collision(&f, Mode::Sampled, &mut rng, Some(9)).unwrap();
        assert_eq!(report.result, RunResult::NotFound);

        let analytic = ordered_collision(&f, Mode::Analytic, &mut rng, None).unwrap();
        assert_eq!(analytic.result, RunResult::NotFound);
        assert_eq!(analytic.comparisons, decision_cutoff(4) as f64);
    }

    #[test]
    fn ordered_collision_analytic_sqrt_scaling() {
        // Raw log-log slope over a planted-tie sweep sits near 1/2.
        let mut rng = rng_from_seed(8);
        let mut pts = Vec::new();
        for k in 8..=16u32 {
            let n = 1usize << k;
            let (f, _) = gen_ordered_pair(n, n, false, 40 + k as u64).unwrap();
            let mut values = f.values().to_vec();
            let mid = values.len() / 2;
            values[mid] = values[mid - 1];
            let f = FunctionInstance::new(values, true).unwrap();
            let report = ordered_collision(&f, Mode::Analytic, &mut rng, None).unwrap();
            assert!(report.result.is_witnessed());
            pts.push((n as f64, report.comparisons));
        }
        let fit = crate::fit::fit_exponent(&pts, None).unwrap();
        assert!(
            (0.45..=0.55).contains(&fit.slope),
            "raw slope {} outside [0.45, 0.55]",
            fit.slope
        );
    }

    #[test]
    fn ordered_claw_analytic_scales_with_fixed_predicate() {
        let (f, g) = gen_ordered_pair(256, 256, true, 7).unwrap();
        let mut rng = rng_from_seed(6);
        let report = ordered_claw(&f, &g, Mode::Analytic, &mut rng, None).unwrap();
        let apps = report.outer_rounds;
        assert!((report.comparisons - apps * fixed_search_cost(256) as f64).abs() < 1e-9);
        assert!(report.result.is_witnessed());
    }
}
