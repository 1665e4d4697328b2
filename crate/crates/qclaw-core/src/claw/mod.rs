//! Claw and collision finders over the metered comparison oracle, with
//! classical baselines. Each finder runs in two modes: `sampled` executes
//! the randomized schedules against a seeded stream, `analytic` evaluates
//! the exact expected cost of the same schedules.

pub mod analysis;
mod both_ordered;
mod classical;
mod cost;
mod ordered;

pub use both_ordered::{
    both_ordered_claw, both_ordered_pinned_cost, log_star, subproblems, Subproblem,
    BASE_MERGE_THRESHOLD,
};
pub use classical::{classical_claw, classical_sort_ed};
pub use cost::{fixed_schedule_lower_bound, fixed_search_cost, metered_mergesort};
pub use ordered::{ordered_claw, ordered_collision};

use std::collections::HashSet;

use rand::Rng;

use crate::amplify::{expected_applications, qsearch_cutoff_analysis, qsearch_metered};
use crate::claw::analysis::{classify, generic_round_success, marked_count_distribution};
use crate::error::{Error, Result};
use crate::numerics::{ceil_cbrt, expected_mergesort_comparisons, isqrt};
use crate::oracle::{ClawPair, ClawProblem, FunctionInstance, QueryLedger, RunRng, Side};
use crate::report::{Mode, ReportParams, RunReport, RunResult};

/// Repetition budget of the 2-to-1 collision finder before it gives up.
pub const TWO_TO_ONE_MAX_REPETITIONS: u64 = 9;

/// Inner-search cutoff multiplier of the 2-to-1 round, in units of
/// ceil(sqrt(|B|)) applications. Larger than the decision rule's 3 so a
/// single round succeeds with high constant probability.
pub const TWO_TO_ONE_INNER_MULTIPLIER: u64 = 9;

/// Subdomain restriction budget of the k-repeated finder.
pub const K_REPEATED_MAX_REPETITIONS: u64 = 3;

/// The largest subset parameter compatible with the round shape:
/// max(1, min(N, floor(sqrt(M)))).
pub fn choose_ell(n: usize, m: usize) -> usize {
    n.min(isqrt(m)).max(1)
}

/// Draws a uniform `k`-subset of 1..=n.
fn sample_ids<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, k)
        .iter()
        .map(|i| i + 1)
        .collect()
}

/// Randomized-length draw bound of the round's inner search.
fn inner_draw_bound(ell: usize) -> u64 {
    ((std::f64::consts::FRAC_PI_4 * ell as f64).ceil() as u64).max(1)
}

/// Amplification of a repeatable round procedure with true per-round success
/// probability `a`. Follows the unknown-t schedule without a space cap (a
/// round is not an item search); each application, iterations and the
/// per-measurement verification alike, runs `run_round` once so the round's
/// full oracle cost lands on the ledger.
fn amplified_rounds(
    a: f64,
    cutoff: Option<u64>,
    rng: &mut RunRng,
    mut run_round: impl FnMut(&mut RunRng) -> Result<()>,
) -> Result<(bool, u64)> {
    if a <= 0.0 && cutoff.is_none() {
        return Err(Error::MissingCutoff(
            "witness-free instance in sampled mode needs an outer-round cutoff".into(),
        ));
    }
    if let Some(0) = cutoff {
        return Ok((false, 0));
    }
    let theta = a.max(0.0).sqrt().asin();
    let mut m = 1.0f64;
    let mut used = 0u64;
    loop {
        let draws = (m.ceil() as u64).max(1);
        let mut j = rng.gen_range(0..draws);
        if let Some(c) = cutoff {
            j = j.min(c - used - 1);
        }
        for _ in 0..=j {
            run_round(rng)?;
        }
        used += j + 1;
        if a > 0.0 {
            let p = ((2 * j + 1) as f64 * theta).sin().powi(2);
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                return Ok((true, used));
            }
        }
        if let Some(c) = cutoff {
            if used >= c {
                return Ok((false, used));
            }
        }
        m *= crate::amplify::QSEARCH_GROWTH;
    }
}

fn canonical_claws(problem: &ClawProblem) -> Vec<ClawPair> {
    let mut claws = problem.claw_set();
    claws.sort_by_key(|c| (c.x, c.y));
    claws
}

/// The subset-sampling claw finder.
///
/// One round samples A (|A| = ell) from f's domain and B (|B| = ell^2) from
/// g's, sorts A by value (metered mergesort), and runs one randomized-length
/// rotation search over B whose oracle application costs a fixed-schedule
/// binary search of ceil(log2(ell+1)) comparisons. Rounds are amplified with
/// the exact per-round success probability.
pub fn generic_claw_finder(
    problem: &ClawProblem,
    ell: Option<usize>,
    mode: Mode,
    rng: &mut RunRng,
    cutoff_rounds: Option<u64>,
) -> Result<RunReport> {
    run_rounds_finder(problem, ell, mode, rng, cutoff_rounds, "claw")
}

fn run_rounds_finder(
    problem: &ClawProblem,
    ell: Option<usize>,
    mode: Mode,
    rng: &mut RunRng,
    cutoff_rounds: Option<u64>,
    label: &str,
) -> Result<RunReport> {
    let n = problem.f().size();
    let m = problem.g().size();
    if !problem.is_collision_problem() && n > m {
        return Err(Error::InvalidArgument(format!(
            "claw search expects |f| <= |g|, got {n} > {m}"
        )));
    }
    let ell = ell.unwrap_or_else(|| choose_ell(n, m));
    if ell == 0 || ell > n || ell * ell > m {
        return Err(Error::InvalidArgument(format!(
            "subset parameter {ell} violates ell <= min({n}, sqrt({m}))"
        )));
    }
    let b_size = ell * ell;
    let j_bound = inner_draw_bound(ell);
    let pred_cost = fixed_search_cost(ell);
    let structure = classify(problem)?;
    let a = generic_round_success(&structure, n, m, ell, j_bound)?;
    let claws = canonical_claws(problem);

    let mut params = ReportParams {
        ell: Some(ell),
        cutoff_rounds,
        round_success: Some(a),
        ..ReportParams::default()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let (success, rounds) = {
                let ledger = &mut ledger;
                amplified_rounds(a, cutoff_rounds, rng, |rng| {
                    let a_ids = sample_ids(rng, n, ell);
                    let b_ids = sample_ids(rng, m, b_size);
                    let sorted_a = metered_mergesort(problem, Side::F, &a_ids, ledger)?;
                    let j_in = rng.gen_range(0..j_bound);
                    // j_in iteration applications plus one verification, each
                    // a fixed-schedule probe.
                    for _ in 0..=j_in {
                        fixed_schedule_lower_bound(
                            problem,
                            Side::F,
                            &sorted_a,
                            Side::G,
                            b_ids[0],
                            ledger,
                        )?;
                    }
                    Ok(())
                })?
            };
            let result = if success {
                let witness = claws[rng.gen_range(0..claws.len())];
                debug_assert!(problem.is_claw(witness.x, witness.y)?);
                RunResult::ClawFound {
                    x: witness.x,
                    y: witness.y,
                }
            } else {
                RunResult::NotFound
            };
            Ok(RunReport::sampled(label, result, &ledger, rounds, params))
        }
        Mode::Analytic => {
            let round_cost = expected_mergesort_comparisons(ell)
                + ((j_bound as f64 - 1.0) / 2.0 + 1.0) * pred_cost as f64;
            if a > 0.0 {
                let outer = expected_applications(a)?;
                let witness = claws[0];
                params.round_success = Some(a);
                Ok(RunReport::analytic(
                    label,
                    RunResult::ClawFound {
                        x: witness.x,
                        y: witness.y,
                    },
                    outer * round_cost,
                    outer,
                    params,
                ))
            } else {
                let cutoff = cutoff_rounds.ok_or_else(|| {
                    Error::MissingCutoff("witness-free analytic run needs a cutoff".into())
                })?;
                Ok(RunReport::analytic(
                    label,
                    RunResult::NotFound,
                    cutoff as f64 * round_cost,
                    cutoff as f64,
                    params,
                ))
            }
        }
    }
}

fn as_collision(result: RunResult) -> RunResult {
    match result {
        RunResult::ClawFound { x, y } => RunResult::CollisionFound {
            x: x.min(y),
            y: x.max(y),
        },
        RunResult::NotFound => RunResult::Distinct,
        other => other,
    }
}

/// Element distinctness: collision search with g = f, self-pairs excluded.
/// Reports a verified collision or, after the pinned cutoff of
/// 3 * ceil(1/sqrt(ell^3 / 2N^2)) outer rounds, `Distinct` with error
/// probability at most 1/3.
pub fn element_distinctness(
    f: &FunctionInstance,
    mode: Mode,
    rng: &mut RunRng,
) -> Result<RunReport> {
    let n = f.size();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "distinctness needs at least 2 points".into(),
        ));
    }
    let problem = ClawProblem::within(f);
    let ell = choose_ell(n, n);
    let a_lower = (ell as f64).powi(3) / (2.0 * (n as f64) * (n as f64));
    let cutoff = 3 * (1.0 / a_lower.sqrt()).ceil() as u64;
    let mut report = run_rounds_finder(&problem, Some(ell), mode, rng, Some(cutoff), "ed")?;
    report.result = as_collision(report.result);
    Ok(report)
}

/// Collision finding in a 2-to-1 table: one pass of the subset round with
/// ell = ceil(N^(1/3)) has constant success probability, so a short
/// repeat-until-success loop replaces outer amplification. The inner search
/// over B runs the full capped schedule with a widened cutoff.
pub fn collision_two_to_one(
    f: &FunctionInstance,
    mode: Mode,
    rng: &mut RunRng,
) -> Result<RunReport> {
    let n = f.size();
    let partner = partner_map(f)?;
    let ell = ceil_cbrt(n).min(isqrt(n)).max(1);
    let b_size = ell * ell;
    let pred_cost = fixed_search_cost(ell);
    let inner_cutoff = TWO_TO_ONE_INNER_MULTIPLIER * ell as u64;
    let problem = ClawProblem::within(f);

    let params = ReportParams {
        ell: Some(ell),
        inner_cutoff: Some(inner_cutoff),
        cutoff_rounds: Some(TWO_TO_ONE_MAX_REPETITIONS),
        ..ReportParams::default()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            for rep in 1..=TWO_TO_ONE_MAX_REPETITIONS {
                let a_ids = sample_ids(rng, n, ell);
                let b_ids = sample_ids(rng, n, b_size);
                let sorted_a = metered_mergesort(&problem, Side::F, &a_ids, &mut ledger)?;
                let a_set: HashSet<usize> = a_ids.iter().copied().collect();
                let out = {
                    let ledger = &mut ledger;
                    qsearch_metered(
                        b_size,
                        |idx| a_set.contains(&partner[b_ids[idx] - 1]),
                        rng,
                        Some(inner_cutoff),
                        || {
                            fixed_schedule_lower_bound(
                                &problem,
                                Side::F,
                                &sorted_a,
                                Side::G,
                                b_ids[0],
                                ledger,
                            )?;
                            Ok(())
                        },
                    )?
                };
                if let Some(idx) = out.found {
                    let y = b_ids[idx];
                    let x = partner[y - 1];
                    debug_assert!(problem.is_claw(x, y)?);
                    return Ok(RunReport::sampled(
                        "two_to_one",
                        RunResult::CollisionFound {
                            x: x.min(y),
                            y: x.max(y),
                        },
                        &ledger,
                        rep,
                        params,
                    ));
                }
            }
            Ok(RunReport::sampled(
                "two_to_one",
                RunResult::NotFound,
                &ledger,
                TWO_TO_ONE_MAX_REPETITIONS,
                params,
            ))
        }
        Mode::Analytic => {
            let dist = marked_count_distribution(
                &analysis::WitnessStructure::PerfectMatching {
                    partner: partner.clone(),
                },
                n,
                n,
                ell,
                b_size,
            );
            let mut a_rep = 0.0;
            let mut inner_apps = 0.0;
            for &(tau, pr) in &dist {
                let (succ, apps) = qsearch_cutoff_analysis(b_size, tau, inner_cutoff)?;
                a_rep += pr * succ;
                inner_apps += pr * apps;
            }
            let round_cost = expected_mergesort_comparisons(ell) + inner_apps * pred_cost as f64;
            let mut reps = 0.0;
            let mut reach = 1.0;
            for _ in 0..TWO_TO_ONE_MAX_REPETITIONS {
                reps += reach;
                reach *= 1.0 - a_rep;
            }
            let witness_y = partner[0];
            let mut params = params;
            params.round_success = Some(a_rep);
            Ok(RunReport::analytic(
                "two_to_one",
                RunResult::CollisionFound {
                    x: 1.min(witness_y),
                    y: 1.max(witness_y),
                },
                reps * round_cost,
                reps,
                params,
            ))
        }
    }
}

fn partner_map(f: &FunctionInstance) -> Result<Vec<usize>> {
    use std::collections::HashMap;
    let mut classes: HashMap<i64, Vec<usize>> = HashMap::new();
    for i in 1..=f.size() {
        classes.entry(f.value(i)?).or_default().push(i);
    }
    let mut partner = vec![0usize; f.size()];
    for pair in classes.values() {
        if pair.len() != 2 {
            return Err(Error::InvalidArgument(
                "table is not 2-to-1 (some value lacks exactly two preimages)".into(),
            ));
        }
        partner[pair[0] - 1] = pair[1];
        partner[pair[1] - 1] = pair[0];
    }
    Ok(partner)
}

/// Collision finding when some value repeats at least `k` times: restrict to
/// a random subdomain of ceil(10N/k) points (two class members land in it
/// with high probability) and run distinctness there, retrying with a fresh
/// subdomain up to three times.
pub fn collision_k_repeated(
    f: &FunctionInstance,
    k: usize,
    mode: Mode,
    rng: &mut RunRng,
) -> Result<RunReport> {
    let n = f.size();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "repetition count {k} outside 2..={n}"
        )));
    }
    let subset_size = n.min((10 * n).div_ceil(k)).max(2);
    let mut comparisons = 0.0;
    let mut rounds = 0.0;
    for rep in 1..=K_REPEATED_MAX_REPETITIONS {
        let mut ids = sample_ids(rng, n, subset_size);
        ids.sort_unstable();
        let values: Vec<i64> = ids.iter().map(|&i| f.value(i)).collect::<Result<_>>()?;
        let sub = FunctionInstance::new(values, false)?;
        let sub_report = element_distinctness(&sub, mode, rng)?;
        comparisons += sub_report.comparisons;
        rounds += sub_report.outer_rounds;
        if let RunResult::CollisionFound { x, y } = sub_report.result {
            let gx = ids[x - 1];
            let gy = ids[y - 1];
            let params = ReportParams {
                k: Some(k),
                subset_size: Some(subset_size),
                cutoff_rounds: Some(K_REPEATED_MAX_REPETITIONS),
                ell: sub_report.params.ell,
                ..ReportParams::default()
            };
            let result = RunResult::CollisionFound {
                x: gx.min(gy),
                y: gx.max(gy),
            };
            return Ok(match mode {
                Mode::Sampled => RunReport {
                    algorithm: "k_repeated".into(),
                    mode,
                    result,
                    comparisons,
                    evaluations: 0.0,
                    edge_queries: 0.0,
                    outer_rounds: rounds,
                    params,
                },
                Mode::Analytic => {
                    RunReport::analytic("k_repeated", result, comparisons, rounds, params)
                }
            });
        }
        let _ = rep;
    }
    let params = ReportParams {
        k: Some(k),
        subset_size: Some(subset_size),
        cutoff_rounds: Some(K_REPEATED_MAX_REPETITIONS),
        ..ReportParams::default()
    };
    Ok(RunReport {
        algorithm: "k_repeated".into(),
        mode,
        result: RunResult::NotFound,
        comparisons,
        evaluations: 0.0,
        edge_queries: 0.0,
        outer_rounds: rounds,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k_repeated, gen_planted_claw, gen_two_to_one, rng_from_seed};

    fn fi(values: &[i64]) -> FunctionInstance {
        FunctionInstance::new(values.to_vec(), false).unwrap()
    }

    #[test]
    fn choose_ell_examples() {
        assert_eq!(choose_ell(16, 16), 4);
        assert_eq!(choose_ell(4, 256), 4);
        assert_eq!(choose_ell(1, 1), 1);
    }

    #[test]
    fn generic_finder_unique_claw_sampled() {
        let f = fi(&[1, 2, 3, 4]);
        let g = fi(&[5, 6, 7, 1]);
        let problem = ClawProblem::between(&f, &g);
        let mut rng = rng_from_seed(42);
        let report = generic_claw_finder(&problem, Some(2), Mode::Sampled, &mut rng, None).unwrap();
        assert_eq!(report.result, RunResult::ClawFound { x: 1, y: 4 });
        assert!(report.comparisons > 0.0);
        assert_eq!(report.mode, Mode::Sampled);
    }

    #[test]
    fn generic_finder_analytic_round_probability() {
        let f = fi(&[1, 2, 3, 4]);
        let g = fi(&[5, 6, 7, 1]);
        let problem = ClawProblem::between(&f, &g);
        let mut rng = rng_from_seed(0);
        let report =
            generic_claw_finder(&problem, Some(2), Mode::Analytic, &mut rng, None).unwrap();
        let a = report.params.round_success.unwrap();
        assert!(a >= 8.0 / 32.0, "round success {a}");
        assert_eq!(report.result, RunResult::ClawFound { x: 1, y: 4 });
        // Deterministic analytic numbers.
        let mut rng2 = rng_from_seed(99);
        let again =
            generic_claw_finder(&problem, Some(2), Mode::Analytic, &mut rng2, None).unwrap();
        assert_eq!(report.comparisons, again.comparisons);
    }

    #[test]
    fn generic_finder_rejects_bad_ell() {
        let (f, g) = gen_planted_claw(8, 8, 1).unwrap();
        let problem = ClawProblem::between(&f, &g);
        let mut rng = rng_from_seed(1);
        assert!(generic_claw_finder(&problem, Some(5), Mode::Sampled, &mut rng, None).is_err());
        assert!(generic_claw_finder(&problem, Some(0), Mode::Sampled, &mut rng, None).is_err());
    }

    #[test]
    fn generic_finder_needs_cutoff_without_witness() {
        let f = fi(&[1, 2, 3, 4]);
        let g = fi(&[5, 6, 7, 8]);
        let problem = ClawProblem::between(&f, &g);
        let mut rng = rng_from_seed(2);
        assert!(matches!(
            generic_claw_finder(&problem, Some(2), Mode::Sampled, &mut rng, None),
            Err(Error::MissingCutoff(_))
        ));
        let report =
            generic_claw_finder(&problem, Some(2), Mode::Sampled, &mut rng, Some(12)).unwrap();
        assert_eq!(report.result, RunResult::NotFound);
        assert_eq!(report.outer_rounds, 12.0);
    }

    #[test]
    fn ed_finds_unique_collision() {
        let f = fi(&[5, 3, 5, 1]);
        let mut rng = rng_from_seed(3);
        let report = element_distinctness(&f, Mode::Sampled, &mut rng).unwrap();
        assert_eq!(report.result, RunResult::CollisionFound { x: 1, y: 3 });
    }

    #[test]
    fn ed_distinct_input_reports_distinct() {
        let f = fi(&[4, 2, 7, 1]);
        let mut rng = rng_from_seed(4);
        let report = element_distinctness(&f, Mode::Sampled, &mut rng).unwrap();
        assert_eq!(report.result, RunResult::Distinct);
        // Cutoff used in full.
        assert_eq!(
            report.outer_rounds,
            report.params.cutoff_rounds.unwrap() as f64
        );
    }

    #[test]
    fn two_to_one_small_cases() {
        let f = fi(&[9, 9]);
        let mut rng = rng_from_seed(5);
        let report = collision_two_to_one(&f, Mode::Sampled, &mut rng).unwrap();
        assert_eq!(report.result, RunResult::CollisionFound { x: 1, y: 2 });

        let f = gen_two_to_one(8, 77).unwrap();
        let report = collision_two_to_one(&f, Mode::Sampled, &mut rng).unwrap();
        match report.result {
            RunResult::CollisionFound { x, y } => {
                assert_eq!(f.value(x).unwrap(), f.value(y).unwrap());
                assert_ne!(x, y);
            }
            other => panic!("expected collision, got {other:?}"),
        }
        assert!(collision_two_to_one(&fi(&[1, 2, 3]), Mode::Sampled, &mut rng).is_err());
    }

    #[test]
    fn two_to_one_analytic_deterministic() {
        let f = gen_two_to_one(64, 9).unwrap();
        let mut rng = rng_from_seed(6);
        let r1 = collision_two_to_one(&f, Mode::Analytic, &mut rng).unwrap();
        let r2 = collision_two_to_one(&f, Mode::Analytic, &mut rng).unwrap();
        assert_eq!(r1.comparisons, r2.comparisons);
        assert!(r1.params.round_success.unwrap() > 0.3);
    }

    #[test]
    fn k_repeated_cases() {
        // Constant table: subdomain of 10 points, immediate collision.
        let f = gen_k_repeated(32, 32, 8).unwrap();
        let mut rng = rng_from_seed(7);
        let report = collision_k_repeated(&f, 32, Mode::Sampled, &mut rng).unwrap();
        match report.result {
            RunResult::CollisionFound { x, y } => {
                assert_eq!(f.value(x).unwrap(), f.value(y).unwrap())
            }
            other => panic!("expected collision, got {other:?}"),
        }
        assert_eq!(report.params.subset_size, Some(10));

        // k = 2 degenerates to plain distinctness on the full domain.
        let f = gen_k_repeated(16, 2, 3).unwrap();
        let report = collision_k_repeated(&f, 2, Mode::Sampled, &mut rng).unwrap();
        assert_eq!(report.params.subset_size, Some(16));
        assert!(report.result.is_witnessed());
    }

    #[test]
    fn k_repeated_typical_case_finds_collision() {
        let f = gen_k_repeated(64, 8, 11).unwrap();
        let mut rng = rng_from_seed(12);
        let report = collision_k_repeated(&f, 8, Mode::Sampled, &mut rng).unwrap();
        match report.result {
            RunResult::CollisionFound { x, y } => {
                assert_eq!(f.value(x).unwrap(), f.value(y).unwrap());
                assert_ne!(x, y);
            }
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn k_repeated_subset_containment_probability() {
        use crate::numerics::hypergeometric_pmf;
        // At N=64, k=8 the restriction covers the whole domain, so both
        // class members land in it with certainty.
        let p_full: f64 = (2..=8).map(|h| hypergeometric_pmf(64, 8, 64, h)).sum();
        assert!((p_full - 1.0).abs() < 1e-12);

        // A proper restriction (k > 10): the hypergeometric oracle gives the
        // two-members-in-subset probability, which stays >= 2/3, and sampled
        // runs succeed at a compatible rate.
        let subset = (10 * 64usize).div_ceil(16).min(64);
        assert_eq!(subset, 40);
        let p2: f64 = (2..=16)
            .map(|h| hypergeometric_pmf(64, 16, subset, h))
            .sum();
        assert!(p2 >= 2.0 / 3.0, "containment probability {p2}");

        let mut rng = rng_from_seed(13);
        let mut hits = 0u32;
        let trials = 200u32;
        for t in 0..trials {
            let f = gen_k_repeated(64, 16, 800 + t as u64).unwrap();
            let report = collision_k_repeated(&f, 16, Mode::Sampled, &mut rng).unwrap();
            if report.result.is_witnessed() {
                hits += 1;
            }
        }
        assert!(
            hits as f64 / trials as f64 >= 0.5,
            "hit rate {hits}/{trials}"
        );
    }

    #[test]
    fn analytic_cost_within_factor_four_of_coarse_bound() {
        // Planted 256x256 instance at ell = 16: expected comparisons within
        // a factor 4 of sqrt(NM/ell) * log2(ell) = 64 * 4 = 256.
        let (f, g) = gen_planted_claw(256, 256, 5).unwrap();
        let problem = ClawProblem::between(&f, &g);
        let mut rng = rng_from_seed(0);
        let report =
            generic_claw_finder(&problem, Some(16), Mode::Analytic, &mut rng, None).unwrap();
        let coarse = (256.0f64 * 256.0 / 16.0).sqrt() * 4.0;
        assert!(
            report.comparisons >= coarse / 4.0 && report.comparisons <= coarse * 4.0,
            "analytic comparisons {} vs coarse bound {coarse}",
            report.comparisons
        );
    }

    #[test]
    fn finder_solves_or_reduction_instances() {
        use crate::oracle::{or_to_claw, or_to_ed};
        let mut rng = rng_from_seed(19);

        let mut bits = vec![false; 9];
        bits[6] = true;
        let (f, g) = or_to_claw(&bits).unwrap();
        let problem = ClawProblem::between(&f, &g);
        let report = generic_claw_finder(&problem, None, Mode::Sampled, &mut rng, None).unwrap();
        assert_eq!(report.result, RunResult::ClawFound { x: 1, y: 7 });

        let f = or_to_ed(&bits).unwrap();
        let report = element_distinctness(&f, Mode::Sampled, &mut rng).unwrap();
        match report.result {
            RunResult::CollisionFound { x, y } => {
                assert_eq!(f.value(x).unwrap(), f.value(y).unwrap())
            }
            other => panic!("expected collision, got {other:?}"),
        }

        let zeros = vec![false; 9];
        let f = or_to_ed(&zeros).unwrap();
        let report = element_distinctness(&f, Mode::Sampled, &mut rng).unwrap();
        assert_eq!(report.result, RunResult::Distinct);
    }

    #[test]
    fn sampled_witnesses_always_verify() {
        let mut rng = rng_from_seed(13);
        for seed in 0..40 {
            let (f, g) = gen_planted_claw(24, 36, seed).unwrap();
            let problem = ClawProblem::between(&f, &g);
            let report =
                generic_claw_finder(&problem, None, Mode::Sampled, &mut rng, None).unwrap();
            match report.result {
                RunResult::ClawFound { x, y } => {
                    assert_eq!(f.value(x).unwrap(), g.value(y).unwrap())
                }
                other => panic!("expected claw, got {other:?}"),
            }
        }
    }
}
