//! Rotation-level simulation of unstructured quantum search and of
//! amplitude amplification of a boolean-success subroutine.
//!
//! Search with `t` marked items out of `K` evolves on the 2-dimensional
//! marked/unmarked subspace: after `j` oracle iterations from the uniform
//! start the success probability is sin^2((2j+1) * asin(sqrt(t/K))). That
//! identity is cross-checked against an explicit state-vector simulator.
//!
//! Cost accounting convention (pinned for reproducibility): one iteration
//! costs one oracle application, the diffusion step is free, and every
//! measurement is followed by exactly one verification application.
//!
//! The unknown-t schedule is: m <- 1; repeat { draw j uniform in [0, ceil(m));
//! run j iterations; measure and verify; m <- min(growth * m, sqrt(K)) } with
//! growth 8/7. Amplification of a subroutine (no item space) uses the same
//! schedule without the sqrt(K) cap.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Schedule growth factor for the unknown-t search loop.
pub const QSEARCH_GROWTH: f64 = 8.0 / 7.0;

/// Decision contexts stop after this multiple of ceil(sqrt(K)) applications,
/// giving false-"absent" probability at most 1/3.
pub const DECISION_CUTOFF_MULTIPLIER: u64 = 3;

/// Largest state vector the explicit simulator will allocate.
pub const STATEVECTOR_LIMIT: usize = 1 << 12;

/// A configured rotation-level search: `K` items, `t` marked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationSearch {
    space_size: usize,
    marked_count: usize,
    theta: f64,
}

impl RotationSearch {
    pub fn new(space_size: usize, marked_count: usize) -> Result<Self> {
        if space_size == 0 {
            return Err(Error::InvalidArgument(
                "search space must be non-empty".into(),
            ));
        }
        if marked_count > space_size {
            return Err(Error::InvalidArgument(format!(
                "marked count {marked_count} exceeds space size {space_size}"
            )));
        }
        let theta = (marked_count as f64 / space_size as f64).sqrt().asin();
        Ok(Self {
            space_size,
            marked_count,
            theta,
        })
    }

    pub fn space_size(&self) -> usize {
        self.space_size
    }

    pub fn marked_count(&self) -> usize {
        self.marked_count
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Success probability after `j` iterations.
    pub fn success_probability(&self, j: u64) -> f64 {
        if self.marked_count == 0 {
            return 0.0;
        }
        let angle = (2 * j + 1) as f64 * self.theta;
        angle.sin().powi(2)
    }
}

/// Outcome of one search or amplification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// A marked item, when one was found and verified.
    pub found: Option<usize>,
    /// Total oracle iterations across all schedule rounds.
    pub iterations_used: u64,
    /// Iterations plus one verification per measurement.
    pub oracle_applications: u64,
}

impl SearchOutcome {
    pub fn succeeded(&self) -> bool {
        self.found.is_some()
    }
}

/// sin^2((2j+1) * asin(sqrt(t/K))), the exact marked mass after j iterations.
pub fn grover_success_prob(k: usize, t: usize, j: u64) -> Result<f64> {
    let rs = RotationSearch::new(k, t)?;
    Ok(rs.success_probability(j))
}

/// Explicit K-entry amplitude simulation of j iterations
/// (sign-flip marked, then inversion about the mean), from uniform start.
pub fn statevector_grover(k: usize, t: usize, j: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "search space must be non-empty".into(),
        ));
    }
    if t > k {
        return Err(Error::InvalidArgument(format!(
            "marked count {t} exceeds {k}"
        )));
    }
    if k > STATEVECTOR_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "state vector of size {k} exceeds limit {STATEVECTOR_LIMIT}"
        )));
    }
    let mut amps = vec![1.0 / (k as f64).sqrt(); k];
    for _ in 0..j {
        for a in amps.iter_mut().take(t) {
            *a = -*a;
        }
        let mean = amps.iter().sum::<f64>() / k as f64;
        for a in amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    Ok(amps.iter().take(t).map(|a| a * a).sum())
}

/// Runs j iterations then measures: with the rotation-exact probability the
/// result is a uniformly random marked item (items 0..t are the marked ones);
/// otherwise the measured unmarked item fails verification and `found` stays
/// empty. Applications: j iterations + 1 verification.
pub fn sample_grover<R: Rng>(k: usize, t: usize, j: u64, rng: &mut R) -> Result<SearchOutcome> {
    let rs = RotationSearch::new(k, t)?;
    let p = rs.success_probability(j);
    let found = if t > 0 && rng.gen_bool(p.clamp(0.0, 1.0)) {
        Some(rng.gen_range(0..t))
    } else {
        None
    };
    Ok(SearchOutcome {
        found,
        iterations_used: j,
        oracle_applications: j + 1,
    })
}

/// Unknown-t search over `k` items. `marked` is consulted white-box to place
/// the rotation (never charged); `on_application` is invoked once per oracle
/// application so callers can charge per-application costs to a ledger.
///
/// With no marked item the loop cannot terminate, so decision contexts must
/// pass `cutoff`; the run then uses exactly `cutoff` applications before
/// reporting absence.
pub fn qsearch_metered<R: Rng>(
    k: usize,
    marked: impl Fn(usize) -> bool,
    rng: &mut R,
    cutoff: Option<u64>,
    mut on_application: impl FnMut() -> Result<()>,
) -> Result<SearchOutcome> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "search space must be non-empty".into(),
        ));
    }
    let marked_items: Vec<usize> = (0..k).filter(|&i| marked(i)).collect();
    let t = marked_items.len();
    if t == 0 && cutoff.is_none() {
        return Err(Error::MissingCutoff(
            "search with possibly-empty marked set needs a cutoff".into(),
        ));
    }
    if let Some(0) = cutoff {
        return Ok(SearchOutcome {
            found: None,
            iterations_used: 0,
            oracle_applications: 0,
        });
    }
    let rs = RotationSearch::new(k, t)?;
    let cap = (k as f64).sqrt();
    let mut m = 1.0f64;
    let mut iterations = 0u64;
    let mut applications = 0u64;
    loop {
        let draw_bound = m.ceil() as u64;
        let mut j = rng.gen_range(0..draw_bound.max(1));
        if let Some(c) = cutoff {
            // Reserve one application for the measurement's verification.
            j = j.min(c - applications - 1);
        }
        for _ in 0..j {
            on_application()?;
        }
        on_application()?; // verification
        iterations += j;
        applications += j + 1;
        let p = rs.success_probability(j);
        if t > 0 && rng.gen_bool(p.clamp(0.0, 1.0)) {
            let found = marked_items[rng.gen_range(0..t)];
            return Ok(SearchOutcome {
                found: Some(found),
                iterations_used: iterations,
                oracle_applications: applications,
            });
        }
        if let Some(c) = cutoff {
            if applications >= c {
                return Ok(SearchOutcome {
                    found: None,
                    iterations_used: iterations,
                    oracle_applications: applications,
                });
            }
        }
        m = (m * QSEARCH_GROWTH).min(cap).max(1.0);
    }
}

/// [`qsearch_metered`] without a per-application charge hook.
pub fn qsearch<R: Rng>(
    k: usize,
    marked: impl Fn(usize) -> bool,
    rng: &mut R,
    cutoff: Option<u64>,
) -> Result<SearchOutcome> {
    qsearch_metered(k, marked, rng, cutoff, || Ok(()))
}

/// Worst-case amplification when the success probability `a` is known
/// exactly: runs floor(pi / (4 asin(sqrt(a)))) iterations, reaching success
/// probability at least max(a, 1 - a), and exactly 1 when
/// (2j+1) asin(sqrt(a)) hits pi/2.
pub fn amplify_known<R: Rng>(
    a: f64,
    rng: &mut R,
    mut on_application: impl FnMut() -> Result<()>,
) -> Result<SearchOutcome> {
    let j = amplify_known_iterations(a)?;
    for _ in 0..=j {
        on_application()?;
    }
    let theta = a.sqrt().asin();
    let p = ((2 * j + 1) as f64 * theta).sin().powi(2);
    let found = if rng.gen_bool(p.clamp(0.0, 1.0)) {
        Some(0)
    } else {
        None
    };
    Ok(SearchOutcome {
        found,
        iterations_used: j,
        oracle_applications: j + 1,
    })
}

/// Iteration count used by [`amplify_known`].
pub fn amplify_known_iterations(a: f64) -> Result<u64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "success probability {a} outside (0, 1]"
        )));
    }
    let theta = a.sqrt().asin();
    Ok((std::f64::consts::FRAC_PI_4 / theta).floor() as u64)
}

/// Success probability reached by [`amplify_known`].
pub fn amplify_known_success(a: f64) -> Result<f64> {
    let j = amplify_known_iterations(a)?;
    let theta = a.sqrt().asin();
    Ok(((2 * j + 1) as f64 * theta).sin().powi(2))
}

// ---------------------------------------------------------------------------
// Analytic engines
// ---------------------------------------------------------------------------

/// Mean of sin^2((2j+1) theta) over j uniform in [0, m_count).
///
/// Closed form: 1/2 - sin(4 m theta) / (4 m sin(2 theta)).
pub fn uniform_average_success(theta: f64, m_count: u64) -> f64 {
    debug_assert!(m_count >= 1);
    let m = m_count as f64;
    let s2 = (2.0 * theta).sin();
    if s2.abs() < 1e-9 {
        // theta near 0 or pi/2: sum directly.
        return (0..m_count)
            .map(|j| ((2 * j + 1) as f64 * theta).sin().powi(2))
            .sum::<f64>()
            / m;
    }
    0.5 - (4.0 * m * theta).sin() / (4.0 * m * s2)
}

/// Success probability of a single schedule round drawing j uniform in
/// [0, j_bound) against `t` marked of `k` items.
pub fn single_shot_success(k: usize, t: usize, j_bound: u64) -> Result<f64> {
    let rs = RotationSearch::new(k, t)?;
    if t == 0 {
        return Ok(0.0);
    }
    Ok(uniform_average_success(rs.theta(), j_bound.max(1)))
}

/// Exact expected oracle applications of the uncapped schedule run against a
/// subroutine of true success probability `a`, evaluated as a numerically
/// converged series over schedule rounds.
pub fn expected_applications(a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "success probability {a} outside (0, 1]"
        )));
    }
    let theta = a.sqrt().asin();
    expected_series(theta, None)
}

/// Exact expected applications of the sqrt(K)-capped schedule against `t`
/// marked of `k` items (no cutoff; requires t >= 1).
pub fn expected_applications_capped(k: usize, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "capped expectation needs a marked item".into(),
        ));
    }
    let rs = RotationSearch::new(k, t)?;
    expected_series(rs.theta(), Some((k as f64).sqrt()))
}

fn expected_series(theta: f64, cap: Option<f64>) -> Result<f64> {
    let mut m = 1.0f64;
    let mut survival = 1.0f64;
    let mut expected = 0.0f64;
    for _ in 0..200_000 {
        let draws = m.ceil() as u64;
        let round_cost = (draws as f64 - 1.0) / 2.0 + 1.0;
        expected += survival * round_cost;
        let s = uniform_average_success(theta, draws);
        survival *= 1.0 - s;
        if survival < 1e-16 {
            return Ok(expected);
        }
        m *= QSEARCH_GROWTH;
        if let Some(c) = cap {
            m = m.min(c);
        }
        m = m.max(1.0);
    }
    Err(Error::ResourceLimit(
        "expected-applications series did not converge".into(),
    ))
}

/// Exact success probability and expected applications of the capped
/// schedule truncated at exactly `cutoff` applications, computed by dynamic
/// programming over the consumed-application distribution. Mirrors
/// [`qsearch_metered`]'s truncation rule bit-for-bit in distribution.
pub fn qsearch_cutoff_analysis(k: usize, t: usize, cutoff: u64) -> Result<(f64, f64)> {
    let rs = RotationSearch::new(k, t)?;
    if cutoff == 0 {
        return Ok((0.0, 0.0));
    }
    if t == 0 {
        return Ok((0.0, cutoff as f64));
    }
    let cutoff_us = cutoff as usize;
    let cap = (k as f64).sqrt();
    // alive[c]: probability of reaching the next round start with c
    // applications consumed and no success yet.
    let mut alive = vec![0.0f64; cutoff_us + 1];
    alive[0] = 1.0;
    let mut success = 0.0f64;
    let mut expected = 0.0f64;
    let mut m = 1.0f64;
    loop {
        let mut next = vec![0.0f64; cutoff_us + 1];
        let draws = m.ceil() as u64;
        let weight = 1.0 / draws as f64;
        let mut any = false;
        for c in 0..cutoff_us {
            let mass = alive[c];
            if mass == 0.0 {
                continue;
            }
            any = true;
            let reserve = cutoff - c as u64 - 1;
            for j_draw in 0..draws {
                let j = j_draw.min(reserve);
                let cost = j + 1;
                let p = rs.success_probability(j);
                let w = mass * weight;
                expected += w * cost as f64;
                success += w * p;
                let c2 = c + cost as usize;
                if c2 < cutoff_us {
                    next[c2] += w * (1.0 - p);
                }
                // c2 == cutoff: budget exhausted, run reports absence.
            }
        }
        if !any {
            break;
        }
        alive = next;
        if alive.iter().sum::<f64>() < 1e-16 {
            break;
        }
        m = (m * QSEARCH_GROWTH).min(cap).max(1.0);
    }
    Ok((success, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rng_from_seed;

    const TOL: f64 = 1e-10;

    #[test]
    fn rotation_examples() {
        assert!((grover_success_prob(2, 1, 0).unwrap() - 0.5).abs() < TOL);
        assert!((grover_success_prob(4, 1, 1).unwrap() - 1.0).abs() < TOL);
        // theta = asin(1/2) = pi/6, three iterations of the half-angle land on pi/2.
        assert!((grover_success_prob(16, 4, 1).unwrap() - 1.0).abs() < TOL);
        assert_eq!(grover_success_prob(8, 0, 5).unwrap(), 0.0);
        assert!(grover_success_prob(4, 5, 0).is_err());
    }

    #[test]
    fn statevector_examples() {
        assert!((statevector_grover(4, 1, 1).unwrap() - 1.0).abs() < TOL);
        let expect = grover_success_prob(8, 1, 2).unwrap();
        assert!((statevector_grover(8, 1, 2).unwrap() - expect).abs() < TOL);
        assert!((statevector_grover(16, 16, 0).unwrap() - 1.0).abs() < TOL);
        assert!(statevector_grover(1 << 13, 1, 1).is_err());
    }

    #[test]
    fn statevector_matches_rotation_on_grid() {
        for k in [2usize, 3, 5, 8, 16, 31] {
            for t in 0..=k {
                let mut direct = Vec::new();
                for j in 0..8u64 {
                    direct.push(grover_success_prob(k, t, j).unwrap());
                }
                for (j, want) in direct.iter().enumerate() {
                    let got = statevector_grover(k, t, j as u64).unwrap();
                    assert!(
                        (got - want).abs() < TOL,
                        "K={k} t={t} j={j}: {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn sample_grover_certain_cases() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let out = sample_grover(4, 1, 1, &mut rng).unwrap();
            assert_eq!(out.found, Some(0));
            assert_eq!(out.oracle_applications, 2);
        }
        for _ in 0..50 {
            let out = sample_grover(8, 0, 3, &mut rng).unwrap();
            assert_eq!(out.found, None);
        }
    }

    #[test]
    fn sample_grover_binomial_check() {
        // Success frequency at (2,1,0) over 10^4 trials: p = 0.5.
        let mut rng = rng_from_seed(13);
        let trials = 10_000u32;
        let mut hits = 0u32;
        for _ in 0..trials {
            if sample_grover(2, 1, 0, &mut rng).unwrap().succeeded() {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.02, "freq {freq}");
    }

    #[test]
    fn qsearch_all_marked_is_immediate() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let out = qsearch(4, |_| true, &mut rng, None).unwrap();
            assert!(out.succeeded());
            assert!(out.oracle_applications <= 2);
        }
    }

    #[test]
    fn qsearch_exact_cutoff_on_empty() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let out = qsearch(8, |_| false, &mut rng, Some(50)).unwrap();
            assert_eq!(out.found, None);
            assert_eq!(out.oracle_applications, 50);
        }
        assert!(matches!(
            qsearch(8, |_| false, &mut rng, None),
            Err(Error::MissingCutoff(_))
        ));
    }

    #[test]
    fn qsearch_mean_applications_bound() {
        // Mean applications over 10^3 trials at K=4, t=1 stays under 6.
        let mut rng = rng_from_seed(11);
        let trials = 1000;
        let mut total = 0u64;
        for _ in 0..trials {
            let out = qsearch(4, |i| i == 2, &mut rng, None).unwrap();
            assert_eq!(out.found, Some(2));
            total += out.oracle_applications;
        }
        let mean = total as f64 / trials as f64;
        assert!(mean <= 6.0, "mean {mean}");
    }

    #[test]
    fn qsearch_never_reports_unmarked() {
        let mut rng = rng_from_seed(17);
        for trial in 0..300u64 {
            let k = 5 + (trial as usize % 40);
            let modulus = 1 + (trial as usize % 7);
            let out = qsearch(k, |i| i % 11 == modulus, &mut rng, Some(60)).unwrap();
            if let Some(item) = out.found {
                assert!(item % 11 == modulus);
            }
        }
    }

    #[test]
    fn amplify_known_examples() {
        assert_eq!(amplify_known_iterations(1.0).unwrap(), 0);
        assert!((amplify_known_success(1.0).unwrap() - 1.0).abs() < TOL);

        assert_eq!(amplify_known_iterations(0.25).unwrap(), 1);
        assert!((amplify_known_success(0.25).unwrap() - 1.0).abs() < TOL);

        // a = 1/100: 7 iterations; success sin^2(15 asin(0.1)) >= 0.98.
        assert_eq!(amplify_known_iterations(0.01).unwrap(), 7);
        let s = amplify_known_success(0.01).unwrap();
        let direct = (15.0 * 0.1f64.asin()).sin().powi(2);
        assert!((s - direct).abs() < TOL);
        assert!(s >= 0.98);

        assert!(amplify_known_iterations(0.0).is_err());
    }

    #[test]
    fn amplify_known_meets_max_bound_on_grid() {
        let mut a = 0.001;
        while a <= 1.0 {
            let s = amplify_known_success(a).unwrap();
            assert!(
                s + 1e-12 >= a.max(1.0 - a),
                "a={a}: success {s} below max(a, 1-a)"
            );
            a += 0.001;
        }
    }

    #[test]
    fn expected_applications_examples() {
        assert!(expected_applications(1.0).unwrap() <= 2.0);
        let e = expected_applications(1.0 / 64.0).unwrap();
        assert!((8.0..=9.0 * 8.0).contains(&e), "E(1/64) = {e}");
        assert!(expected_applications(0.0).is_err());
    }

    #[test]
    fn expected_applications_monotone_on_grid() {
        let mut prev = f64::INFINITY;
        for i in 1..=2000 {
            let a = i as f64 / 2000.0;
            let e = expected_applications(a).unwrap();
            assert!(
                e <= prev + 1e-9,
                "expectation increased at a={a}: {e} > {prev}"
            );
            prev = e;
        }
    }

    #[test]
    fn expected_applications_matches_monte_carlo() {
        // The uncapped schedule, sampled directly: same growth rule, success
        // drawn per round from the rotation formula.
        let a = 1.0f64 / 64.0;
        let theta = a.sqrt().asin();
        let mut rng = rng_from_seed(23);
        let trials = 100_000u64;
        let mut total = 0u64;
        use rand::Rng;
        for _ in 0..trials {
            let mut m = 1.0f64;
            loop {
                let draws = m.ceil() as u64;
                let j = rng.gen_range(0..draws);
                total += j + 1;
                let p = ((2 * j + 1) as f64 * theta).sin().powi(2);
                if rng.gen_bool(p) {
                    break;
                }
                m *= QSEARCH_GROWTH;
            }
        }
        let mc = total as f64 / trials as f64;
        let exact = expected_applications(a).unwrap();
        // 3 sigma of the Monte-Carlo mean; per-run sd is on the order of the mean.
        let slack = 3.0 * exact / (trials as f64).sqrt() * 2.0;
        assert!(
            (mc - exact).abs() < slack.max(0.5),
            "mc {mc} vs exact {exact}"
        );
    }

    #[test]
    fn cutoff_analysis_matches_sampled_runs() {
        let k = 16;
        let t = 2;
        let cutoff = 10;
        let (p_exact, e_exact) = qsearch_cutoff_analysis(k, t, cutoff).unwrap();
        let mut rng = rng_from_seed(31);
        let trials = 200_000u64;
        let mut hits = 0u64;
        let mut apps = 0u64;
        for _ in 0..trials {
            let out = qsearch(k, |i| i < t, &mut rng, Some(cutoff)).unwrap();
            if out.succeeded() {
                hits += 1;
            }
            apps += out.oracle_applications;
        }
        let p_mc = hits as f64 / trials as f64;
        let e_mc = apps as f64 / trials as f64;
        assert!(
            (p_mc - p_exact).abs() < 0.006,
            "success {p_mc} vs {p_exact}"
        );
        assert!((e_mc - e_exact).abs() < 0.05, "apps {e_mc} vs {e_exact}");
    }

    #[test]
    fn cutoff_analysis_empty_marked_set() {
        let (p, e) = qsearch_cutoff_analysis(8, 0, 50).unwrap();
        assert_eq!(p, 0.0);
        assert_eq!(e, 50.0);
    }

    #[test]
    fn single_shot_success_lower_bound() {
        // Inner-round success at t=1 stays at or above 1/2 for every
        // subset parameter >= 2 (drives the round-probability bound).
        for ell in 2..=512usize {
            let j_bound = ((std::f64::consts::FRAC_PI_4) * ell as f64).ceil() as u64;
            let s = single_shot_success(ell * ell, 1, j_bound).unwrap();
            assert!(s >= 0.5, "ell={ell}: single-shot success {s}");
        }
    }

    #[test]
    fn uniform_average_matches_direct_sum() {
        for &theta in &[0.01f64, 0.3, 0.81, 1.2, 1.51] {
            for m in [1u64, 2, 3, 7, 50] {
                let direct: f64 = (0..m)
                    .map(|j| ((2 * j + 1) as f64 * theta).sin().powi(2))
                    .sum::<f64>()
                    / m as f64;
                let closed = uniform_average_success(theta, m);
                assert!((direct - closed).abs() < 1e-9, "theta={theta} m={m}");
            }
        }
    }
}
