//! White-box witness-structure classification and the exact per-round
//! success probability of the subset-sampling round.
//!
//! A round samples a subdomain A of size `ell` and a codomain-side subset B
//! of size `ell^2`, sorts A, and runs one randomized-length rotation search
//! over B whose marked elements are those B-entries matched by some A-entry.
//! The probability that the round as a whole succeeds is an expectation over
//! the hypergeometric distribution of the marked count; it is computable in
//! closed form for every witness structure our generators produce. The
//! formulas here are cross-checked against exhaustive subset enumeration in
//! the test suites.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numerics::hypergeometric_pmf;
use crate::oracle::ClawProblem;

/// Witness structure of an instance, recovered white-box.
///
/// Simulation uses this only to place rotations and price expectations,
/// never to steer the algorithms' control flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessStructure {
    /// No claw/collision exists.
    NoWitness,
    /// Exactly one codomain value is shared between the two tables.
    SharedValue {
        f_preimages: Vec<usize>,
        g_preimages: Vec<usize>,
    },
    /// Collision search with exactly one repeated-value class.
    SelfClass { preimages: Vec<usize> },
    /// Collision search where every value occurs exactly twice;
    /// `partner[i-1]` is the other preimage of value(i).
    PerfectMatching { partner: Vec<usize> },
}

/// Classifies the instance. Structures outside the supported set are
/// rejected: their exact round probability has no closed form here, and both
/// cost modes rely on it.
pub fn classify(problem: &ClawProblem) -> Result<WitnessStructure> {
    if problem.is_collision_problem() {
        let f = problem.f();
        let mut classes: HashMap<i64, Vec<usize>> = HashMap::new();
        for i in 1..=f.size() {
            classes.entry(f.value(i)?).or_default().push(i);
        }
        let mut repeated: Vec<&Vec<usize>> = classes.values().filter(|c| c.len() >= 2).collect();
        if repeated.is_empty() {
            return Ok(WitnessStructure::NoWitness);
        }
        if repeated.len() == 1 {
            return Ok(WitnessStructure::SelfClass {
                preimages: repeated.pop().unwrap().clone(),
            });
        }
        if classes.values().all(|c| c.len() == 2) {
            let mut partner = vec![0usize; f.size()];
            for pair in classes.values() {
                partner[pair[0] - 1] = pair[1];
                partner[pair[1] - 1] = pair[0];
            }
            return Ok(WitnessStructure::PerfectMatching { partner });
        }
        Err(Error::UnsupportedStructure(format!(
            "{} repeated-value classes; supported: none, one, or all-pairs",
            repeated.len()
        )))
    } else {
        let f = problem.f();
        let g = problem.g();
        let mut f_classes: HashMap<i64, Vec<usize>> = HashMap::new();
        for i in 1..=f.size() {
            f_classes.entry(f.value(i)?).or_default().push(i);
        }
        let mut shared: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut g_classes: HashMap<i64, Vec<usize>> = HashMap::new();
        for j in 1..=g.size() {
            g_classes.entry(g.value(j)?).or_default().push(j);
        }
        for (value, g_pre) in &g_classes {
            if let Some(f_pre) = f_classes.get(value) {
                shared.push((f_pre.clone(), g_pre.clone()));
            }
        }
        match shared.len() {
            0 => Ok(WitnessStructure::NoWitness),
            1 => {
                let (f_preimages, g_preimages) = shared.pop().unwrap();
                Ok(WitnessStructure::SharedValue {
                    f_preimages,
                    g_preimages,
                })
            }
            k => Err(Error::UnsupportedStructure(format!(
                "{k} shared values between the tables; supported: zero or one"
            ))),
        }
    }
}

impl WitnessStructure {
    pub fn has_witness(&self) -> bool {
        !matches!(self, WitnessStructure::NoWitness)
    }
}

/// True when B-entry `b` is matched by some sampled A-entry: the white-box
/// marking rule of one round (self-matches never count in collision mode).
pub fn marked_in_round(problem: &ClawProblem, a_ids: &[usize], b: usize) -> Result<bool> {
    for &a in a_ids {
        if problem.is_claw(a, b)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact distribution of the round's marked count over the random subset
/// pair (A of size `ell`, B of size `b_size`); entries are (count, prob) and
/// include the zero entry.
pub fn marked_count_distribution(
    structure: &WitnessStructure,
    n_f: usize,
    n_g: usize,
    ell: usize,
    b_size: usize,
) -> Vec<(usize, f64)> {
    match structure {
        WitnessStructure::NoWitness => vec![(0, 1.0)],
        WitnessStructure::SharedValue {
            f_preimages,
            g_preimages,
        } => {
            let p = f_preimages.len();
            let q = g_preimages.len();
            // A hits the f-side preimages at all?
            let miss_a = hypergeometric_pmf(n_f, p, ell, 0);
            let hit_a = 1.0 - miss_a;
            let mut dist = Vec::new();
            let mut rest = 1.0;
            for tau in 1..=q.min(b_size) {
                let pr = hit_a * hypergeometric_pmf(n_g, q, b_size, tau);
                if pr > 0.0 {
                    dist.push((tau, pr));
                    rest -= pr;
                }
            }
            dist.push((0, rest.max(0.0)));
            dist
        }
        WitnessStructure::SelfClass { preimages } => {
            let k = preimages.len();
            let n = n_f;
            let mut by_tau: HashMap<usize, f64> = HashMap::new();
            for u in 0..=k.min(ell) {
                let pu = hypergeometric_pmf(n, k, ell, u);
                if pu == 0.0 {
                    continue;
                }
                // With u sampled class members in A, the B-markable set is
                // the whole class (u >= 2) or the class minus A's single
                // member (u == 1).
                let markable = match u {
                    0 => 0,
                    1 => k - 1,
                    _ => k,
                };
                for tau in 0..=markable.min(b_size) {
                    let pt = hypergeometric_pmf(n, markable, b_size, tau);
                    if pt > 0.0 {
                        *by_tau.entry(tau).or_insert(0.0) += pu * pt;
                    }
                }
            }
            let mut dist: Vec<(usize, f64)> = by_tau.into_iter().collect();
            dist.sort_by_key(|&(tau, _)| tau);
            dist
        }
        WitnessStructure::PerfectMatching { .. } => {
            // Partners of A form an ell-element set independent of B.
            let n = n_f;
            (0..=ell.min(b_size))
                .map(|tau| (tau, hypergeometric_pmf(n, ell, b_size, tau)))
                .filter(|&(_, p)| p > 0.0)
                .collect()
        }
    }
}

/// Exact probability that one generic round succeeds: marked-count mixture
/// of the single-shot rotation search over B.
pub fn generic_round_success(
    structure: &WitnessStructure,
    n_f: usize,
    n_g: usize,
    ell: usize,
    inner_draw_bound: u64,
) -> Result<f64> {
    let b_size = ell * ell;
    let dist = marked_count_distribution(structure, n_f, n_g, ell, b_size);
    let mut a = 0.0;
    for (tau, pr) in dist {
        if tau == 0 || pr == 0.0 {
            continue;
        }
        a += pr * crate::amplify::single_shot_success(b_size, tau, inner_draw_bound)?;
    }
    Ok(a)
}
