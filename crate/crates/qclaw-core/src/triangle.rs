//! Triangle finding in the edge-slot query model.
//!
//! The two-stage finder searches for any edge (a,b), then for a node c
//! completing a triangle, and amplifies the pair of stages as one round.
//! Stage-2 applications cost 2 edge queries ((a,c) and (b,c); (a,b) is
//! already known); the round-level success probability is exactly the
//! fraction of edges weighted by their stage-2 completion probability.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amplify::{
    expected_applications, expected_applications_capped, qsearch_cutoff_analysis, qsearch_metered,
    DECISION_CUTOFF_MULTIPLIER, QSEARCH_GROWTH,
};
use crate::error::{Error, Result};
use crate::numerics::isqrt;
use crate::oracle::{edge_query, rng_from_seed, GraphInstance, QueryLedger, RunRng};
use crate::report::{Mode, ReportParams};

fn ceil_sqrt(k: usize) -> u64 {
    let root = isqrt(k);
    (if root * root == k { root } else { root + 1 }) as u64
}

/// Per-stage query counts and the outer round tally of one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageBreakdown {
    pub edge_search_queries: f64,
    pub node_search_queries: f64,
    pub outer_rounds: f64,
}

/// Outcome of a triangle run; a reported triple has passed all three edge
/// checks against the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleResult {
    pub algorithm: String,
    pub mode: Mode,
    pub nodes: Option<(usize, usize, usize)>,
    pub edge_queries: f64,
    pub stage_breakdown: StageBreakdown,
    pub params: ReportParams,
}

/// Common neighbor count of each edge (white-box).
fn completion_counts(g: &GraphInstance) -> Vec<((usize, usize), usize)> {
    let n = g.node_count();
    g.edges()
        .into_iter()
        .map(|(a, b)| {
            let t2 = (1..=n)
                .filter(|&c| {
                    c != a && c != b && g.has_edge(a, c).unwrap() && g.has_edge(b, c).unwrap()
                })
                .count();
            ((a, b), t2)
        })
        .collect()
}

fn first_triangle(g: &GraphInstance) -> Option<(usize, usize, usize)> {
    let n = g.node_count();
    for (a, b) in g.edges() {
        for c in 1..=n {
            if c != a && c != b && g.has_edge(a, c).unwrap() && g.has_edge(b, c).unwrap() {
                let mut t = [a, b, c];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
    }
    None
}

fn count_triangles(g: &GraphInstance) -> usize {
    completion_counts(g)
        .iter()
        .map(|&(_, t2)| t2)
        .sum::<usize>()
        / 3
}

/// The sparse-friendly two-stage finder: O(n + sqrt(n m)) edge queries.
pub fn find_triangle(
    g: &GraphInstance,
    mode: Mode,
    rng: &mut RunRng,
    cutoff: Option<u64>,
) -> Result<TriangleResult> {
    let n = g.node_count();
    if n < 3 {
        return Err(Error::InvalidArgument(
            "triangle search needs at least 3 nodes".into(),
        ));
    }
    let m = g.edge_count();
    let slots = g.slot_count();
    let stage2_cutoff = DECISION_CUTOFF_MULTIPLIER * ceil_sqrt(n);
    let params = ReportParams {
        cutoff_rounds: cutoff,
        inner_cutoff: Some(stage2_cutoff),
        ..ReportParams::default()
    };

    if m == 0 {
        return Ok(TriangleResult {
            algorithm: "triangle".into(),
            mode,
            nodes: None,
            edge_queries: 0.0,
            stage_breakdown: StageBreakdown {
                edge_search_queries: 0.0,
                node_search_queries: 0.0,
                outer_rounds: 0.0,
            },
            params,
        });
    }

    // Exact round success: stage 1 lands on a uniform edge; stage 2 then
    // finds a completion with the cutoff-schedule probability at that edge's
    // common-neighbor count.
    let per_edge = completion_counts(g);
    let mut s2_memo: HashMap<usize, (f64, f64)> = HashMap::new();
    let mut s2 = |t2: usize| -> Result<(f64, f64)> {
        if let Some(&v) = s2_memo.get(&t2) {
            return Ok(v);
        }
        let v = qsearch_cutoff_analysis(n, t2, stage2_cutoff)?;
        s2_memo.insert(t2, v);
        Ok(v)
    };
    let mut a_round = 0.0f64;
    let mut stage2_expected_apps = 0.0f64;
    let mut supporting = 0usize;
    for &(_, t2) in &per_edge {
        let (succ, apps) = s2(t2)?;
        a_round += succ / m as f64;
        stage2_expected_apps += apps / m as f64;
        if t2 > 0 {
            supporting += 1;
        }
    }
    let mut params = params;
    params.round_success = Some(a_round);
    params.stage1_fraction = Some(supporting as f64 / m as f64);
    let outer_cutoff = cutoff.unwrap_or(DECISION_CUTOFF_MULTIPLIER * ceil_sqrt(m));

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let mut stage1_queries = 0u64;
            let mut stage2_queries = 0u64;
            let theta = a_round.sqrt().asin();
            let mut mm = 1.0f64;
            let mut rounds = 0u64;
            let mut witness: Option<(usize, usize, usize)> = None;
            'outer: loop {
                let draws = (mm.ceil() as u64).max(1);
                let mut j = rng.gen_range(0..draws);
                j = j.min(outer_cutoff - rounds - 1);
                for _ in 0..=j {
                    // Stage 1: unknown-t search over the edge slots, one
                    // query per application.
                    let out = {
                        let ledger = &mut ledger;
                        let s1 = &mut stage1_queries;
                        qsearch_metered(
                            slots,
                            |s| {
                                let (u, v) = g.slot_pair(s);
                                g.has_edge(u, v).unwrap()
                            },
                            rng,
                            None,
                            || {
                                let (u, v) = g.slot_pair(0);
                                edge_query(g, u, v, ledger)?;
                                *s1 += 1;
                                Ok(())
                            },
                        )?
                    };
                    let (a, b) = g.slot_pair(out.found.expect("m >= 1 terminates"));
                    // Stage 2: search the nodes for a completion, two
                    // queries per application.
                    {
                        let ledger = &mut ledger;
                        let s2q = &mut stage2_queries;
                        qsearch_metered(
                            n,
                            |c0| {
                                let c = c0 + 1;
                                c != a
                                    && c != b
                                    && g.has_edge(a, c).unwrap()
                                    && g.has_edge(b, c).unwrap()
                            },
                            rng,
                            Some(stage2_cutoff),
                            || {
                                let probe_a = if a == 1 { 2 } else { 1 };
                                let probe_b = if b == 1 { 2 } else { 1 };
                                edge_query(g, a, probe_a, ledger)?;
                                edge_query(g, b, probe_b, ledger)?;
                                *s2q += 2;
                                Ok(())
                            },
                        )?
                    };
                }
                rounds += j + 1;
                if a_round > 0.0 {
                    let p = ((2 * j + 1) as f64 * theta).sin().powi(2);
                    if rng.gen_bool(p.clamp(0.0, 1.0)) {
                        // Measured round transcript: an edge weighted by its
                        // completion probability, then a uniform completing node.
                        let mut pick = rng.gen_range(0.0..a_round);
                        let mut chosen = per_edge[0].0;
                        for &((a, b), t2) in &per_edge {
                            let (succ, _) = s2(t2)?;
                            pick -= succ / m as f64;
                            if pick <= 0.0 {
                                chosen = (a, b);
                                break;
                            }
                        }
                        let (a, b) = chosen;
                        let completions: Vec<usize> = (1..=n)
                            .filter(|&c| {
                                c != a
                                    && c != b
                                    && g.has_edge(a, c).unwrap()
                                    && g.has_edge(b, c).unwrap()
                            })
                            .collect();
                        let c = completions[rng.gen_range(0..completions.len())];
                        // Verification: three real edge checks.
                        let ok = edge_query(g, a, b, &mut ledger)?
                            && edge_query(g, a, c, &mut ledger)?
                            && edge_query(g, b, c, &mut ledger)?;
                        debug_assert!(ok);
                        if ok {
                            let mut t = [a, b, c];
                            t.sort_unstable();
                            witness = Some((t[0], t[1], t[2]));
                            break 'outer;
                        }
                    }
                }
                if rounds >= outer_cutoff {
                    break 'outer;
                }
                mm *= QSEARCH_GROWTH;
            }
            Ok(TriangleResult {
                algorithm: "triangle".into(),
                mode,
                nodes: witness,
                edge_queries: ledger.edge_queries() as f64,
                stage_breakdown: StageBreakdown {
                    edge_search_queries: stage1_queries as f64,
                    node_search_queries: stage2_queries as f64,
                    outer_rounds: rounds as f64,
                },
                params,
            })
        }
        Mode::Analytic => {
            let stage1_apps = expected_applications_capped(slots, m)?;
            let round_cost = stage1_apps + 2.0 * stage2_expected_apps;
            let (outer, nodes) = if a_round > 0.0 {
                (expected_applications(a_round)?, first_triangle(g))
            } else {
                (outer_cutoff as f64, None)
            };
            let verification = if nodes.is_some() { 3.0 } else { 0.0 };
            Ok(TriangleResult {
                algorithm: "triangle".into(),
                mode,
                nodes,
                edge_queries: outer * round_cost + verification,
                stage_breakdown: StageBreakdown {
                    edge_search_queries: outer * stage1_apps,
                    node_search_queries: outer * 2.0 * stage2_expected_apps,
                    outer_rounds: outer,
                },
                params,
            })
        }
    }
}

/// Triple index <-> (a, b, c) with 1 <= a < b < c <= n.
fn unrank_triple(n: usize, mut idx: usize) -> (usize, usize, usize) {
    for a in 1..=n {
        let block = (n - a) * (n - a - 1) / 2;
        if idx < block {
            for b in (a + 1)..=n {
                let row = n - b;
                if idx < row {
                    return (a, b, b + 1 + idx);
                }
                idx -= row;
            }
        }
        idx -= block;
    }
    unreachable!("triple index out of range")
}

/// Unstructured search over all C(n,3) node triples, 3 queries per
/// application: the dense-regime baseline at O(n^{3/2}).
pub fn grover_all_triples(
    g: &GraphInstance,
    mode: Mode,
    rng: &mut RunRng,
    cutoff: Option<u64>,
) -> Result<TriangleResult> {
    let n = g.node_count();
    if n < 3 {
        return Err(Error::InvalidArgument(
            "triangle search needs at least 3 nodes".into(),
        ));
    }
    let k = n * (n - 1) * (n - 2) / 6;
    let t = count_triangles(g);
    let cutoff_apps = cutoff.unwrap_or(DECISION_CUTOFF_MULTIPLIER * ceil_sqrt(k));
    let params = ReportParams {
        cutoff_rounds: Some(cutoff_apps),
        ..ReportParams::default()
    };
    let is_triangle = |idx: usize| {
        let (a, b, c) = unrank_triple(n, idx);
        g.has_edge(a, b).unwrap() && g.has_edge(a, c).unwrap() && g.has_edge(b, c).unwrap()
    };

    match mode {
        Mode::Sampled => {
            let mut ledger = QueryLedger::new();
            let out = {
                let ledger = &mut ledger;
                qsearch_metered(k, is_triangle, rng, Some(cutoff_apps), || {
                    let (u, v) = g.slot_pair(0);
                    edge_query(g, u, v, ledger)?;
                    edge_query(g, u, v, ledger)?;
                    edge_query(g, u, v, ledger)?;
                    Ok(())
                })?
            };
            let nodes = match out.found {
                Some(idx) => {
                    let (a, b, c) = unrank_triple(n, idx);
                    let ok = edge_query(g, a, b, &mut ledger)?
                        && edge_query(g, a, c, &mut ledger)?
                        && edge_query(g, b, c, &mut ledger)?;
                    debug_assert!(ok);
                    Some((a, b, c))
                }
                None => None,
            };
            Ok(TriangleResult {
                algorithm: "grover_triples".into(),
                mode,
                nodes,
                edge_queries: ledger.edge_queries() as f64,
                stage_breakdown: StageBreakdown {
                    edge_search_queries: (out.oracle_applications * 3) as f64,
                    node_search_queries: 0.0,
                    outer_rounds: out.oracle_applications as f64,
                },
                params,
            })
        }
        Mode::Analytic => {
            let (apps, nodes) = if t > 0 {
                (expected_applications_capped(k, t)?, first_triangle(g))
            } else {
                (cutoff_apps as f64, None)
            };
            let verification = if nodes.is_some() { 3.0 } else { 0.0 };
            Ok(TriangleResult {
                algorithm: "grover_triples".into(),
                mode,
                nodes,
                edge_queries: apps * 3.0 + verification,
                stage_breakdown: StageBreakdown {
                    edge_search_queries: apps * 3.0,
                    node_search_queries: 0.0,
                    outer_rounds: apps,
                },
                params,
            })
        }
    }
}

/// Classical baseline: query every slot exactly once, then scan stored
/// answers; exact, n(n-1)/2 queries always.
pub fn classical_triangle(g: &GraphInstance) -> Result<TriangleResult> {
    let n = g.node_count();
    let mut ledger = QueryLedger::new();
    let mut known = vec![false; g.slot_count()];
    for s in 0..g.slot_count() {
        let (u, v) = g.slot_pair(s);
        known[s] = edge_query(g, u, v, &mut ledger)?;
    }
    let mut nodes = None;
    'scan: for (s, &present) in known.iter().enumerate() {
        if !present {
            continue;
        }
        let (a, b) = g.slot_pair(s);
        for c in (b + 1)..=n {
            if known[crate::oracle::slot_index(n, a, c)]
                && known[crate::oracle::slot_index(n, b, c)]
            {
                nodes = Some((a, b, c));
                break 'scan;
            }
        }
    }
    Ok(TriangleResult {
        algorithm: "classical_triangle".into(),
        mode: Mode::Sampled,
        nodes,
        edge_queries: ledger.edge_queries() as f64,
        stage_breakdown: StageBreakdown {
            edge_search_queries: ledger.edge_queries() as f64,
            node_search_queries: 0.0,
            outer_rounds: 1.0,
        },
        params: ReportParams::default(),
    })
}

/// A graph with exactly one triangle and `target_m` edges: the planted
/// triangle plus a bipartite-leaning remainder that is kept triangle-free by
/// never giving the intra-part edge a second common neighbor.
pub fn gen_planted_triangle(n: usize, target_m: usize, seed: u64) -> Result<GraphInstance> {
    if n < 3 {
        return Err(Error::InvalidArgument("need at least 3 nodes".into()));
    }
    if target_m < n - 1 || target_m > n * (n - 1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "edge budget {target_m} outside [n-1, C(n,2)] for n={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    use rand::seq::SliceRandom;
    let mut nodes: Vec<usize> = (1..=n).collect();
    nodes.shuffle(&mut rng);
    let half = (n / 2).max(2);
    let part1: Vec<usize> = nodes[..half].to_vec();
    let part2: Vec<usize> = nodes[half..].to_vec();
    let a = part1[0];
    let b = part1[1];
    let c = part2[0];

    let mut edges = vec![(a, b), (a, c), (b, c)];
    if target_m > 3 {
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for &u in &part1 {
            for &v in &part2 {
                if (u == a && v == c) || (u == b && v == c) {
                    continue;
                }
                candidates.push((u, v));
            }
        }
        candidates.shuffle(&mut rng);
        // v gaining both a and b as neighbors would complete a second
        // triangle through the intra-part edge (a, b).
        let mut a_adj: Vec<bool> = vec![false; n + 1];
        let mut b_adj: Vec<bool> = vec![false; n + 1];
        a_adj[c] = true;
        b_adj[c] = true;
        for (u, v) in candidates {
            if edges.len() == target_m {
                break;
            }
            if u == a && b_adj[v] {
                continue;
            }
            if u == b && a_adj[v] {
                continue;
            }
            if u == a {
                a_adj[v] = true;
            }
            if u == b {
                b_adj[v] = true;
            }
            edges.push((u, v));
        }
    }
    if edges.len() < target_m.saturating_sub(2).max(3) {
        return Err(Error::InvalidArgument(format!(
            "edge budget {target_m} infeasible for a uniquely-planted triangle on {n} nodes"
        )));
    }
    GraphInstance::new(n, &edges)
}
