//! Problem instances and the metered black-box interfaces.
//!
//! Every finder in this crate touches its input only through [`compare`],
//! [`evaluate`], or [`edge_query`]; each access increments exactly one
//! counter of the run's [`QueryLedger`] by exactly one. Domains are 1-based.

pub(crate) mod gen;
mod io;
mod reductions;

pub use gen::{
    gen_k_repeated, gen_ordered_pair, gen_planted_claw, gen_two_to_one, rng_from_seed, RunRng,
    RNG_ALGORITHM,
};
pub use io::{load_instance, parse_instance_text, save_function, save_graph, Instance};
pub use reductions::{or_to_claw, or_to_ed, or_to_ordered_claw, or_to_triangle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A function `[N] -> Z` stored as a value table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionInstance {
    size: usize,
    values: Vec<i64>,
    ordered: bool,
}

impl FunctionInstance {
    /// Builds an instance, validating the table length and, when flagged
    /// ordered, monotonicity.
    pub fn new(values: Vec<i64>, ordered: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInstance("empty value table".into()));
        }
        if ordered {
            for w in values.windows(2) {
                if w[0] > w[1] {
                    return Err(Error::InvalidInstance(
                        "table flagged ordered but values decrease".into(),
                    ));
                }
            }
        }
        Ok(Self {
            size: values.len(),
            values,
            ordered,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// White-box value access (1-based). Simulation bookkeeping only; metered
    /// algorithms must go through the oracle functions.
    pub fn value(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.size {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.size,
            });
        }
        Ok(self.values[i - 1])
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// An undirected graph over `n` nodes, stored as the C(n,2) edge slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    n: usize,
    slots: Vec<bool>,
    m: usize,
}

impl GraphInstance {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(
                "graph needs at least 2 nodes".into(),
            ));
        }
        let mut slots = vec![false; n * (n - 1) / 2];
        let mut m = 0;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at node {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) out of range"
                )));
            }
            let idx = slot_index(n, u, v);
            if slots[idx] {
                return Err(Error::InvalidInstance(format!("duplicate edge ({u},{v})")));
            }
            slots[idx] = true;
            m += 1;
        }
        Ok(Self { n, slots, m })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    /// White-box adjacency test (unmetered).
    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        Ok(self.slots[slot_index(self.n, u, v)])
    }

    /// The unordered pair occupying a given slot index.
    pub fn slot_pair(&self, slot: usize) -> (usize, usize) {
        debug_assert!(slot < self.slots.len());
        // Walk rows; n is desk-scale so the loop is fine.
        let mut rest = slot;
        for u in 1..self.n {
            let row = self.n - u;
            if rest < row {
                return (u, u + 1 + rest);
            }
            rest -= row;
        }
        unreachable!("slot index out of range")
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.slots.len())
            .filter(|&s| self.slots[s])
            .map(|s| self.slot_pair(s))
            .collect()
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == 0 || u > self.n {
            return Err(Error::IndexOutOfRange {
                index: u,
                size: self.n,
            });
        }
        if v == 0 || v > self.n {
            return Err(Error::IndexOutOfRange {
                index: v,
                size: self.n,
            });
        }
        if u == v {
            return Err(Error::InvalidArgument(format!(
                "edge query requires u != v, got {u}"
            )));
        }
        Ok(())
    }
}

/// Slot index of unordered pair (u, v) with 1 <= u != v <= n.
pub fn slot_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a - 1) * n - a * (a - 1) / 2 + (b - a - 1)
}

/// Metered counts of the three black-box access kinds.
///
/// Counters only ever increase, and only the oracle functions in this module
/// (plus the sentinel-aware window comparison used by the recursive ordered
/// finder) touch them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    comparisons: u64,
    evaluations: u64,
    edge_queries: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn edge_queries(&self) -> u64 {
        self.edge_queries
    }

    pub fn total(&self) -> u64 {
        self.comparisons + self.evaluations + self.edge_queries
    }

    pub(crate) fn count_comparison(&mut self) {
        self.comparisons += 1;
    }

    pub(crate) fn count_evaluation(&mut self) {
        self.evaluations += 1;
    }

    pub(crate) fn count_edge_query(&mut self) {
        self.edge_queries += 1;
    }
}

/// Which table a compared index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    F,
    G,
}

/// A pair of tables exposed through the comparison oracle.
///
/// `within` views one table as both sides, which is how collision problems
/// are phrased as claw problems.
#[derive(Debug, Clone, Copy)]
pub struct ClawProblem<'a> {
    f: &'a FunctionInstance,
    g: &'a FunctionInstance,
    exclude_equal_indices: bool,
}

impl<'a> ClawProblem<'a> {
    /// Claw search between two distinct tables.
    pub fn between(f: &'a FunctionInstance, g: &'a FunctionInstance) -> Self {
        Self {
            f,
            g,
            exclude_equal_indices: false,
        }
    }

    /// Collision search within one table: pairs (x, x) never count.
    pub fn within(f: &'a FunctionInstance) -> Self {
        Self {
            f,
            g: f,
            exclude_equal_indices: true,
        }
    }

    pub fn f(&self) -> &'a FunctionInstance {
        self.f
    }

    pub fn g(&self) -> &'a FunctionInstance {
        self.g
    }

    pub fn is_collision_problem(&self) -> bool {
        self.exclude_equal_indices
    }

    fn side(&self, side: Side) -> &'a FunctionInstance {
        match side {
            Side::F => self.f,
            Side::G => self.g,
        }
    }

    /// Metered comparison: the truth value of value(a, i) <= value(b, j).
    ///
    /// Only the boolean leaves the oracle.
    pub fn compare(
        &self,
        side_a: Side,
        i: usize,
        side_b: Side,
        j: usize,
        ledger: &mut QueryLedger,
    ) -> Result<bool> {
        let va = self.side(side_a).value(i)?;
        let vb = self.side(side_b).value(j)?;
        ledger.count_comparison();
        Ok(va <= vb)
    }

    /// True when (x, y) is a claw of this problem (white-box check).
    pub fn is_claw(&self, x: usize, y: usize) -> Result<bool> {
        if self.exclude_equal_indices && x == y {
            return Ok(false);
        }
        Ok(self.f.value(x)? == self.g.value(y)?)
    }

    /// Exhaustive claw scan via a value-indexed join (white-box oracle for
    /// witness extraction and tests).
    pub fn claw_set(&self) -> Vec<ClawPair> {
        use std::collections::HashMap;
        let mut by_value: HashMap<i64, Vec<usize>> = HashMap::new();
        for (i, &v) in self.f.values().iter().enumerate() {
            by_value.entry(v).or_default().push(i + 1);
        }
        let mut claws = Vec::new();
        for (j, &v) in self.g.values().iter().enumerate() {
            if let Some(xs) = by_value.get(&v) {
                for &x in xs {
                    let y = j + 1;
                    if self.exclude_equal_indices && x == y {
                        continue;
                    }
                    claws.push(ClawPair { x, y });
                }
            }
        }
        claws
    }
}

/// Standalone metered comparison between two tables.
pub fn compare(
    fa: &FunctionInstance,
    i: usize,
    fb: &FunctionInstance,
    j: usize,
    ledger: &mut QueryLedger,
) -> Result<bool> {
    let va = fa.value(i)?;
    let vb = fb.value(j)?;
    ledger.count_comparison();
    Ok(va <= vb)
}

/// Metered value read (the evaluation model used by the hardness families).
pub fn evaluate(f: &FunctionInstance, i: usize, ledger: &mut QueryLedger) -> Result<i64> {
    let v = f.value(i)?;
    ledger.count_evaluation();
    Ok(v)
}

/// Metered edge-slot probe; symmetric in (u, v).
pub fn edge_query(g: &GraphInstance, u: usize, v: usize, ledger: &mut QueryLedger) -> Result<bool> {
    let present = g.has_edge(u, v)?;
    ledger.count_edge_query();
    Ok(present)
}

/// A claw witness: f(x) = g(y), with x != y in the collision specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClawPair {
    pub x: usize,
    pub y: usize,
}
