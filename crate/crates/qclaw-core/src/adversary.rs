//! Brute-force construction and verification of adversary-relation
//! parameters for three hardness families over functions `[N] -> [N]`:
//!
//! * parity-collision: output the parity of the colliding-pair count;
//! * no-collision: output the unique element outside every collision;
//! * no-range: output the unique value missing from the range.
//!
//! The relation R pairs members of A and B at Hamming distance exactly 1
//! with differing outputs. The quadruple (m, m', l, l') is computed exactly:
//! m/m' are the minimum relation degrees over A and B, l/l' the maximum
//! per-coordinate degrees, and the implied query bound is sqrt(m m' / l l').
//! Families are generated constructively (collision structure first, then
//! injective value assignment) so N = 8 stays cheap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::FunctionInstance;

/// The largest domain the exhaustive scans accept.
pub const MAX_FAMILY_N: usize = 8;

/// Number of colliding pairs (x < y with equal values) in a table.
pub fn count_collisions(f: &FunctionInstance) -> u64 {
    let mut counts = std::collections::HashMap::new();
    for &v in f.values() {
        *counts.entry(v).or_insert(0u64) += 1;
    }
    counts.values().map(|&c| c * (c - 1) / 2).sum()
}

fn pair_count_of(values: &[u8], n: usize) -> u64 {
    let mut cnt = [0u64; MAX_FAMILY_N + 1];
    for &v in values {
        cnt[v as usize] += 1;
    }
    (1..=n).map(|v| cnt[v] * cnt[v].saturating_sub(1) / 2).sum()
}

fn max_preimage(values: &[u8], n: usize) -> u64 {
    let mut cnt = [0u64; MAX_FAMILY_N + 1];
    for &v in values {
        cnt[v as usize] += 1;
    }
    (1..=n).map(|v| cnt[v]).max().unwrap_or(0)
}

/// The three hardness families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    ParityCollision,
    NoCollision,
    NoRange,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::ParityCollision => "parity-collision",
            FamilyKind::NoCollision => "no-collision",
            FamilyKind::NoRange => "no-range",
        }
    }
}

/// An input family: the member sets A and B (flat storage, stride n) and
/// the per-member output rule.
#[derive(Debug, Clone)]
pub struct ProblemFamily {
    pub kind: FamilyKind,
    pub n: usize,
    a_flat: Vec<u8>,
    b_flat: Vec<u8>,
}

/// Which member set a table is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SideSet {
    A,
    B,
}

impl ProblemFamily {
    pub fn a_len(&self) -> usize {
        self.a_flat.len() / self.n
    }

    pub fn b_len(&self) -> usize {
        self.b_flat.len() / self.n
    }

    pub fn a_member(&self, i: usize) -> &[u8] {
        &self.a_flat[i * self.n..(i + 1) * self.n]
    }

    pub fn b_member(&self, i: usize) -> &[u8] {
        &self.b_flat[i * self.n..(i + 1) * self.n]
    }

    fn target_pairs(&self, side: SideSet) -> u64 {
        match (self.kind, side) {
            (FamilyKind::ParityCollision, SideSet::A) => (self.n / 4) as u64,
            (FamilyKind::ParityCollision, SideSet::B) => (self.n / 4 + 1) as u64,
            (FamilyKind::NoCollision, _) => ((self.n - 1) / 2) as u64,
            (FamilyKind::NoRange, _) => 1,
        }
    }

    fn is_member(&self, side: SideSet, values: &[u8]) -> bool {
        let n = self.n;
        if pair_count_of(values, n) != self.target_pairs(side) {
            return false;
        }
        if max_preimage(values, n) > 2 {
            return false;
        }
        if self.kind == FamilyKind::NoRange {
            // The single colliding pair must be exactly (1, 2).
            if values[0] != values[1] {
                return false;
            }
        }
        true
    }

    /// The unique correct output of a member.
    pub fn answer(&self, values: &[u8]) -> Result<i64> {
        let n = self.n;
        match self.kind {
            FamilyKind::ParityCollision => Ok((pair_count_of(values, n) % 2) as i64),
            FamilyKind::NoCollision => {
                let mut cnt = [0u64; MAX_FAMILY_N + 1];
                for &v in values {
                    cnt[v as usize] += 1;
                }
                for (i, &v) in values.iter().enumerate() {
                    if cnt[v as usize] == 1 {
                        return Ok((i + 1) as i64);
                    }
                }
                Err(Error::InvalidArgument("no lone element".into()))
            }
            FamilyKind::NoRange => {
                let mut seen = [false; MAX_FAMILY_N + 1];
                for &v in values {
                    seen[v as usize] = true;
                }
                for v in 1..=n {
                    if !seen[v] {
                        return Ok(v as i64);
                    }
                }
                Err(Error::InvalidArgument("range is full".into()))
            }
        }
    }
}

/// Enumerates every member of the family at domain size `n` constructively.
pub fn enumerate_family(kind: FamilyKind, n: usize) -> Result<ProblemFamily> {
    if n > MAX_FAMILY_N {
        return Err(Error::ResourceLimit(format!(
            "family enumeration capped at N = {MAX_FAMILY_N}, got {n}"
        )));
    }
    match kind {
        FamilyKind::ParityCollision => {
            if !n.is_multiple_of(4) || n == 0 {
                return Err(Error::InvalidArgument(format!(
                    "parity family needs 4 | N, got {n}"
                )));
            }
        }
        FamilyKind::NoCollision => {
            if n.is_multiple_of(2) || n < 3 {
                return Err(Error::InvalidArgument(format!(
                    "no-collision family needs odd N >= 3, got {n}"
                )));
            }
        }
        FamilyKind::NoRange => {
            if n < 3 {
                return Err(Error::InvalidArgument(format!(
                    "no-range family needs N >= 3, got {n}"
                )));
            }
        }
    }
    let mut a_flat = Vec::new();
    let mut b_flat = Vec::new();
    match kind {
        FamilyKind::NoRange => {
            generate_no_range(n, &mut a_flat);
            b_flat = a_flat.clone();
        }
        FamilyKind::NoCollision => {
            generate_with_pairs(n, (n - 1) / 2, &mut a_flat);
            b_flat = a_flat.clone();
        }
        FamilyKind::ParityCollision => {
            generate_with_pairs(n, n / 4, &mut a_flat);
            generate_with_pairs(n, n / 4 + 1, &mut b_flat);
        }
    }
    Ok(ProblemFamily {
        kind,
        n,
        a_flat,
        b_flat,
    })
}

/// All tables whose only colliding pair is (1, 2): f(1P)=f(2)=v, the rest an
/// injective assignment avoiding v.
fn generate_no_range(n: usize, out: &mut Vec<u8>) {
    let mut buf = vec![0u8; n];
    for v in 1..=n as u8 {
        buf[0] = v;
        buf[1] = v;
        let mut used = vec![false; n + 1];
        used[v as usize] = true;
        assign_rest(n, 2, &mut buf, &mut used, out);
    }
}

fn assign_rest(n: usize, pos: usize, buf: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<u8>) {
    if pos == n {
        out.extend_from_slice(buf);
        return;
    }
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            buf[pos] = v as u8;
            assign_rest(n, pos + 1, buf, used, out);
            used[v] = false;
        }
    }
}

/// All tables with exactly `pairs` two-element value classes and the rest
/// singletons (preimage sizes <= 2 throughout): enumerate the pair partition
/// of the domain, then injective block values.
fn generate_with_pairs(n: usize, pairs: usize, out: &mut Vec<u8>) {
    let mut assigned = vec![false; n];
    let mut blocks: Vec<(usize, Option<usize>)> = Vec::new();
    build_blocks(n, pairs, n - 2 * pairs, 0, &mut assigned, &mut blocks, out);
}

fn build_blocks(
    n: usize,
    pairs_left: usize,
    singles_left: usize,
    from: usize,
    assigned: &mut Vec<bool>,
    blocks: &mut Vec<(usize, Option<usize>)>,
    out: &mut Vec<u8>,
) {
    let first = (from..n).find(|&p| !assigned[p]);
    let Some(p) = first else {
        let mut buf = vec![0u8; n];
        let mut used = vec![false; n + 1];
        assign_block_values(n, 0, blocks, &mut buf, &mut used, out);
        return;
    };
    assigned[p] = true;
    if singles_left > 0 {
        blocks.push((p, None));
        build_blocks(
            n,
            pairs_left,
            singles_left - 1,
            p + 1,
            assigned,
            blocks,
            out,
        );
        blocks.pop();
    }
    if pairs_left > 0 {
        for q in (p + 1)..n {
            if assigned[q] {
                continue;
            }
            assigned[q] = true;
            blocks.push((p, Some(q)));
            build_blocks(
                n,
                pairs_left - 1,
                singles_left,
                p + 1,
                assigned,
                blocks,
                out,
            );
            blocks.pop();
            assigned[q] = false;
        }
    }
    assigned[p] = false;
}

fn assign_block_values(
    n: usize,
    idx: usize,
    blocks: &Vec<(usize, Option<usize>)>,
    buf: &mut Vec<u8>,
    used: &mut Vec<bool>,
    out: &mut Vec<u8>,
) {
    if idx == blocks.len() {
        out.extend_from_slice(buf);
        return;
    }
    let (p, q) = blocks[idx];
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            buf[p] = v as u8;
            if let Some(q) = q {
                buf[q] = v as u8;
            }
            assign_block_values(n, idx + 1, blocks, buf, used, out);
            used[v] = false;
        }
    }
}

/// The exact relation quadruple and the implied query bound
/// sqrt(m m' / (l l')).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationParams {
    pub m: u64,
    pub m_prime: u64,
    pub l: u64,
    pub l_prime: u64,
    pub bound: f64,
}

/// One row of the adversary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub kind: FamilyKind,
    pub n: usize,
    pub a_size: usize,
    pub b_size: usize,
    pub r_size: u64,
    #[serde(flatten)]
    pub params: RelationParams,
}

pub fn ambainis_bound(m: u64, m_prime: u64, l: u64, l_prime: u64) -> Result<f64> {
    if m == 0 || m_prime == 0 || l == 0 || l_prime == 0 {
        return Err(Error::DegenerateRelation(
            "zero entry in the quadruple".into(),
        ));
    }
    Ok(((m as f64) * (m_prime as f64) / ((l as f64) * (l_prime as f64))).sqrt())
}

/// Scans one side of the relation: for each member of `members`, counts its
/// distance-1 neighbors in the opposite set with a different answer.
/// Returns (min degree, max per-coordinate degree, total related pairs).
fn scan_side(family: &ProblemFamily, members: &[u8], opposite: SideSet) -> Result<(u64, u64, u64)> {
    let n = family.n;
    let mut min_degree = u64::MAX;
    let mut max_coord = 0u64;
    let mut total = 0u64;
    let count = members.len() / n;
    let mut g = vec![0u8; n];
    for i in 0..count {
        let f = &members[i * n..(i + 1) * n];
        let phi_f = family.answer(f)?;
        let mut cnt = [0u64; MAX_FAMILY_N + 1];
        for &v in f {
            cnt[v as usize] += 1;
        }
        let pairs: u64 = (1..=n).map(|v| cnt[v] * cnt[v].saturating_sub(1) / 2).sum();
        let target = family.target_pairs(opposite);
        let mut degree = 0u64;
        for x in 0..n {
            let old = f[x] as usize;
            let mut coord = 0u64;
            for newv in 1..=n {
                if newv == old {
                    continue;
                }
                // O(1) count filter: mutated pair count and preimage cap.
                if cnt[newv] + 1 > 2 {
                    continue;
                }
                let mutated_pairs = pairs - (cnt[old] - 1) + cnt[newv];
                if mutated_pairs != target {
                    continue;
                }
                g.copy_from_slice(f);
                g[x] = newv as u8;
                if !family.is_member(opposite, &g) {
                    continue;
                }
                if family.answer(&g)? == phi_f {
                    continue;
                }
                degree += 1;
                coord += 1;
            }
            max_coord = max_coord.max(coord);
        }
        min_degree = min_degree.min(degree);
        total += degree;
    }
    if total == 0 {
        return Err(Error::DegenerateRelation("relation is empty".into()));
    }
    Ok((min_degree, max_coord, total))
}

/// Exhaustively builds the relation and computes the exact quadruple.
pub fn relation_params(family: &ProblemFamily) -> Result<FamilySummary> {
    let (m, l, total_a) = scan_side(family, &family.a_flat, SideSet::B)?;
    let (m_prime, l_prime, total_b) = scan_side(family, &family.b_flat, SideSet::A)?;
    debug_assert_eq!(total_a, total_b, "relation degree totals must agree");
    let bound = ambainis_bound(m, m_prime, l, l_prime)?;
    Ok(FamilySummary {
        kind: family.kind,
        n: family.n,
        a_size: family.a_len(),
        b_size: family.b_len(),
        r_size: total_a,
        params: RelationParams {
            m,
            m_prime,
            l,
            l_prime,
            bound,
        },
    })
}

/// Bound growth table over a list of sizes.
pub fn scaling_check(kind: FamilyKind, sizes: &[usize]) -> Result<Vec<FamilySummary>> {
    sizes
        .iter()
        .map(|&n| relation_params(&enumerate_family(kind, n)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(values: &[i64]) -> FunctionInstance {
        FunctionInstance::new(values.to_vec(), false).unwrap()
    }

    #[test]
    fn collision_count_examples() {
        assert_eq!(count_collisions(&fi(&[1, 1, 2])), 1);
        assert_eq!(count_collisions(&fi(&[1, 1, 1])), 3);
        assert_eq!(count_collisions(&fi(&[1, 2, 3])), 0);
    }

    /// Test oracle: filter all N^N functions by the membership predicate.
    fn filter_all(kind: FamilyKind, n: usize, side_b: bool) -> Vec<Vec<u8>> {
        let family = ProblemFamily {
            kind,
            n,
            a_flat: vec![],
            b_flat: vec![],
        };
        let side = if side_b { SideSet::B } else { SideSet::A };
        let mut out = Vec::new();
        let total = (n as u64).pow(n as u32);
        let mut f = vec![1u8; n];
        for _ in 0..total {
            if family.is_member(side, &f) {
                out.push(f.clone());
            }
            // mixed-radix increment
            for digit in f.iter_mut() {
                if *digit < n as u8 {
                    *digit += 1;
                    break;
                }
                *digit = 1;
            }
        }
        out
    }

    #[test]
    fn constructive_enumeration_matches_filtering() {
        for (kind, n) in [
            (FamilyKind::NoRange, 3usize),
            (FamilyKind::NoRange, 5),
            (FamilyKind::NoCollision, 5),
            (FamilyKind::ParityCollision, 4),
        ] {
            let family = enumerate_family(kind, n).unwrap();
            let mut generated: Vec<Vec<u8>> = (0..family.a_len())
                .map(|i| family.a_member(i).to_vec())
                .collect();
            let mut filtered = filter_all(kind, n, false);
            generated.sort();
            filtered.sort();
            assert_eq!(generated, filtered, "{kind:?} N={n} A-side");

            let mut generated_b: Vec<Vec<u8>> = (0..family.b_len())
                .map(|i| family.b_member(i).to_vec())
                .collect();
            let mut filtered_b = filter_all(kind, n, true);
            generated_b.sort();
            filtered_b.sort();
            assert_eq!(generated_b, filtered_b, "{kind:?} N={n} B-side");
        }
    }

    #[test]
    fn no_range_size_example() {
        let family = enumerate_family(FamilyKind::NoRange, 3).unwrap();
        assert_eq!(family.a_len(), 6);
    }

    #[test]
    fn no_collision_members_structure() {
        let family = enumerate_family(FamilyKind::NoCollision, 5).unwrap();
        assert!(family.a_len() > 0);
        for i in 0..family.a_len() {
            let f = family.a_member(i);
            assert_eq!(pair_count_of(f, 5), 2);
            let lone = family.answer(f).unwrap();
            assert!((1..=5).contains(&lone));
        }
    }

    #[test]
    fn parity_members_structure() {
        let family = enumerate_family(FamilyKind::ParityCollision, 4).unwrap();
        for i in 0..family.a_len() {
            assert_eq!(pair_count_of(family.a_member(i), 4), 1);
        }
        for i in 0..family.b_len() {
            assert_eq!(pair_count_of(family.b_member(i), 4), 2);
        }
    }

    #[test]
    fn relation_quadruples_small() {
        let family = enumerate_family(FamilyKind::NoRange, 4).unwrap();
        let summary = relation_params(&family).unwrap();
        assert_eq!(
            (
                summary.params.m,
                summary.params.m_prime,
                summary.params.l,
                summary.params.l_prime
            ),
            (2, 2, 1, 1)
        );
        assert!((summary.params.bound - 2.0).abs() < 1e-12);

        let family = enumerate_family(FamilyKind::NoCollision, 5).unwrap();
        let summary = relation_params(&family).unwrap();
        assert_eq!(
            (
                summary.params.m,
                summary.params.m_prime,
                summary.params.l,
                summary.params.l_prime
            ),
            (4, 4, 1, 1)
        );

        let family = enumerate_family(FamilyKind::ParityCollision, 4).unwrap();
        let summary = relation_params(&family).unwrap();
        assert_eq!(
            (
                summary.params.m,
                summary.params.m_prime,
                summary.params.l,
                summary.params.l_prime
            ),
            (2, 8, 1, 2)
        );
        assert!((summary.params.bound - 8.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bound_arithmetic() {
        assert!((ambainis_bound(2, 2, 1, 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((ambainis_bound(4, 4, 1, 1).unwrap() - 4.0).abs() < 1e-12);
        assert!((ambainis_bound(2, 8, 1, 2).unwrap() - 8.0f64.sqrt()).abs() < 1e-12);
        assert!(ambainis_bound(0, 1, 1, 1).is_err());
    }

    #[test]
    fn no_range_scaling_small() {
        let rows = scaling_check(FamilyKind::NoRange, &[3, 4, 5, 6]).unwrap();
        let bounds: Vec<f64> = rows.iter().map(|r| r.params.bound).collect();
        assert_eq!(bounds, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn constraints_validated() {
        assert!(enumerate_family(FamilyKind::ParityCollision, 6).is_err());
        assert!(enumerate_family(FamilyKind::NoCollision, 6).is_err());
        assert!(enumerate_family(FamilyKind::NoRange, 9).is_err());
    }
}
