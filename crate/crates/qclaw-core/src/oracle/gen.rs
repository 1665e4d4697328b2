//! Seeded instance generators.
//!
//! All generators are deterministic in their seed. The PRNG is pinned to
//! ChaCha8 (`rand_chacha::ChaCha8Rng`) so runs reproduce across machines;
//! the algorithm name is echoed into every run report.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::FunctionInstance;

/// The pinned PRNG for every seeded run in this crate.
pub type RunRng = ChaCha8Rng;

/// Name echoed into reports for reproducibility.
pub const RNG_ALGORITHM: &str = "chacha8";

pub fn rng_from_seed(seed: u64) -> RunRng {
    use rand::SeedableRng;
    RunRng::seed_from_u64(seed)
}

/// Draws `count` pairwise distinct values from a wide range.
fn distinct_values(count: usize, rng: &mut RunRng) -> Vec<i64> {
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.gen_range(0..1i64 << 40);
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

/// Two unordered tables with exactly one claw; every other value is distinct
/// across both tables.
pub fn gen_planted_claw(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<(FunctionInstance, FunctionInstance)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "domain sizes must be positive".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let pool = distinct_values(n + m - 1, &mut rng);
    let f_values = pool[..n].to_vec();
    let mut g_values = pool[n..].to_vec();
    let x = rng.gen_range(0..n);
    g_values.push(f_values[x]);
    g_values.shuffle(&mut rng);
    Ok((
        FunctionInstance::new(f_values, false)?,
        FunctionInstance::new(g_values, false)?,
    ))
}

/// A table where every range value has exactly two preimages.
pub fn gen_two_to_one(n: usize, seed: u64) -> Result<FunctionInstance> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "2-to-1 table needs even size, got {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let pool = distinct_values(n / 2, &mut rng);
    let mut values = Vec::with_capacity(n);
    for v in pool {
        values.push(v);
        values.push(v);
    }
    values.shuffle(&mut rng);
    FunctionInstance::new(values, false)
}

/// A table where one value occurs exactly `k` times and the rest are distinct.
pub fn gen_k_repeated(n: usize, k: usize, seed: u64) -> Result<FunctionInstance> {
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "repetition count {k} outside 2..={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let pool = distinct_values(n - k + 1, &mut rng);
    let mut values = Vec::with_capacity(n);
    for _ in 0..k {
        values.push(pool[0]);
    }
    values.extend_from_slice(&pool[1..]);
    values.shuffle(&mut rng);
    FunctionInstance::new(values, false)
}

/// Two strictly increasing tables; they share exactly one value when
/// `plant_claw` is set and none otherwise.
pub fn gen_ordered_pair(
    n: usize,
    m: usize,
    plant_claw: bool,
    seed: u64,
) -> Result<(FunctionInstance, FunctionInstance)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "domain sizes must be positive".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    if plant_claw {
        let mut pool = distinct_values(n + m - 1, &mut rng);
        // Assign a random n-subset to f; one of f's values is shared with g.
        pool.shuffle(&mut rng);
        let mut f_values = pool[..n].to_vec();
        let mut g_values = pool[n..].to_vec();
        let shared = f_values[rng.gen_range(0..n)];
        g_values.push(shared);
        f_values.sort_unstable();
        g_values.sort_unstable();
        Ok((
            FunctionInstance::new(f_values, true)?,
            FunctionInstance::new(g_values, true)?,
        ))
    } else {
        let mut pool = distinct_values(n + m, &mut rng);
        pool.shuffle(&mut rng);
        let mut f_values = pool[..n].to_vec();
        let mut g_values = pool[n..].to_vec();
        f_values.sort_unstable();
        g_values.sort_unstable();
        Ok((
            FunctionInstance::new(f_values, true)?,
            FunctionInstance::new(g_values, true)?,
        ))
    }
}
