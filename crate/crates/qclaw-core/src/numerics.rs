//! Small numeric helpers shared across the finders and their analytic models.

/// `ceil(log2(n))` for `n >= 1`; 0 for `n <= 1`.
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Largest `k` with `k*k <= n`.
pub fn isqrt(n: usize) -> usize {
    if n < 2 {
        return n;
    }
    let mut k = (n as f64).sqrt() as usize;
    while k.saturating_mul(k) > n {
        k -= 1;
    }
    while (k + 1).saturating_mul(k + 1) <= n {
        k += 1;
    }
    k
}

/// Smallest `k` with `k*k*k >= n`.
pub fn ceil_cbrt(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut k = (n as f64).cbrt().round() as usize;
    while k > 1 && (k - 1).saturating_pow(3) >= n {
        k -= 1;
    }
    while k.saturating_pow(3) < n {
        k += 1;
    }
    k
}

/// Cumulative log-factorial table: `table[k] = ln(k!)` for `k <= n`.
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for k in 1..=n {
            acc += (k as f64).ln();
            table.push(acc);
        }
        Self { table }
    }

    pub fn ln_choose(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Hypergeometric pmf: drawing `draws` items from a population of `total`
/// containing `tagged` special items, probability of exactly `hits` specials.
pub fn hypergeometric_pmf(total: usize, tagged: usize, draws: usize, hits: usize) -> f64 {
    if tagged > total || draws > total {
        return 0.0;
    }
    if hits > tagged || hits > draws || draws - hits > total - tagged {
        return 0.0;
    }
    let lf = LnFactorial::up_to(total);
    (lf.ln_choose(tagged, hits) + lf.ln_choose(total - tagged, draws - hits)
        - lf.ln_choose(total, draws))
    .exp()
}

/// Exact expected comparison count of top-down mergesort on a uniformly
/// random permutation of `n` distinct keys.
///
/// Merging random sorted runs of lengths p and q costs
/// p + q - p/(q+1) - q/(p+1) comparisons in expectation.
pub fn expected_mergesort_comparisons(n: usize) -> f64 {
    fn go(n: usize, memo: &mut Vec<Option<f64>>) -> f64 {
        if n <= 1 {
            return 0.0;
        }
        if let Some(v) = memo[n] {
            return v;
        }
        let p = n / 2;
        let q = n - p;
        let merge = (p + q) as f64 - p as f64 / (q as f64 + 1.0) - q as f64 / (p as f64 + 1.0);
        let v = go(p, memo) + go(q, memo) + merge;
        memo[n] = Some(v);
        v
    }
    let mut memo = vec![None; n + 1];
    go(n, &mut memo)
}

/// Worst-case comparison count of top-down mergesort on `n` keys.
pub fn worst_mergesort_comparisons(n: usize) -> u64 {
    if n <= 1 {
        return 0;
    }
    let p = n / 2;
    let q = n - p;
    worst_mergesort_comparisons(p) + worst_mergesort_comparisons(q) + (n as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_small_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1025), 11);
    }

    #[test]
    fn isqrt_matches_float_on_range() {
        for n in 0..5000 {
            let k = isqrt(n);
            assert!(k * k <= n);
            assert!((k + 1) * (k + 1) > n);
        }
    }

    #[test]
    fn ceil_cbrt_matches_definition() {
        for n in 1..3000 {
            let k = ceil_cbrt(n);
            assert!(k * k * k >= n);
            assert!(k == 1 || (k - 1) * (k - 1) * (k - 1) < n);
        }
        assert_eq!(ceil_cbrt(1024), 11);
    }

    #[test]
    fn hypergeometric_sums_to_one() {
        let total = 40;
        let tagged = 7;
        let draws = 12;
        let sum: f64 = (0..=draws)
            .map(|h| hypergeometric_pmf(total, tagged, draws, h))
            .sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_matches_enumeration() {
        // Oracle: enumerate all 4-subsets of a 10-element set with 3 tagged.
        let total = 10usize;
        let tagged = 3usize;
        let draws = 4usize;
        let mut counts = [0u64; 5];
        let mut total_subsets = 0u64;
        for mask in 0u32..(1 << total) {
            if mask.count_ones() as usize != draws {
                continue;
            }
            total_subsets += 1;
            let hits = (mask & 0b111).count_ones() as usize;
            counts[hits] += 1;
        }
        for h in 0..=draws.min(tagged) {
            let expect = counts[h] as f64 / total_subsets as f64;
            let got = hypergeometric_pmf(total, tagged, draws, h);
            assert!((got - expect).abs() < 1e-12, "h={h}: {got} vs {expect}");
        }
    }

    #[test]
    fn expected_mergesort_matches_brute_force_average() {
        // Oracle: run a comparison-counting mergesort over every permutation.
        fn count_merge(perm: &[u32]) -> u64 {
            fn sort(v: &mut [u32], count: &mut u64) {
                let n = v.len();
                if n <= 1 {
                    return;
                }
                let mut left: Vec<u32> = v[..n / 2].to_vec();
                let mut right: Vec<u32> = v[n / 2..].to_vec();
                sort(&mut left, count);
                sort(&mut right, count);
                let (mut i, mut j, mut k) = (0, 0, 0);
                while i < left.len() && j < right.len() {
                    *count += 1;
                    if left[i] <= right[j] {
                        v[k] = left[i];
                        i += 1;
                    } else {
                        v[k] = right[j];
                        j += 1;
                    }
                    k += 1;
                }
                while i < left.len() {
                    v[k] = left[i];
                    i += 1;
                    k += 1;
                }
                while j < right.len() {
                    v[k] = right[j];
                    j += 1;
                    k += 1;
                }
            }
            let mut v = perm.to_vec();
            let mut count = 0;
            sort(&mut v, &mut count);
            count
        }

        fn permutations(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n);
                    out.push(q);
                }
            }
            out
        }

        for n in 2..=7u32 {
            let perms = permutations(n);
            let avg = perms.iter().map(|p| count_merge(p) as f64).sum::<f64>() / perms.len() as f64;
            let predicted = expected_mergesort_comparisons(n as usize);
            assert!(
                (avg - predicted).abs() < 1e-9,
                "n={n}: avg {avg} vs predicted {predicted}"
            );
        }
    }

    #[test]
    fn worst_mergesort_bound() {
        for k in 1..=12u32 {
            let n = 1usize << k;
            let w = worst_mergesort_comparisons(n);
            assert!(w <= (n as u64) * k as u64);
        }
    }
}
