//! Instance generators: random sequences, 3-Partition reductions and the
//! family on which the factor 2 is tight.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::seq::{Scalar, Sequence};

/// The generator behind every seeded command: ChaCha8 keyed by `seed`, so a
/// seed names the same stream on every platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` elements drawn uniformly from `lo..=hi`.
pub fn random_sequence<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    lo: Scalar,
    hi: Scalar,
) -> Result<Sequence> {
    if lo > hi {
        return Err(Error::contract(format!("empty range {lo}..={hi}")));
    }
    Ok((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Reduction from 3-Partition: the `3k` items followed by `k - 1` copies of
/// `-s`. Some permutation reaches value `s` iff the items split into `k`
/// triples each summing to `s`.
pub fn gen_3partition_instance(items: &[Scalar], s: Scalar) -> Result<Sequence> {
    if items.is_empty() || !items.len().is_multiple_of(3) {
        return Err(Error::contract(format!(
            "item count must be 3k with k >= 1, got {}",
            items.len()
        )));
    }
    let k = (items.len() / 3) as Scalar;
    if let Some(&bad) = items.iter().find(|&&a| !(4 * a > s && 2 * a < s)) {
        return Err(Error::contract(format!(
            "item {bad} violates s/4 < a < s/2 for s = {s}"
        )));
    }
    let total: Scalar = items.iter().sum();
    if total != k * s {
        return Err(Error::contract(format!(
            "items sum to {total}, expected k*s = {}",
            k * s
        )));
    }
    Ok(items
        .iter()
        .copied()
        .chain(std::iter::repeat_n(-s, k as usize - 1))
        .collect())
}

/// Items of a random yes-instance of 3-Partition: `k` triples, each inside
/// `(s/4, s/2)` and summing to `s`, shuffled.
pub fn random_yes_3partition<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    s: Scalar,
) -> Result<Vec<Scalar>> {
    let lo = s / 4 + 1;
    let hi = (s - 1) / 2;
    if k == 0 || s <= 0 || 3 * lo > s || 3 * hi < s {
        return Err(Error::contract(format!(
            "no triple in (s/4, s/2) sums to s = {s} (k = {k})"
        )));
    }
    let mut items = Vec::with_capacity(3 * k);
    while items.len() < 3 * k {
        let a = rng.gen_range(lo..=hi);
        let b_lo = lo.max(s - a - hi);
        let b_hi = hi.min(s - a - lo);
        if b_lo > b_hi {
            continue;
        }
        let b = rng.gen_range(b_lo..=b_hi);
        items.extend([a, b, s - a - b]);
    }
    items.shuffle(rng);
    Ok(items)
}

/// `<y, -x, y, -x, x>` with `x/2 < y < x`: the optimum is `x` while the
/// block builder run with `L = x` returns a value in `[2y, x + y]`.
pub fn tightness_family(x: Scalar, y: Scalar) -> Result<Sequence> {
    if x <= 0 || 2 * y <= x || y >= x {
        return Err(Error::contract(format!(
            "tightness family needs x > 0 and x/2 < y < x, got x = {x}, y = {y}"
        )));
    }
    Ok(Sequence::new(vec![y, -x, y, -x, x]))
}
