//! Slow reference implementations.
//!
//! Nothing here calls into the fast algorithms of [`crate::iss`] or
//! [`crate::sss`]; values are recomputed with local code so that a bug in a
//! fast path cannot hide behind a shared helper.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{check_magnitude, Scalar, Sequence};

/// Default cap on the length accepted by [`exact_sss`].
pub const DEFAULT_SSS_LIMIT: usize = 9;

/// Hard cap regardless of the configured limit; positions live in a `u32` mask.
const MAX_SSS_LEN: usize = 24;

/// Largest dense memo table (cells) before falling back to a hash map.
const DENSE_MEMO_CELLS: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport<W> {
    pub best_value: Scalar,
    /// Optimal insertion indices, or optimal permutations.
    pub witnesses: Vec<W>,
    /// Number of candidates (positions, permutations or search states) examined.
    pub instances_checked: usize,
}

fn kadane<I: IntoIterator<Item = Scalar>>(elems: I) -> Scalar {
    let mut run: Scalar = 0;
    let mut best: Scalar = 0;
    for v in elems {
        run += v;
        if run < 0 {
            run = 0;
        }
        if run > best {
            best = run;
        }
    }
    best
}

/// Maximum over all `0 <= i <= j <= n` of `sum a[i..j]`, from prefix sums.
pub fn brute_mss(a: &[Scalar]) -> Result<Scalar> {
    check_magnitude(a, &[])?;
    let mut prefix = Vec::with_capacity(a.len() + 1);
    prefix.push(0);
    for &v in a {
        prefix.push(prefix.last().unwrap() + v);
    }
    let mut best = 0;
    for i in 0..prefix.len() {
        for j in i..prefix.len() {
            best = best.max(prefix[j] - prefix[i]);
        }
    }
    Ok(best)
}

/// Tries every insertion position with a fresh Kadane pass: `O(n^2)`.
/// Reports the minimum value and every position attaining it.
pub fn naive_iss(a: &[Scalar], x: Scalar) -> Result<OracleReport<usize>> {
    check_magnitude(a, &[x])?;
    let values: Vec<Scalar> = (0..=a.len())
        .map(|p| {
            kadane(
                a[..p]
                    .iter()
                    .copied()
                    .chain(std::iter::once(x))
                    .chain(a[p..].iter().copied()),
            )
        })
        .collect();
    let best_value = *values.iter().min().expect("n + 1 >= 1 positions");
    Ok(OracleReport {
        best_value,
        witnesses: (0..values.len())
            .filter(|&p| values[p] == best_value)
            .collect(),
        instances_checked: values.len(),
    })
}

/// Optimal permutation value with the default length cap.
pub fn exact_sss(a: &[Scalar]) -> Result<OracleReport<Sequence>> {
    exact_sss_with_limit(a, DEFAULT_SSS_LIMIT)
}

fn check_sss_len(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_SSS_LEN);
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    Ok(())
}

/// Exact optimum by dynamic programming over (set of placed elements,
/// running Kadane score). Equal values are placed in a fixed order so each
/// distinct permutation is explored once.
pub fn exact_sss_with_limit(a: &[Scalar], limit: usize) -> Result<OracleReport<Sequence>> {
    check_sss_len(a.len(), limit)?;
    check_magnitude(a, &[])?;
    let mut vals = a.to_vec();
    vals.sort_unstable();
    let mut search = MemoSearch::new(&vals);
    let best_value = search.solve(0, 0);

    // Replay the table to recover one optimal order.
    let mut witness = Vec::with_capacity(vals.len());
    let (mut mask, mut run) = (0u32, 0 as Scalar);
    while mask != search.full {
        let target = search.solve(mask, run);
        let moves: Vec<usize> = search.moves(mask).collect();
        let t = moves
            .into_iter()
            .find(|&t| {
                let next = (run + vals[t]).max(0);
                run.max(search.solve(mask | 1 << t, next)) == target
            })
            .expect("some move attains the memoized optimum");
        witness.push(vals[t]);
        run = (run + vals[t]).max(0);
        mask |= 1 << t;
    }

    Ok(OracleReport {
        best_value,
        witnesses: vec![Sequence::new(witness)],
        instances_checked: search.states,
    })
}

/// Exact optimum by enumerating every distinct permutation.
pub fn exact_sss_enumerate(a: &[Scalar], limit: usize) -> Result<OracleReport<Sequence>> {
    check_sss_len(a.len(), limit)?;
    check_magnitude(a, &[])?;
    let mut perm = a.to_vec();
    perm.sort_unstable();
    let mut best = (kadane(perm.iter().copied()), perm.clone());
    let mut checked = 1;
    while next_permutation(&mut perm) {
        checked += 1;
        let v = kadane(perm.iter().copied());
        if v < best.0 {
            best = (v, perm.clone());
        }
    }
    Ok(OracleReport {
        best_value: best.0,
        witnesses: vec![Sequence::new(best.1)],
        instances_checked: checked,
    })
}

/// Lexicographic successor; false once `v` is the last permutation.
fn next_permutation(v: &mut [Scalar]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

enum Memo {
    Dense { width: usize, cells: Vec<Scalar> },
    Sparse(HashMap<(u32, Scalar), Scalar>),
}

struct MemoSearch<'a> {
    vals: &'a [Scalar],
    full: u32,
    memo: Memo,
    states: usize,
}

impl<'a> MemoSearch<'a> {
    fn new(vals: &'a [Scalar]) -> Self {
        let n = vals.len();
        // the running score always lies in 0..=sum of positives
        let width = vals.iter().filter(|&&v| v > 0).sum::<Scalar>() as usize + 1;
        let memo = match width.checked_mul(1usize << n) {
            Some(cells) if cells <= DENSE_MEMO_CELLS => Memo::Dense {
                width,
                cells: vec![-1; cells],
            },
            _ => Memo::Sparse(HashMap::new()),
        };
        MemoSearch {
            vals,
            full: ((1u64 << n) - 1) as u32,
            memo,
            states: 0,
        }
    }

    /// Unplaced positions, skipping a value while an equal one before it is
    /// still unplaced.
    fn moves(&self, mask: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.vals.len()).filter(move |&t| {
            mask & (1 << t) == 0
                && !(t > 0 && self.vals[t] == self.vals[t - 1] && mask & (1 << (t - 1)) == 0)
        })
    }

    fn lookup(&self, mask: u32, run: Scalar) -> Option<Scalar> {
        match &self.memo {
            Memo::Dense { width, cells } => {
                let v = cells[mask as usize * width + run as usize];
                (v >= 0).then_some(v)
            }
            Memo::Sparse(map) => map.get(&(mask, run)).copied(),
        }
    }

    fn store(&mut self, mask: u32, run: Scalar, v: Scalar) {
        match &mut self.memo {
            Memo::Dense { width, cells } => cells[mask as usize * *width + run as usize] = v,
            Memo::Sparse(map) => {
                map.insert((mask, run), v);
            }
        }
    }

    /// Smallest achievable `max(run, later running scores)` once the
    /// elements in `mask` are placed and the current running score is `run`.
    fn solve(&mut self, mask: u32, run: Scalar) -> Scalar {
        if mask == self.full {
            return run;
        }
        if let Some(v) = self.lookup(mask, run) {
            return v;
        }
        self.states += 1;
        let mut best = Scalar::MAX;
        let moves: Vec<usize> = self.moves(mask).collect();
        for t in moves {
            let next = (run + self.vals[t]).max(0);
            best = best.min(run.max(self.solve(mask | 1 << t, next)));
        }
        self.store(mask, run, best);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_mss_examples() {
        assert_eq!(brute_mss(&[]).unwrap(), 0);
        assert_eq!(brute_mss(&[-1, -2]).unwrap(), 0);
        assert_eq!(
            brute_mss(&[2, 4, -2, 5, 3, 0, -6, -4, 3, 2, -4, -6]).unwrap(),
            12
        );
    }

    #[test]
    fn naive_iss_examples() {
        let r = naive_iss(&[5, -1, 5], -4).unwrap();
        assert_eq!((r.best_value, r.witnesses), (5, vec![1, 2]));
        assert_eq!(r.instances_checked, 4);

        for x in [-3, 0, 4] {
            let r = naive_iss(&[], x).unwrap();
            assert_eq!((r.best_value, r.witnesses), (x.max(0), vec![0]));
        }

        let r = naive_iss(&[3, -5, 4, -5], 6).unwrap();
        assert_eq!((r.best_value, r.witnesses), (6, vec![4]));
        let r = naive_iss(&[3, -5, 4, -5], 1).unwrap();
        assert_eq!((r.best_value, r.witnesses), (4, vec![0, 1, 4]));
    }

    #[test]
    fn exact_sss_examples() {
        let r = exact_sss(&[9, -10, 9, -10, 10]).unwrap();
        assert_eq!(r.best_value, 10);
        assert_eq!(kadane(r.witnesses[0].iter().copied()), 10);
        assert_eq!(exact_sss(&[1, 2, 3]).unwrap().best_value, 6);
        assert_eq!(exact_sss(&[5, 6, 7, 5, 6, 7, -18]).unwrap().best_value, 18);
        assert_eq!(exact_sss(&[5, 5, 8, 5, 5, 8, -18]).unwrap().best_value, 18);
        assert_eq!(exact_sss(&[5, -100, 5]).unwrap().best_value, 5);
        assert_eq!(exact_sss(&[10, -10, 6, -10, 6]).unwrap().best_value, 10);
        assert_eq!(exact_sss(&[]).unwrap().best_value, 0);
    }

    #[test]
    fn exact_sss_refuses_large_inputs() {
        let a = vec![1; 10];
        assert_eq!(
            exact_sss(&a).unwrap_err(),
            Error::OracleLimit { n: 10, limit: 9 }
        );
        assert!(exact_sss_with_limit(&a, 10).is_ok());
        assert!(exact_sss_enumerate(&a, 9).is_err());
    }

    #[test]
    fn enumeration_counts_distinct_permutations() {
        let r = exact_sss_enumerate(&[1, 1, 2], 9).unwrap();
        assert_eq!(r.instances_checked, 3);
        let r = exact_sss_enumerate(&[3, -1, 2, -4], 9).unwrap();
        assert_eq!(r.instances_checked, 24);
    }

    #[test]
    fn memo_agrees_with_enumeration() {
        let cases: [&[Scalar]; 5] = [
            &[4, -3, 2, -6, 5, 1, -2],
            &[0, 0, -1, 3, 3, -5],
            &[6, 6, 6, -6, -6],
            &[-1, -2, -3],
            &[1000, -999, 998, -1000, 1],
        ];
        for a in cases {
            let memo = exact_sss(a).unwrap();
            let plain = exact_sss_enumerate(a, 9).unwrap();
            assert_eq!(memo.best_value, plain.best_value, "{a:?}");
            let mut w = memo.witnesses[0].to_vec();
            assert_eq!(kadane(w.iter().copied()), memo.best_value);
            w.sort_unstable();
            let mut s = a.to_vec();
            s.sort_unstable();
            assert_eq!(w, s);
        }
    }

    #[test]
    fn sparse_memo_path() {
        let a = [1 << 40, -(1 << 40), 3, -(1 << 41), 1 << 40];
        let memo = exact_sss(&a).unwrap();
        let plain = exact_sss_enumerate(&a, 9).unwrap();
        assert_eq!(memo.best_value, plain.best_value);
    }
}
