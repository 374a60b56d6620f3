//! Optimal insertion of one scalar into a sequence.
//!
//! Given `a` and `x`, find the position `p` minimizing the value of
//! `a[..p] ++ [x] ++ a[p..]`. Each sign of `x` has its own linear-time
//! algorithm, and [`insert_best`] dispatches between them.

use std::iter;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{
    check_magnitude, check_mass, minimal_mss, partition_measured, partition_unchecked,
    value_of_iter, Interval, Scalar, Sequence, SubseqRef,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionOutcome {
    /// Insertion position in `0..=n`.
    pub index: usize,
    /// Value of the sequence after inserting at `index`.
    pub value: Scalar,
}

/// `a[..p] ++ [x] ++ a[p..]`.
pub fn apply_insertion(a: &[Scalar], x: Scalar, p: usize) -> Result<Sequence> {
    if p > a.len() {
        return Err(Error::contract(format!(
            "insertion index {p} out of range 0..={}",
            a.len()
        )));
    }
    Ok(inserted(a, x, p).collect())
}

fn inserted(a: &[Scalar], x: Scalar, p: usize) -> impl Iterator<Item = Scalar> + '_ {
    a[..p]
        .iter()
        .copied()
        .chain(iter::once(x))
        .chain(a[p..].iter().copied())
}

/// Optimal insertion for any sign of `x`, in O(n) time and space.
///
/// `x == 0` leaves the value unchanged wherever it goes; position 0 is
/// returned by convention.
pub fn insert_best(a: &[Scalar], x: Scalar) -> Result<InsertionOutcome> {
    if x > 0 {
        return positive_checked(a, x);
    }
    check_magnitude(a, &[x])?;
    Ok(if x == 0 {
        InsertionOutcome {
            index: 0,
            value: value_of_iter(a.iter().copied()),
        }
    } else {
        negative_unchecked(a, x)
    })
}

/// Optimal insertion of a negative `x`.
///
/// `x` has to split the (leftmost, inclusion-minimal) maximum scoring
/// subsequence `a[i..j]`; the split point `p` in `i+1..j` minimizing
/// `max(f(a[i..p]), f(a[p..j]))` is optimal. When `n == 0`, `j <= i + 1` or
/// `f(a) == 0` every position gives `f(a)` and 0 is returned.
pub fn insert_best_negative(a: &[Scalar], x: Scalar) -> Result<InsertionOutcome> {
    if x >= 0 {
        return Err(Error::contract(format!(
            "negative-case insertion requires x < 0, got {x}"
        )));
    }
    check_magnitude(a, &[x])?;
    Ok(negative_unchecked(a, x))
}

fn negative_unchecked(a: &[Scalar], x: Scalar) -> InsertionOutcome {
    let (mss, best) = minimal_mss(a).expect("magnitude already checked");
    let (i, j) = (mss.start, mss.end);
    if a.is_empty() || j <= i + 1 || best == 0 {
        return InsertionOutcome {
            index: 0,
            value: best,
        };
    }

    // left[p - i] = f(a[i..p]) for p in i..=j
    let mut left = Vec::with_capacity(j - i + 1);
    let (mut cur, mut val): (Scalar, Scalar) = (0, 0);
    left.push(0);
    for &v in &a[i..j] {
        cur = (cur + v).max(0);
        val = val.max(cur);
        left.push(val);
    }

    // right-to-left: f(a[p..j]) for p = j-1 down to i+1
    let (mut cur, mut val): (Scalar, Scalar) = (0, 0);
    let mut choice = (Scalar::MAX, 0);
    for p in (i + 1..j).rev() {
        cur = (cur + a[p]).max(0);
        val = val.max(cur);
        let split = left[p - i].max(val);
        // <= keeps the leftmost optimum while scanning leftwards
        if split <= choice.0 {
            choice = (split, p);
        }
    }
    let p = choice.1;
    InsertionOutcome {
        index: p,
        value: value_of_iter(inserted(a, x, p)),
    }
}

/// Optimal insertion of a positive `x`.
///
/// Works on `a` followed by a sentinel 0, so the last interval has a
/// nonnegative total. Inside an interval the best position is just before its
/// final element, so there is one candidate per interval; the second phase
/// finds the candidate whose extended interval has the smallest value. The
/// sentinel is invisible to the caller: choosing the sentinel interval means
/// appending `x` at position `n`.
pub fn insert_best_positive(a: &[Scalar], x: Scalar) -> Result<InsertionOutcome> {
    if x <= 0 {
        return Err(Error::contract(format!(
            "positive-case insertion requires x > 0, got {x}"
        )));
    }
    positive_checked(a, x)
}

/// Validates the magnitude during the partition pass, so `a` is read once.
fn positive_checked(a: &[Scalar], x: Scalar) -> Result<InsertionOutcome> {
    let (part, mass) = partition_measured(a);
    check_mass(mass + u128::from(x.unsigned_abs()))?;
    let mut arrays = PhaseArrays::from_partition(a, x, part.intervals);
    let k = arrays.second_phase(|_, _| {});
    Ok(arrays.outcome(k))
}

/// Partition of `a ++ [0]`: the zero extends a nonnegative last interval
/// and otherwise forms an interval of its own.
fn with_sentinel(n: usize, mut intervals: Vec<Interval>) -> Vec<Interval> {
    match intervals.last_mut() {
        Some(last) if last.total >= 0 => last.bounds.end = n + 1,
        _ => intervals.push(Interval {
            bounds: SubseqRef::new(n, n + 1),
            total: 0,
            best: 0,
            best_prefix_end: n,
        }),
    }
    intervals
}

/// Per-call state of the positive-case algorithm. All vectors are indexed
/// by 0-based interval number `k` of the partition of `a ++ [0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseArrays {
    pub x: Scalar,
    pub intervals: Vec<Interval>,
    /// Suffix sums of interval totals; `sn[k] = total[k] + ... + total[l-1]`
    /// and `sn[l] = 0`, so the totals of intervals `k..k'` sum to
    /// `sn[k] - sn[k']`.
    pub sn: Vec<Scalar>,
    /// `f(I_k)`.
    pub intscr: Vec<Scalar>,
    /// `x` plus the score of `I_k` without its final element: the score of the
    /// prefix ending at `x` when inserting into `I_k`.
    pub xscr: Vec<Scalar>,
    /// Largest prefix score seen so far of each extended interval.
    pub extscr: Vec<Scalar>,
    /// Candidate intervals, front first; the rear is the current best.
    pub queue: Vec<usize>,
}

impl PhaseArrays {
    /// Modified Kadane pass: partition `a ++ [0]` and fill `sn`, `intscr`
    /// and `xscr`. The caller guarantees the magnitude bound.
    pub fn first_phase(a: &[Scalar], x: Scalar) -> PhaseArrays {
        Self::from_partition(a, x, partition_unchecked(a).intervals)
    }

    fn from_partition(a: &[Scalar], x: Scalar, intervals: Vec<Interval>) -> PhaseArrays {
        let intervals = with_sentinel(a.len(), intervals);
        let l = intervals.len();
        let elem = |idx: usize| a.get(idx).copied().unwrap_or(0);

        let mut sn = vec![0; l + 1];
        for k in (0..l).rev() {
            sn[k] = sn[k + 1] + intervals[k].total;
        }
        let intscr = intervals.iter().map(|iv| iv.best).collect();
        let xscr = intervals
            .iter()
            .map(|iv| x + iv.total - elem(iv.bounds.end - 1))
            .collect();
        PhaseArrays {
            x,
            intervals,
            sn,
            intscr,
            xscr,
            extscr: vec![0; l],
            queue: Vec::with_capacity(l),
        }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Queue-driven second phase; returns the best interval.
    ///
    /// `observe(k, self)` is called at the top of every iteration `k >= 1`,
    /// before interval `k` is examined. Every interval enters and leaves the
    /// queue at most once, so the phase is linear.
    pub fn second_phase<F>(&mut self, mut observe: F) -> usize
    where
        F: FnMut(usize, &PhaseArrays),
    {
        let x = self.x;
        self.queue.clear();
        self.extscr[0] = self.intscr[0].max(self.xscr[0]);
        self.queue.push(0);

        for k in 1..self.len() {
            observe(k, self);
            let mut rear = *self.queue.last().expect("queue never empties");
            // x plus the totals of intervals rear..k: the offset of I_k's
            // prefix curve inside the extended interval of `rear`.
            let mut dist = x + self.sn[rear] - self.sn[k];
            while dist >= 0 && dist + self.intscr[k] > self.extscr[rear] {
                self.extscr[rear] = dist + self.intscr[k];
                let q = self.queue.len();
                if q > 1 && self.extscr[rear] >= self.extscr[self.queue[q - 2]] {
                    // the predecessor's curve lies below by a constant from
                    // here on, so `rear` can never win again
                    self.queue.pop();
                    rear = self.queue[q - 2];
                    dist = x + self.sn[rear] - self.sn[k];
                }
            }
            self.extscr[k] = self.intscr[k].max(self.xscr[k]);
            if self.extscr[k] < self.extscr[rear] {
                self.queue.push(k);
            }
        }
        *self.queue.last().expect("queue never empties")
    }

    /// Maps interval `k` back to a position in the original sequence. Other
    /// intervals keep their own values, hence the max with `f(a)`.
    pub fn outcome(&self, k: usize) -> InsertionOutcome {
        let value_a = self.intscr.iter().copied().max().unwrap_or(0);
        InsertionOutcome {
            index: self.intervals[k].bounds.end - 1,
            value: self.extscr[k].max(value_a),
        }
    }
}

/// Runs both positive-case phases, reporting each iteration to `observe`.
/// Returns the final arrays and the chosen interval.
pub fn run_positive_phases<F>(a: &[Scalar], x: Scalar, observe: F) -> Result<(PhaseArrays, usize)>
where
    F: FnMut(usize, &PhaseArrays),
{
    if x <= 0 {
        return Err(Error::contract(format!(
            "positive-case insertion requires x > 0, got {x}"
        )));
    }
    check_magnitude(a, &[x])?;
    let mut arrays = PhaseArrays::first_phase(a, x);
    let k = arrays.second_phase(observe);
    Ok((arrays, k))
}
