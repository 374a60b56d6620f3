//! Sequences, subsequence scores, Kadane's algorithm and the partition into
//! intervals.
//!
//! Indices follow the half-open convention: `SubseqRef { start: i, end: j }`
//! names the elements at 0-based positions `i..j`, so `start == end` is the
//! empty subsequence and `0 <= start <= end <= n`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact element type. Decimal data must be scaled to integers by the caller.
pub type Scalar = i64;

/// Upper bound on the absolute mass (sum of absolute values) of any input.
///
/// Every intermediate quantity computed by this crate is bounded by a small
/// multiple of the input mass, so keeping the mass below `i64::MAX / 4` rules
/// out wrapping without per-addition checks.
pub const MAGNITUDE_LIMIT: Scalar = i64::MAX / 4;

/// Fails with [`Error::Overflow`] unless `sum |a| + sum |extra|` stays within
/// [`MAGNITUDE_LIMIT`].
pub fn check_magnitude(elems: &[Scalar], extra: &[Scalar]) -> Result<()> {
    // u128 cannot wrap for any slice length
    check_mass(
        elems
            .iter()
            .chain(extra)
            .map(|v| u128::from(v.unsigned_abs()))
            .sum(),
    )
}

pub(crate) fn check_mass(mass: u128) -> Result<()> {
    if mass > MAGNITUDE_LIMIT as u128 {
        return Err(Error::Overflow {
            limit: MAGNITUDE_LIMIT,
        });
    }
    Ok(())
}

/// An ordered list of scalars.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequence(Vec<Scalar>);

impl Sequence {
    pub fn new(elems: Vec<Scalar>) -> Self {
        Sequence(elems)
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }
}

impl Deref for Sequence {
    type Target = [Scalar];

    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl From<Vec<Scalar>> for Sequence {
    fn from(v: Vec<Scalar>) -> Self {
        Sequence(v)
    }
}

impl From<&[Scalar]> for Sequence {
    fn from(v: &[Scalar]) -> Self {
        Sequence(v.to_vec())
    }
}

impl FromIterator<Scalar> for Sequence {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Sequence(iter.into_iter().collect())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Half-open reference `start..end` to a contiguous subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SubseqRef {
    pub start: usize,
    pub end: usize,
}

impl SubseqRef {
    pub const EMPTY: SubseqRef = SubseqRef { start: 0, end: 0 };

    pub fn new(start: usize, end: usize) -> Self {
        SubseqRef { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for SubseqRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

/// One block of the partition into intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub bounds: SubseqRef,
    /// Sum of all elements; negative unless this is the last interval.
    pub total: Scalar,
    /// Value of the interval, which is also its largest prefix score.
    pub best: Scalar,
    /// First absolute index `j'` with `score(start..j') == best`.
    pub best_prefix_end: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub intervals: Vec<Interval>,
}

impl IntervalPartition {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// The sequence of interval totals.
    pub fn neg_scores(&self) -> Vec<Scalar> {
        self.intervals.iter().map(|iv| iv.total).collect()
    }

    /// Value of the partitioned sequence: the largest interval value.
    pub fn value(&self) -> Scalar {
        self.intervals.iter().map(|iv| iv.best).max().unwrap_or(0)
    }

    /// Interval start offsets followed by the final end offset.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.intervals.iter().map(|iv| iv.bounds.start).collect();
        b.push(self.intervals.last().map_or(0, |iv| iv.bounds.end));
        b
    }
}

/// Sum of `a[r.start..r.end]`.
pub fn score(a: &[Scalar], r: SubseqRef) -> Result<Scalar> {
    if r.start > r.end || r.end > a.len() {
        return Err(Error::contract(format!(
            "subsequence {r} out of range for length {}",
            a.len()
        )));
    }
    a[r.start..r.end]
        .iter()
        .try_fold(0 as Scalar, |acc, &v| acc.checked_add(v))
        .ok_or(Error::Overflow {
            limit: MAGNITUDE_LIMIT,
        })
}

/// Value of an element stream: the largest score of a contiguous run,
/// including the empty run. Callers guarantee the magnitude bound.
pub(crate) fn value_of_iter<I: IntoIterator<Item = Scalar>>(elems: I) -> Scalar {
    let mut cur: Scalar = 0;
    let mut best: Scalar = 0;
    for v in elems {
        cur = (cur + v).max(0);
        best = best.max(cur);
    }
    best
}

/// `f(a)`: the largest score over all contiguous subsequences of `a`.
pub fn value(a: &[Scalar]) -> Result<Scalar> {
    check_magnitude(a, &[])?;
    Ok(value_of_iter(a.iter().copied()))
}

/// Largest score of a prefix of `a` (the empty prefix included).
pub fn max_prefix_score(a: &[Scalar]) -> Result<Scalar> {
    check_magnitude(a, &[])?;
    let mut sum: Scalar = 0;
    let mut best: Scalar = 0;
    for &v in a {
        sum += v;
        best = best.max(sum);
    }
    Ok(best)
}

/// Kadane's algorithm: one left-to-right pass returning a maximum scoring
/// subsequence and its score.
///
/// The running sum restarts whenever it drops below zero, which is exactly
/// where an interval of the partition ends; the witness is the first best
/// prefix of the first interval reaching the maximum.
pub fn max_scoring_subsequence(a: &[Scalar]) -> Result<(SubseqRef, Scalar)> {
    check_magnitude(a, &[])?;
    let mut best = (SubseqRef::EMPTY, 0);
    let mut start = 0;
    let mut sum: Scalar = 0;
    for (j, &v) in a.iter().enumerate() {
        sum += v;
        if sum > best.1 {
            best = (SubseqRef::new(start, j + 1), sum);
        }
        if sum < 0 {
            start = j + 1;
            sum = 0;
        }
    }
    Ok(best)
}

/// Maximum scoring subsequence that is minimal under inclusion: no nonempty
/// proper prefix or suffix has score zero. Among such subsequences the
/// leftmost one is returned; when `f(a) == 0` the result is the empty
/// reference `[0,0)`.
pub fn minimal_mss(a: &[Scalar]) -> Result<(SubseqRef, Scalar)> {
    check_magnitude(a, &[])?;
    // For each end j the start is the LAST position of the minimum prefix sum
    // seen so far (no zero-score prefix), and strict improvement keeps the
    // smallest end (no zero-score suffix).
    let mut prefix: Scalar = 0;
    let mut min_prefix: Scalar = 0;
    let mut min_at = 0;
    let mut best = (SubseqRef::EMPTY, 0);
    for (j, &v) in a.iter().enumerate() {
        prefix += v;
        if prefix - min_prefix > best.1 {
            best = (SubseqRef::new(min_at, j + 1), prefix - min_prefix);
        }
        if prefix <= min_prefix {
            min_prefix = prefix;
            min_at = j + 1;
        }
    }
    Ok(best)
}

/// Splits `a` into its maximal intervals.
///
/// An interval is a block whose proper prefixes all have nonnegative score
/// and whose total is negative, except that the final block may end at `n`
/// with any total. The empty sequence has zero intervals.
pub fn partition_into_intervals(a: &[Scalar]) -> Result<IntervalPartition> {
    let (part, mass) = partition_measured(a);
    check_mass(mass)?;
    Ok(part)
}

pub(crate) fn partition_unchecked(a: &[Scalar]) -> IntervalPartition {
    partition_measured(a).0
}

/// Partition together with `sum |a|`, in one pass over `a`. Sums wrap, so the
/// partition is only meaningful once the mass has passed [`check_mass`].
pub(crate) fn partition_measured(a: &[Scalar]) -> (IntervalPartition, u128) {
    let mut intervals = Vec::new();
    let mut start = 0;
    let mut mass: u128 = 0;
    let mut sum: Scalar = 0;
    let mut best: Scalar = 0;
    let mut best_end = 0;
    for (j, &v) in a.iter().enumerate() {
        mass += u128::from(v.unsigned_abs());
        sum = sum.wrapping_add(v);
        if sum > best {
            best = sum;
            best_end = j + 1;
        }
        if sum < 0 {
            intervals.push(Interval {
                bounds: SubseqRef::new(start, j + 1),
                total: sum,
                best,
                best_prefix_end: if best == 0 { start } else { best_end },
            });
            start = j + 1;
            sum = 0;
            best = 0;
        }
    }
    if start < a.len() {
        intervals.push(Interval {
            bounds: SubseqRef::new(start, a.len()),
            total: sum,
            best,
            best_prefix_end: if best == 0 { start } else { best_end },
        });
    }
    (IntervalPartition { intervals }, mass)
}
