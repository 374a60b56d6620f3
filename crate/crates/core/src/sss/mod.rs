//! Reordering a sequence to minimize its value.
//!
//! Finding the best permutation is strongly NP-hard, so this module provides
//! the greedy block builder [`parametrized_sorting`] and the driver
//! [`approx_sorting`], which picks the parameter from a certified lower bound
//! and stays within `OPT + M <= 2 * OPT`, where `M` is the largest element.

pub mod gen;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{check_magnitude, partition_unchecked, value_of_iter, Scalar, Sequence};

pub use gen::{
    gen_3partition_instance, random_sequence, random_yes_3partition, rng_from_seed,
    tightness_family,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortOutcome {
    pub permutation: Sequence,
    pub value: Scalar,
    /// Parameter handed to [`parametrized_sorting`].
    pub parameter_l: Scalar,
    /// Certified lower bound on the optimal value.
    pub lower_bound: Scalar,
}

/// How [`approx_sorting`] chose its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundTrace {
    /// `max(0, max element)`.
    pub m: Scalar,
    /// `max(m, score(a))`.
    pub l0: Scalar,
    /// Distinct values `{-a : a < -l0} ∪ {l0}`, strictly decreasing.
    pub p: Vec<Scalar>,
    /// `b(p[i])` for every entry of `p`.
    pub b_values: Vec<Scalar>,
    /// Segment `[p[i], p[i-1])` (unbounded above for `i == 0`) holding `final_l`.
    pub chosen: usize,
    /// Smallest integer `L >= l0` with `b(L) <= L`.
    pub final_l: Scalar,
}

/// `max(0, max element)`.
pub fn max_element(a: &[Scalar]) -> Scalar {
    a.iter().copied().max().unwrap_or(0).max(0)
}

/// Builds a permutation of `a` block by block.
///
/// Alternates a block of nonnegatives (largest first) that lifts the running
/// interval score `S` to at least `l`, and a block of negatives (most negative
/// first) that brings it back below `l`, clamping `S` at zero. Whatever is
/// left when one side runs out goes at the end. Every interval except the
/// last then has value at most `l + M`.
pub fn parametrized_sorting(a: &[Scalar], l: Scalar) -> Result<Sequence> {
    let m = max_element(a);
    if l < m {
        return Err(Error::contract(format!(
            "parameter L = {l} must be at least the largest nonnegative element {m}"
        )));
    }
    check_magnitude(a, &[l])?;

    let mut pos: Vec<Scalar> = a.iter().copied().filter(|&v| v >= 0).collect();
    let mut neg: Vec<Scalar> = a.iter().copied().filter(|&v| v < 0).collect();
    pos.sort_unstable_by(|u, v| v.cmp(u));
    neg.sort_unstable();

    let mut out = Vec::with_capacity(a.len());
    let (mut pi, mut ni) = (0, 0);
    let mut s: Scalar = 0;
    while pi < pos.len() && ni < neg.len() {
        while pi < pos.len() && s < l {
            s += pos[pi];
            out.push(pos[pi]);
            pi += 1;
        }
        while ni < neg.len() && s >= l {
            s += neg[ni];
            out.push(neg[ni]);
            ni += 1;
        }
        s = s.max(0);
    }
    out.extend_from_slice(&neg[ni..]);
    out.extend_from_slice(&pos[pi..]);
    Ok(Sequence::new(out))
}

/// `b(x) = score(a) + sum over a_i < -x of (-a_i - x)`, duplicates counted.
/// Whenever `x >= b(x)`, `b(x)` is a lower bound on the optimal value.
pub fn b_of(a: &[Scalar], x: Scalar) -> Result<Scalar> {
    check_magnitude(a, &[x])?;
    let overflow = Error::Overflow {
        limit: crate::seq::MAGNITUDE_LIMIT,
    };
    let total: Scalar = a.iter().sum();
    a.iter()
        .filter(|&&v| v < -x)
        .try_fold(total, |acc, &v| {
            (-v).checked_sub(x).and_then(|d| acc.checked_add(d))
        })
        .ok_or(overflow)
}

fn ceil_div(num: Scalar, den: Scalar) -> Scalar {
    num.div_euclid(den) + Scalar::from(num.rem_euclid(den) != 0)
}

/// First phase of [`approx_sorting`]: the parameter search. Since `b(OPT) <= OPT`
/// and `OPT >= l0`, the result never exceeds the optimum.
pub fn lower_bound_trace(a: &[Scalar]) -> Result<LowerBoundTrace> {
    check_magnitude(a, &[])?;
    let m = max_element(a);
    let total: Scalar = a.iter().sum();
    let l0 = m.max(total);

    let mut negs: Vec<Scalar> = a.iter().copied().filter(|&v| v < -l0).collect();
    negs.sort_unstable();
    let mut p: Vec<Scalar> = negs.iter().map(|&v| -v).collect();
    p.dedup();
    p.push(l0);

    // On the segment [p_i, p_{i-1}) the correction set is that of p_i, so
    // b(x) = C_i - c_i * x there and b(x) <= x from ceil(C_i / (c_i + 1)) on.
    // One pointer over the sorted negatives keeps the scan linear.
    let mut b_values = Vec::with_capacity(p.len());
    let mut candidates = Vec::with_capacity(p.len());
    let (mut idx, mut absorbed, mut count): (usize, Scalar, Scalar) = (0, 0, 0);
    for &pv in &p {
        while idx < negs.len() && negs[idx] < -pv {
            absorbed -= negs[idx];
            count += 1;
            idx += 1;
        }
        b_values.push(total + absorbed - count * pv);
        candidates.push(pv.max(ceil_div(total + absorbed, count + 1)));
    }

    // x - b(x) is increasing, so the lowest segment with a feasible point wins
    let chosen = (1..p.len())
        .rev()
        .find(|&i| candidates[i] < p[i - 1])
        .unwrap_or(0);
    let final_l = candidates[chosen];
    Ok(LowerBoundTrace {
        m,
        l0,
        p,
        b_values,
        chosen,
        final_l,
    })
}

/// 2-approximation for the best permutation: choose `L` by
/// [`lower_bound_trace`], then run [`parametrized_sorting`]. `O(n log n)`.
pub fn approx_sorting(a: &[Scalar]) -> Result<SortOutcome> {
    let trace = lower_bound_trace(a)?;
    let permutation = parametrized_sorting(a, trace.final_l)?;
    let value = value_of_iter(permutation.iter().copied());
    Ok(SortOutcome {
        permutation,
        value,
        parameter_l: trace.final_l,
        lower_bound: trace.final_l,
    })
}

/// Total of the last interval of `a`, i.e. `score(a)` minus the totals of all
/// earlier intervals. It bounds `f(a)` from below at least as well as
/// `score(a)` does. Zero for the empty sequence.
pub fn last_interval_lower_bound(a: &[Scalar]) -> Result<Scalar> {
    check_magnitude(a, &[])?;
    let part = partition_unchecked(a);
    let total: Scalar = a.iter().sum();
    let earlier: Scalar = part.intervals.iter().rev().skip(1).map(|iv| iv.total).sum();
    Ok(total - earlier)
}
