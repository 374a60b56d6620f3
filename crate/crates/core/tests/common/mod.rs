//! Independent checkers shared by the property and acceptance suites. Each
//! returns `Err(description)` on the first violated property.

#![allow(dead_code)]

use rand::Rng;
use seqscore::iss::run_positive_phases;
use seqscore::oracles::exact_sss;
use seqscore::sss::{b_of, max_element, parametrized_sorting};
use seqscore::{insert_best, minimal_mss, partition_into_intervals, Scalar};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn sum(a: &[Scalar]) -> Scalar {
    a.iter().sum()
}

/// `f` by trying every `(i, j)`.
pub fn brute_value(a: &[Scalar]) -> Scalar {
    let mut best = 0;
    for i in 0..=a.len() {
        let mut s = 0;
        for &v in &a[i..] {
            s += v;
            best = best.max(s);
        }
    }
    best
}

pub fn with_insertion(a: &[Scalar], x: Scalar, p: usize) -> Vec<Scalar> {
    let mut b = a.to_vec();
    b.insert(p, x);
    b
}

/// Interval totals by the definition: cut whenever the running sum of the
/// current block turns negative.
pub fn interval_totals(a: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut s = 0;
    for (j, &v) in a.iter().enumerate() {
        s += v;
        if s < 0 || j + 1 == a.len() {
            out.push(s);
            s = 0;
        }
    }
    out
}

pub fn sorted(a: &[Scalar]) -> Vec<Scalar> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v
}

pub fn random_vec<R: Rng>(rng: &mut R, max_len: usize, lo: Scalar, hi: Scalar) -> Vec<Scalar> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Prefixes and suffixes of the minimal MSS are nonnegative; material just
/// outside it cannot extend it profitably; minimality holds.
pub fn mss_boundary_signs(a: &[Scalar]) -> Check {
    let (r, v) = minimal_mss(a).unwrap();
    let (i, j) = (r.start, r.end);
    ensure!(
        v == brute_value(a),
        "minimal_mss value {v} != f(a) for {a:?}"
    );
    ensure!(sum(&a[i..j]) == v, "witness score mismatch for {a:?}");
    for t in i..=j {
        ensure!(sum(&a[i..t]) >= 0, "negative prefix of MSS in {a:?}");
        ensure!(sum(&a[t..j]) >= 0, "negative suffix of MSS in {a:?}");
        if t > i && t < j {
            ensure!(
                sum(&a[i..t]) != 0 && sum(&a[t..j]) != 0,
                "MSS [{i},{j}) of {a:?} is not minimal"
            );
        }
    }
    for t in 0..=i {
        ensure!(sum(&a[t..i]) <= 0, "positive suffix before MSS in {a:?}");
    }
    for t in j..=a.len() {
        ensure!(sum(&a[j..t]) <= 0, "positive prefix after MSS in {a:?}");
    }
    Ok(())
}

/// Interval structure: coverage, signs, per-interval value is a prefix
/// maximum, and the largest interval value is `f(a)`.
pub fn interval_structure(a: &[Scalar]) -> Check {
    let p = partition_into_intervals(a).unwrap();
    let mut glued = Vec::new();
    let mut expected_start = 0;
    for (k, iv) in p.intervals.iter().enumerate() {
        let (s, e) = (iv.bounds.start, iv.bounds.end);
        ensure!(
            s == expected_start && s < e,
            "intervals not contiguous in {a:?}"
        );
        expected_start = e;
        glued.extend_from_slice(&a[s..e]);
        let last = k + 1 == p.len();
        ensure!(iv.total == sum(&a[s..e]), "interval total wrong in {a:?}");
        ensure!(
            last || iv.total < 0,
            "non-final interval with total >= 0 in {a:?}"
        );
        for t in s..e {
            ensure!(sum(&a[s..t]) >= 0, "negative proper prefix in {a:?}");
        }
        let prefix_max = (s..=e).map(|t| sum(&a[s..t])).max().unwrap();
        ensure!(
            iv.best == brute_value(&a[s..e]),
            "interval value wrong in {a:?}"
        );
        ensure!(
            iv.best == prefix_max,
            "interval value is not a prefix max in {a:?}"
        );
        ensure!(
            sum(&a[s..iv.best_prefix_end]) == iv.best,
            "best_prefix_end misplaced in {a:?}"
        );
        ensure!(
            iv.best >= 0 && iv.best >= iv.total,
            "interval best bounds in {a:?}"
        );
    }
    ensure!(
        expected_start == a.len(),
        "partition does not reach n in {a:?}"
    );
    ensure!(glued == a, "concatenation differs from input {a:?}");
    ensure!(
        p.value() == brute_value(a),
        "max interval value != f(a) for {a:?}"
    );
    ensure!(
        p.neg_scores() == interval_totals(a),
        "totals disagree with definition for {a:?}"
    );
    Ok(())
}

/// Trimming a zero-score prefix or suffix from a maximum scoring subsequence
/// of an interval leaves a maximum scoring subsequence of that interval.
pub fn zero_trim_keeps_optimum(a: &[Scalar]) -> Check {
    let p = partition_into_intervals(a).unwrap();
    for iv in &p.intervals {
        let seg = &a[iv.bounds.start..iv.bounds.end];
        let f = brute_value(seg);
        for i in 0..=seg.len() {
            for j in i..=seg.len() {
                if sum(&seg[i..j]) != f {
                    continue;
                }
                for t in i..=j {
                    if sum(&seg[i..t]) == 0 {
                        ensure!(sum(&seg[t..j]) == f, "prefix trim broke MSS in {seg:?}");
                    }
                    if sum(&seg[t..j]) == 0 {
                        ensure!(sum(&seg[i..t]) == f, "suffix trim broke MSS in {seg:?}");
                    }
                }
            }
        }
    }
    Ok(())
}

/// Scores inside the interval holding `p` shift by exactly `x` after `p`.
pub fn insertion_shifts_interval_scores(a: &[Scalar], x: Scalar) -> Check {
    let part = partition_into_intervals(a).unwrap();
    for iv in &part.intervals {
        let (ik, jk) = (iv.bounds.start, iv.bounds.end);
        for p in ik..jk {
            let b = with_insertion(a, x, p);
            for q in p + 1..=jk + 1 {
                ensure!(
                    sum(&b[ik..q]) == sum(&a[ik..q - 1]) + x,
                    "score shift fails for a={a:?} x={x} p={p} q={q}"
                );
            }
        }
    }
    Ok(())
}

/// For `x > 0`: inserting at the end of `I_k` produces an extended interval
/// that absorbs `I_k'` exactly when `x + total(I_k..I_k'-1) >= 0`, and on an
/// absorbed `I_k'` the prefix curve is the curve of `I_k'` lifted by that
/// amount.
pub fn extended_interval_absorption(a: &[Scalar], x: Scalar) -> Check {
    let mut a0 = a.to_vec();
    a0.push(0);
    let part = partition_into_intervals(&a0).unwrap();
    let ivs = &part.intervals;
    for k in 0..ivs.len() {
        let ik = ivs[k].bounds.start;
        let p = ivs[k].bounds.end - 1;
        let b = with_insertion(&a0, x, p);
        // end of the extended interval in b
        let mut end = b.len();
        let mut run = 0;
        for (q, &v) in b.iter().enumerate().skip(ik) {
            run += v;
            if run < 0 {
                end = q + 1;
                break;
            }
        }
        let mut lift = x;
        for kk in k + 1..ivs.len() {
            lift += ivs[kk - 1].total;
            let (s, e) = (ivs[kk].bounds.start + 1, ivs[kk].bounds.end + 1);
            let contained = s >= ik && e <= end;
            ensure!(
                contained == (lift >= 0),
                "absorption fails: a={a:?} x={x} k={k} k'={kk} lift={lift}"
            );
            if !contained {
                continue;
            }
            for jp in 0..=(e - s) {
                ensure!(
                    sum(&b[ik..s + jp]) == lift + sum(&b[s..s + jp]),
                    "lifted curve fails: a={a:?} x={x} k={k} k'={kk} j'={jp}"
                );
            }
        }
    }
    Ok(())
}

/// Value of the extended interval of `k'` restricted to intervals before
/// `k`, recomputed from scratch.
fn truncated_extended_value(
    a0: &[Scalar],
    bounds: &[(usize, usize)],
    x: Scalar,
    kp: usize,
    k: usize,
) -> Scalar {
    let (ikp, jkp) = bounds[kp];
    let stop = bounds[k - 1].1;
    let mut seg = a0[ikp..stop].to_vec();
    seg.insert(jkp - 1 - ikp, x);
    let (mut run, mut best) = (0, 0);
    for v in seg {
        run += v;
        if run < 0 {
            break;
        }
        best = best.max(run);
    }
    best
}

/// Replays the queue phase and checks, at the top of every iteration, the
/// rear's stored score, queue ordering and optimality of the rear against a
/// quadratic recomputation. Also checks the final answer.
pub fn queue_discipline(a: &[Scalar], x: Scalar) -> Check {
    let mut a0 = a.to_vec();
    a0.push(0);
    let mut failure: Option<String> = None;
    let mut iterations = 0;
    let (arrays, best) = run_positive_phases(a, x, |k, arr| {
        iterations += 1;
        if failure.is_some() {
            return;
        }
        let bounds: Vec<(usize, usize)> = arr
            .intervals
            .iter()
            .map(|iv| (iv.bounds.start, iv.bounds.end))
            .collect();
        let tv: Vec<Scalar> = (0..k)
            .map(|kp| truncated_extended_value(&a0, &bounds, x, kp, k))
            .collect();
        let rear = *arr.queue.last().unwrap();
        let check = || -> Check {
            ensure!(
                arr.extscr[rear] == tv[rear],
                "rear {rear} stores {} but truncated value is {} (k={k})",
                arr.extscr[rear],
                tv[rear]
            );
            for w in arr.queue.windows(2) {
                ensure!(w[0] < w[1], "queue not increasing in index at k={k}");
                ensure!(
                    arr.extscr[w[0]] > arr.extscr[w[1]],
                    "stored scores not strictly decreasing front to rear at k={k}"
                );
            }
            for &q in &arr.queue[..arr.queue.len() - 1] {
                ensure!(
                    tv[rear] < tv[q],
                    "queued {q} not beaten by rear {rear} at k={k}"
                );
            }
            for (kp, &v) in tv.iter().enumerate() {
                ensure!(tv[rear] <= v, "rear {rear} not minimal vs {kp} at k={k}");
            }
            Ok(())
        };
        if let Err(e) = check() {
            failure = Some(format!("{e}; a={a:?} x={x}"));
        }
    })
    .unwrap();
    if let Some(e) = failure {
        return Err(e);
    }
    ensure!(
        iterations + 1 == arrays.len().max(1),
        "observer skipped iterations"
    );
    let out = arrays.outcome(best);
    let b = with_insertion(a, x, out.index);
    ensure!(
        brute_value(&b) == out.value,
        "reported value is not f of the result for a={a:?} x={x}"
    );
    Ok(())
}

/// Inserting a nonpositive value never raises `f`; a nonnegative value never
/// lowers it and the result is at least `x`.
pub fn insertion_monotonicity(a: &[Scalar], x: Scalar) -> Check {
    let f = brute_value(a);
    let got = insert_best(a, x).unwrap();
    ensure!(
        brute_value(&with_insertion(a, x, got.index)) == got.value,
        "value not reproduced for a={a:?} x={x}"
    );
    if x <= 0 {
        ensure!(got.value <= f, "x={x} raised the value of {a:?}");
    }
    if x >= 0 {
        ensure!(
            got.value >= f && got.value >= x,
            "x={x} lowered the value of {a:?}"
        );
    }
    Ok(())
}

/// The block builder's output is a rearrangement bounded by
/// `max(L + M, total of its last interval)`.
pub fn block_builder_envelope(a: &[Scalar], l: Scalar) -> Check {
    let out = parametrized_sorting(a, l).unwrap();
    ensure!(
        sorted(&out) == sorted(a),
        "not a rearrangement: {a:?} -> {out:?}"
    );
    let m = max_element(a);
    let totals = interval_totals(&out);
    let last = totals.last().copied().unwrap_or(0);
    ensure!(
        last == sum(a) - sum(&totals[..totals.len().saturating_sub(1)]),
        "last interval total inconsistent"
    );
    let f = brute_value(&out);
    ensure!(
        f <= (l + m).max(last),
        "f={f} exceeds max(L+M={}, last={last}) for a={a:?} L={l}",
        l + m
    );
    Ok(())
}

/// `x >= b(x)` certifies `b(x) <= OPT` for every `x` in a covering range.
pub fn b_certificate(a: &[Scalar], opt: Scalar) -> Check {
    let span = a.iter().map(|v| v.abs()).max().unwrap_or(0) + 2;
    for x in -span..=span {
        let b = b_of(a, x).unwrap();
        if x >= b {
            ensure!(b <= opt, "b({x}) = {b} > OPT = {opt} for {a:?}");
        }
    }
    Ok(())
}

pub fn exact_opt(a: &[Scalar]) -> Scalar {
    exact_sss(a).unwrap().best_value
}
