//! Wall-clock comparison of the linear insertion algorithm against the
//! quadratic reference.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::iss::insert_best;
use crate::oracles::naive_iss;
use crate::seq::Scalar;

pub const CSV_HEADER: &str = "n,algo,rep,micros,checksum";

/// Elements of generated instances are drawn from this range; `x` from `1..=ELEM_RANGE`.
pub const ELEM_RANGE: Scalar = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Fast,
    Naive,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Fast => "fast",
            Algo::Naive => "naive",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub algo: Algo,
    pub rep: usize,
    pub wall_time: Duration,
    /// Optimal value found; equal across algorithms for the same instance.
    pub checksum: Scalar,
}

impl BenchRecord {
    pub fn micros(&self) -> f64 {
        self.wall_time.as_secs_f64() * 1e6
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.3},{}",
            self.n,
            self.algo,
            self.rep,
            self.micros(),
            self.checksum
        )
    }
}

/// Deterministic instance for `(seed, n, rep)`: `n` elements in
/// `[-ELEM_RANGE, ELEM_RANGE]` and a positive `x`, which exercises the
/// queue-driven phase.
pub fn bench_instance(seed: u64, n: usize, rep: usize) -> (Vec<Scalar>, Scalar) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 20) ^ rep as u64);
    let a = (0..n)
        .map(|_| rng.gen_range(-ELEM_RANGE..=ELEM_RANGE))
        .collect();
    let x = rng.gen_range(1..=ELEM_RANGE);
    (a, x)
}

/// Times one call of `algo` on `(a, x)`.
pub fn time_once(algo: Algo, a: &[Scalar], x: Scalar) -> Result<(Duration, Scalar)> {
    let start = Instant::now();
    let value = match algo {
        Algo::Fast => black_box(insert_best(black_box(a), x)?).value,
        Algo::Naive => black_box(naive_iss(black_box(a), x)?).best_value,
    };
    // clamp so a record never reports zero time on coarse clocks
    let elapsed = start.elapsed().max(Duration::from_nanos(1));
    Ok((elapsed, value))
}

#[derive(Debug, Clone, Default)]
pub struct BenchSummary {
    pub records: Vec<BenchRecord>,
    /// `(n, rep)` pairs where the algorithms disagreed.
    pub mismatches: Vec<(usize, usize)>,
}

/// Runs every algorithm on `reps` instances per size, streaming each record
/// to `sink` as it is produced.
pub fn run_bench<F>(
    sizes: &[usize],
    reps: usize,
    seed: u64,
    algos: &[Algo],
    mut sink: F,
) -> Result<BenchSummary>
where
    F: FnMut(&BenchRecord),
{
    if sizes.contains(&0) {
        return Err(Error::contract("bench sizes must be positive"));
    }
    let mut summary = BenchSummary::default();
    for &n in sizes {
        for rep in 0..reps {
            let (a, x) = bench_instance(seed, n, rep);
            let mut seen: Option<Scalar> = None;
            for &algo in algos {
                let (wall_time, checksum) = time_once(algo, &a, x)?;
                let rec = BenchRecord {
                    n,
                    algo,
                    rep,
                    wall_time,
                    checksum,
                };
                sink(&rec);
                summary.records.push(rec);
                match seen {
                    Some(c) if c != checksum => summary.mismatches.push((n, rep)),
                    _ => seen = Some(checksum),
                }
            }
        }
    }
    Ok(summary)
}

/// Median wall time in microseconds over the records of `(n, algo)`.
pub fn median_micros(records: &[BenchRecord], n: usize, algo: Algo) -> Option<f64> {
    let mut t: Vec<f64> = records
        .iter()
        .filter(|r| r.n == n && r.algo == algo)
        .map(BenchRecord::micros)
        .collect();
    if t.is_empty() {
        return None;
    }
    t.sort_by(f64::total_cmp);
    let mid = t.len() / 2;
    Some(if t.len() % 2 == 1 {
        t[mid]
    } else {
        (t[mid - 1] + t[mid]) / 2.0
    })
}
