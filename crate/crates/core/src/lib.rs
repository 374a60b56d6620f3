//! Maximum contiguous-sum ("value") computations over integer sequences.
//!
//! The crate provides:
//!
//! * [`seq`]: Kadane's algorithm, minimal maximum-scoring subsequences and the
//!   partition of a sequence into intervals.
//! * [`iss`]: linear-time optimal insertion of one element so that the value
//!   of the resulting sequence is as small as possible.
//! * [`sss`]: a 2-approximation for permuting a sequence to minimize its value,
//!   plus the lower bounds and instance families that go with it.
//! * [`oracles`]: quadratic / exhaustive references used to check the above.
//! * [`format`] and [`bench`]: text/JSONL I/O and a small timing harness.
//!
//! All arithmetic is on exact `i64` scalars. Every public operation first
//! checks that the absolute mass of its input fits comfortably in range and
//! returns [`Error::Overflow`] otherwise, so sums never wrap.

pub mod bench;
pub mod error;
pub mod format;
pub mod iss;
pub mod oracles;
pub mod seq;
pub mod sss;

pub use error::{Error, Result};
pub use iss::{
    apply_insertion, insert_best, insert_best_negative, insert_best_positive, InsertionOutcome,
};
pub use seq::{
    max_scoring_subsequence, minimal_mss, partition_into_intervals, score, value, Interval,
    IntervalPartition, Scalar, Sequence, SubseqRef,
};
pub use sss::{approx_sorting, b_of, last_interval_lower_bound, parametrized_sorting, SortOutcome};
