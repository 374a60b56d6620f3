//! Command-line front end over `seqscore`.
//!
//! Every subcommand reads instances line by line, writes one result line per
//! instance in input order, and reports per-line problems on the error
//! stream without stopping. Exit status: [`EXIT_OK`], [`EXIT_MISMATCH`] when
//! a cross-check between a fast algorithm and its oracle fails, or
//! [`EXIT_INPUT`] when any input line (or the command line) was rejected.

use std::error::Error as StdError;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seqscore::bench::{run_bench, Algo, CSV_HEADER};
use seqscore::format::{parse_line, to_json_line, to_plain_line, Record};
use seqscore::oracles::{exact_sss_with_limit, naive_iss, DEFAULT_SSS_LIMIT};
use seqscore::seq::max_prefix_score;
use seqscore::sss::{
    approx_sorting, gen_3partition_instance, max_element, random_sequence, random_yes_3partition,
    rng_from_seed, tightness_family,
};
use seqscore::{
    insert_best, last_interval_lower_bound, minimal_mss, partition_into_intervals, Error, Scalar,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "seqscore",
    version,
    about = "Minimize the maximum contiguous sum of a sequence by insertion or reordering"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Instance file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Write one JSON object per result instead of key=value text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InsertMode {
    Fast,
    Naive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortMode {
    Approx,
    Exact,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Fast,
    Naive,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value, minimal witness and interval count of each sequence.
    Mss {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Best position for inserting `x` (given as `x=K;` or a "x" field).
    Insert {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value_t = InsertMode::Fast)]
        mode: InsertMode,
    },
    /// Reorder each sequence to make its value small.
    Sort {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value_t = SortMode::Approx)]
        mode: SortMode,
        /// Longest sequence handed to the exact solver.
        #[arg(long, default_value_t = DEFAULT_SSS_LIMIT)]
        limit: usize,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write JSON lines instead of plain lines.
        #[arg(long, global = true)]
        json: bool,
    },
    /// Time fast and naive insertion; CSV on standard output.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchMode::Both)]
        mode: BenchMode,
    },
    /// Buffer analysis of a message trace: one `<delta> [label]` per line,
    /// or JSON lines `{"delta": D, "label": "..."}`.
    Trace {
        #[command(flatten)]
        io: InputArgs,
        /// Longest trace for which the exact reordering optimum is computed.
        #[arg(long, default_value_t = DEFAULT_SSS_LIMIT)]
        limit: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Uniform random sequences.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lo: Scalar,
        #[arg(long, allow_hyphen_values = true)]
        hi: Scalar,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Also draw an insertion value `x` from the same range.
        #[arg(long)]
        with_x: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// 3-Partition reduction: explicit `--items`, or a random yes-instance
    /// with `--k` triples.
    Threepartition {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        items: Option<Vec<Scalar>>,
        #[arg(long)]
        s: Scalar,
        #[arg(long, conflicts_with = "items")]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// `<y, -x, y, -x, x>`, on which the factor 2 is nearly attained.
    Tightness {
        #[arg(long)]
        x: Scalar,
        #[arg(long)]
        y: Scalar,
    },
}

type Fatal = Box<dyn StdError>;

#[derive(Debug, Default, Clone, Copy)]
struct Status {
    input_error: bool,
    mismatch: bool,
}

impl Status {
    fn code(self) -> u8 {
        if self.input_error {
            EXIT_INPUT
        } else if self.mismatch {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        }
    }
}

/// Runs `cli`, reading `-` inputs from `stdin`. Returns the exit status.
pub fn run(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut status = Status::default();
    let result = dispatch(cli.command, stdin, out, err, &mut status);
    match result {
        Ok(()) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(
    command: Command,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    status: &mut Status,
) -> Result<(), Fatal> {
    match command {
        Command::Mss { io } => {
            let json = io.json;
            with_input(&io.input, stdin, |src| {
                each_record(src, out, err, status, |rec, _| cmd_mss(rec, json))
            })
        }
        Command::Insert { io, mode } => {
            let json = io.json;
            with_input(&io.input, stdin, |src| {
                each_record(src, out, err, status, |rec, st| {
                    cmd_insert(rec, mode, json, st)
                })
            })
        }
        Command::Sort { io, mode, limit } => {
            let json = io.json;
            with_input(&io.input, stdin, |src| {
                each_record(src, out, err, status, |rec, st| {
                    cmd_sort(rec, mode, limit, json, st)
                })
            })
        }
        Command::Gen { kind, json } => cmd_gen(kind, json, out),
        Command::Bench {
            sizes,
            reps,
            seed,
            mode,
        } => cmd_bench(&sizes, reps, seed, mode, out, err, status),
        Command::Trace { io, limit } => with_input(&io.input, stdin, |src| {
            cmd_trace(src, io.json, limit, out, err, status)
        }),
    }
}

fn with_input<T>(
    path: &str,
    stdin: &mut dyn BufRead,
    f: impl FnOnce(&mut dyn BufRead) -> Result<T, Fatal>,
) -> Result<T, Fatal> {
    if path == "-" {
        f(stdin)
    } else {
        let file = File::open(path).map_err(|e| format!("cannot open {path}: {e}"))?;
        f(&mut BufReader::new(file))
    }
}

fn report(err: &mut dyn Write, status: &mut Status, line: usize, e: &Error) -> io::Result<()> {
    status.input_error = true;
    match e {
        Error::Parse { .. } => writeln!(err, "error: {e}"),
        _ => writeln!(err, "error: line {line}: {e}"),
    }
}

/// Feeds every instance line to `handle` and prints its result line.
fn each_record(
    src: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    status: &mut Status,
    mut handle: impl FnMut(&Record, &mut Status) -> Result<String, Error>,
) -> Result<(), Fatal> {
    for (i, text) in src.lines().enumerate() {
        let line = i + 1;
        let text = text?;
        let result = parse_line(&text, line).and_then(|rec| match rec {
            Some(rec) => handle(&rec, status).map(Some),
            None => Ok(None),
        });
        match result {
            Ok(Some(row)) => writeln!(out, "{row}")?,
            Ok(None) => {}
            Err(e) => report(err, status, line, &e)?,
        }
    }
    Ok(())
}

fn csv(a: &[Scalar]) -> String {
    a.iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_mss(rec: &Record, json: bool) -> Result<String, Error> {
    let (span, value) = minimal_mss(&rec.seq)?;
    let part = partition_into_intervals(&rec.seq)?;
    Ok(if json {
        json!({
            "line": rec.line,
            "value": value,
            "span": [span.start, span.end],
            "intervals": part.len(),
            "boundaries": part.boundaries(),
        })
        .to_string()
    } else {
        format!("value={value} span={span} intervals={}", part.len())
    })
}

fn cmd_insert(
    rec: &Record,
    mode: InsertMode,
    json: bool,
    status: &mut Status,
) -> Result<String, Error> {
    let x = rec.x.ok_or_else(|| Error::Parse {
        line: rec.line,
        field: 1,
        message: "missing x (write `x=K;` before the sequence or add an \"x\" field)".into(),
    })?;
    let fast = match mode {
        InsertMode::Naive => None,
        _ => Some(insert_best(&rec.seq, x)?),
    };
    let naive = match mode {
        InsertMode::Fast => None,
        _ => Some(naive_iss(&rec.seq, x)?),
    };
    let mut obj = serde_json::Map::new();
    obj.insert("line".into(), rec.line.into());
    let mut text = Vec::new();
    match (&fast, &naive) {
        (Some(f), _) => {
            obj.insert("index".into(), f.index.into());
            obj.insert("value".into(), f.value.into());
            text.push(format!("index={} value={}", f.index, f.value));
        }
        (None, Some(n)) => {
            obj.insert("index".into(), n.witnesses[0].into());
            obj.insert("value".into(), n.best_value.into());
            text.push(format!("index={} value={}", n.witnesses[0], n.best_value));
        }
        (None, None) => unreachable!("every mode runs at least one algorithm"),
    }
    if let Some(n) = &naive {
        if fast.is_some() {
            obj.insert("naive_value".into(), n.best_value.into());
            text.push(format!("naive_value={}", n.best_value));
        }
        obj.insert("naive_witnesses".into(), json!(n.witnesses));
        text.push(format!(
            "naive_witnesses={}",
            n.witnesses
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    if let (Some(f), Some(n)) = (&fast, &naive) {
        let agree = f.value == n.best_value && n.witnesses.contains(&f.index);
        status.mismatch |= !agree;
        obj.insert("agreement".into(), agree.into());
        text.push(format!("agreement={agree}"));
    }
    Ok(if json {
        Value::Object(obj).to_string()
    } else {
        text.join(" ")
    })
}

fn cmd_sort(
    rec: &Record,
    mode: SortMode,
    limit: usize,
    json: bool,
    status: &mut Status,
) -> Result<String, Error> {
    let a = rec.seq.as_slice();
    let approx = match mode {
        SortMode::Exact => None,
        _ => Some(approx_sorting(a)?),
    };
    let exact = match mode {
        SortMode::Approx => None,
        _ => Some(exact_sss_with_limit(a, limit)?),
    };
    let mut obj = serde_json::Map::new();
    obj.insert("line".into(), rec.line.into());
    let mut text = Vec::new();
    if let Some(ap) = &approx {
        let last = last_interval_lower_bound(&ap.permutation)?;
        obj.insert("value".into(), ap.value.into());
        obj.insert("L".into(), ap.parameter_l.into());
        obj.insert("lower_bound".into(), ap.lower_bound.into());
        obj.insert("last_interval_bound".into(), last.into());
        text.push(format!(
            "value={} L={} lower_bound={} last_interval_bound={last}",
            ap.value, ap.parameter_l, ap.lower_bound
        ));
    }
    if let Some(ex) = &exact {
        obj.insert("opt".into(), ex.best_value.into());
        text.push(format!("opt={}", ex.best_value));
    }
    if let (Some(ap), Some(ex)) = (&approx, &exact) {
        let opt = ex.best_value;
        let ratio = if opt == 0 {
            1.0
        } else {
            ap.value as f64 / opt as f64
        };
        let ok = ap.value <= 2 * opt && ap.value <= opt + max_element(a) && ap.lower_bound <= opt;
        status.mismatch |= !ok;
        obj.insert("ratio".into(), ratio.into());
        obj.insert("bounds_ok".into(), ok.into());
        text.push(format!("ratio={ratio:.4} bounds_ok={ok}"));
    }
    let perm = match (&approx, &exact) {
        (Some(ap), _) => ap.permutation.as_slice(),
        (None, Some(ex)) => ex.witnesses[0].as_slice(),
        (None, None) => unreachable!("every mode runs at least one algorithm"),
    };
    obj.insert("perm".into(), json!(perm));
    text.push(format!("perm={}", csv(perm)));
    Ok(if json {
        Value::Object(obj).to_string()
    } else {
        text.join(" ")
    })
}

fn cmd_gen(kind: GenKind, json: bool, out: &mut dyn Write) -> Result<(), Fatal> {
    let mut emit = |seq: &[Scalar], x: Option<Scalar>| -> io::Result<()> {
        let row = if json {
            to_json_line(seq, x)
        } else {
            to_plain_line(seq, x)
        };
        writeln!(out, "{row}")
    };
    match kind {
        GenKind::Random {
            n,
            lo,
            hi,
            count,
            with_x,
            seed,
        } => {
            let mut rng = rng_from_seed(seed);
            for _ in 0..count {
                let seq = random_sequence(&mut rng, n, lo, hi)?;
                let x = if with_x {
                    Some(random_sequence(&mut rng, 1, lo, hi)?[0])
                } else {
                    None
                };
                emit(&seq, x)?;
            }
        }
        GenKind::Threepartition {
            items,
            s,
            k,
            count,
            seed,
        } => match (items, k) {
            (Some(items), _) => emit(&gen_3partition_instance(&items, s)?, None)?,
            (None, Some(k)) => {
                let mut rng = rng_from_seed(seed);
                for _ in 0..count {
                    let items = random_yes_3partition(&mut rng, k, s)?;
                    emit(&gen_3partition_instance(&items, s)?, None)?;
                }
            }
            (None, None) => return Err("threepartition needs --items or --k".into()),
        },
        GenKind::Tightness { x, y } => emit(&tightness_family(x, y)?, None)?,
    }
    Ok(())
}

fn cmd_bench(
    sizes: &[usize],
    reps: usize,
    seed: u64,
    mode: BenchMode,
    out: &mut dyn Write,
    err: &mut dyn Write,
    status: &mut Status,
) -> Result<(), Fatal> {
    let algos: &[Algo] = match mode {
        BenchMode::Fast => &[Algo::Fast],
        BenchMode::Naive => &[Algo::Naive],
        BenchMode::Both => &[Algo::Fast, Algo::Naive],
    };
    writeln!(out, "{CSV_HEADER}")?;
    let mut write_err: Option<io::Error> = None;
    let summary = run_bench(sizes, reps, seed, algos, |rec| {
        if write_err.is_none() {
            if let Err(e) = writeln!(out, "{}", rec.csv_row()) {
                write_err = Some(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    for (n, rep) in &summary.mismatches {
        writeln!(
            err,
            "mismatch: n={n} rep={rep}: fast and naive values differ"
        )?;
    }
    status.mismatch |= !summary.mismatches.is_empty();
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub delta: Scalar,
    pub label: Option<String>,
}

/// One trace line: `<delta> [label]` or `{"delta": D, "label": "..."}`.
/// Blank lines and `#` comments yield `None`.
pub fn parse_trace_line(text: &str, line: usize) -> Result<Option<TraceEvent>, Error> {
    let t = text.trim();
    if t.is_empty() || t.starts_with('#') {
        return Ok(None);
    }
    let bad = |field: usize, message: String| Error::Parse {
        line,
        field,
        message,
    };
    if t.starts_with('{') {
        let v: Value =
            serde_json::from_str(t).map_err(|e| bad(e.column(), format!("invalid JSON: {e}")))?;
        let delta = v
            .get("delta")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad(1, "expected an integer \"delta\"".into()))?;
        let label = match v.get("label") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => Some(other.to_string()),
        };
        return Ok(Some(TraceEvent { delta, label }));
    }
    let (head, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
    let delta = head
        .parse::<Scalar>()
        .map_err(|_| bad(1, format!("expected an integer delta, found {head:?}")))?;
    let rest = rest.trim();
    Ok(Some(TraceEvent {
        delta,
        label: (!rest.is_empty()).then(|| rest.to_string()),
    }))
}

fn cmd_trace(
    src: &mut dyn BufRead,
    json: bool,
    limit: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
    status: &mut Status,
) -> Result<(), Fatal> {
    let mut events = Vec::new();
    for (i, text) in src.lines().enumerate() {
        match parse_trace_line(&text?, i + 1) {
            Ok(Some(ev)) => events.push(ev),
            Ok(None) => {}
            Err(e) => report(err, status, i + 1, &e)?,
        }
    }
    if status.input_error {
        return Ok(());
    }
    let deltas: Vec<Scalar> = events.iter().map(|e| e.delta).collect();
    let report_err = |e: Error| -> Fatal { format!("trace rejected: {e}").into() };
    let peak = max_prefix_score(&deltas).map_err(report_err)?;
    let (span, burst) = minimal_mss(&deltas).map_err(report_err)?;
    let last = last_interval_lower_bound(&deltas).map_err(report_err)?;
    let approx = approx_sorting(&deltas).map_err(report_err)?;
    let opt = (deltas.len() <= limit)
        .then(|| exact_sss_with_limit(&deltas, limit).map(|r| r.best_value))
        .transpose()
        .map_err(report_err)?;

    // map the reordered deltas back to events, equal deltas in input order
    let mut used = vec![false; events.len()];
    let reordered: Vec<&TraceEvent> = approx
        .permutation
        .iter()
        .map(|&d| {
            let i = (0..events.len())
                .find(|&i| !used[i] && events[i].delta == d)
                .expect("the reordering is a permutation of the deltas");
            used[i] = true;
            &events[i]
        })
        .collect();

    if json {
        let reorder: Vec<Value> = reordered
            .iter()
            .map(|e| json!({"delta": e.delta, "label": e.label}))
            .collect();
        let obj = json!({
            "events": events.len(),
            "peak_from_empty": peak,
            "burst": burst,
            "burst_span": [span.start, span.end],
            "last_interval_bound": last,
            "reorder_value": approx.value,
            "reorder_lower_bound": approx.lower_bound,
            "reorder_opt": opt,
            "reorder": reorder,
        });
        writeln!(out, "{obj}")?;
    } else {
        writeln!(out, "events={}", events.len())?;
        writeln!(out, "peak_from_empty={peak}")?;
        writeln!(out, "burst={burst} span={span}")?;
        writeln!(out, "last_interval_bound={last}")?;
        writeln!(out, "reorder_value={}", approx.value)?;
        writeln!(out, "reorder_lower_bound={}", approx.lower_bound)?;
        match opt {
            Some(v) => writeln!(out, "reorder_opt={v}")?,
            None => writeln!(out, "reorder_opt=skipped (more than {limit} events)")?,
        }
        for e in reordered {
            match &e.label {
                Some(l) => writeln!(out, "{} {l}", e.delta)?,
                None => writeln!(out, "{}", e.delta)?,
            }
        }
    }
    Ok(())
}
