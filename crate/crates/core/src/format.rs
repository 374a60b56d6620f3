//! Line-oriented instance I/O.
//!
//! One instance per line, in one of three shapes (detected per line):
//!
//! * plain: integers separated by whitespace and/or commas, optionally
//!   prefixed by `x=K;` for insertion instances, e.g. `x=-4; 5 -1 5`;
//! * a JSON array of integers, e.g. `[5,-1,5]`;
//! * a JSON object `{"seq": [...], "x": K}` with `x` optional.
//!
//! Blank lines are empty sequences. Lines whose first non-blank character is
//! `#` are comments. Errors carry the 1-based line and field of the offense.

use std::io::BufRead;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::seq::{Scalar, Sequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based source line.
    pub line: usize,
    pub seq: Sequence,
    pub x: Option<Scalar>,
}

fn parse_err(line: usize, field: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field,
        message: message.into(),
    }
}

fn parse_int(tok: &str, line: usize, field: usize) -> Result<Scalar> {
    tok.parse::<Scalar>()
        .map_err(|_| parse_err(line, field, format!("expected an integer, found {tok:?}")))
}

/// Parses one line; `Ok(None)` for comments.
pub fn parse_line(text: &str, line: usize) -> Result<Option<Record>> {
    let trimmed = text.trim();
    if trimmed.starts_with('#') {
        return Ok(None);
    }
    let (seq, x) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        parse_json(trimmed, line)?
    } else {
        parse_plain(trimmed, line)?
    };
    Ok(Some(Record { line, seq, x }))
}

fn parse_plain(text: &str, line: usize) -> Result<(Sequence, Option<Scalar>)> {
    let mut field = 0;
    let (x, body) = match text.strip_prefix("x=") {
        Some(rest) => {
            let Some((xs, body)) = rest.split_once(';') else {
                return Err(parse_err(line, 1, "missing ';' after x=K"));
            };
            field += 1;
            (Some(parse_int(xs.trim(), line, field)?), body)
        }
        None => (None, text),
    };
    let mut elems = Vec::new();
    for tok in body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        field += 1;
        elems.push(parse_int(tok, line, field)?);
    }
    Ok((Sequence::new(elems), x))
}

fn json_int(v: &Value, line: usize, field: usize) -> Result<Scalar> {
    v.as_i64()
        .ok_or_else(|| parse_err(line, field, format!("expected an integer, found {v}")))
}

fn json_seq(v: &Value, line: usize) -> Result<Sequence> {
    let Value::Array(items) = v else {
        return Err(parse_err(line, 1, "expected a JSON array of integers"));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| json_int(item, line, i + 1))
        .collect()
}

fn parse_json(text: &str, line: usize) -> Result<(Sequence, Option<Scalar>)> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(line, e.column(), format!("invalid JSON: {e}")))?;
    match &value {
        Value::Array(_) => Ok((json_seq(&value, line)?, None)),
        Value::Object(obj) => {
            let seq = obj
                .get("seq")
                .ok_or_else(|| parse_err(line, 1, "missing \"seq\""))
                .and_then(|s| json_seq(s, line))?;
            let x = obj.get("x").map(|v| json_int(v, line, 0)).transpose()?;
            Ok((seq, x))
        }
        _ => Err(parse_err(line, 1, "expected a JSON array or object")),
    }
}

/// Reads every record from `reader`, stopping at the first error.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, text) in reader.lines().enumerate() {
        let text = text.map_err(|e| parse_err(i + 1, 0, e.to_string()))?;
        if let Some(rec) = parse_line(&text, i + 1)? {
            out.push(rec);
        }
    }
    Ok(out)
}

/// Plain line: `x=K; a1 a2 ...` or just `a1 a2 ...`.
pub fn to_plain_line(seq: &[Scalar], x: Option<Scalar>) -> String {
    let body = Sequence::from(seq).to_string();
    match x {
        Some(x) if body.is_empty() => format!("x={x};"),
        Some(x) => format!("x={x}; {body}"),
        None => body,
    }
}

/// JSONL line: `{"seq":[...]}` with `"x"` when present.
pub fn to_json_line(seq: &[Scalar], x: Option<Scalar>) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("seq".into(), Value::from(seq.to_vec()));
    if let Some(x) = x {
        obj.insert("x".into(), Value::from(x));
    }
    Value::Object(obj).to_string()
}
