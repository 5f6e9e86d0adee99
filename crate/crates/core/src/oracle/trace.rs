use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One heap operation. Ordinals count `Insert`s in textual order from 0,
/// nested union blocks included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOp {
    Insert(i64),
    ExtractMin,
    DecreaseKey {
        ordinal: u64,
        key: i64,
    },
    Delete(u64),
    /// Build a second heap from the nested trace, then merge it in.
    Union(OpTrace),
}

/// Replayable operation sequence.
///
/// Text form, one op per line: `i <key>`, `x`, `d <ordinal> <key>`,
/// `del <ordinal>`, and `u {` ... `}` for a nested union block. Lines
/// starting with `#` and blank lines are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpTrace {
    pub ops: Vec<TraceOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl OpTrace {
    pub fn new(ops: Vec<TraceOp>) -> Self {
        Self { ops }
    }

    /// `n` inserts of `keys` followed by `n` extract-mins.
    pub fn sort(keys: &[i64]) -> Self {
        let mut ops: Vec<TraceOp> = keys.iter().map(|&k| TraceOp::Insert(k)).collect();
        ops.extend(std::iter::repeat_n(TraceOp::ExtractMin, keys.len()));
        Self { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Inserted keys in ordinal order, nested blocks included.
    pub fn inserted_keys(&self) -> Vec<i64> {
        let mut out = Vec::new();
        collect_keys(&self.ops, &mut out);
        out
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        for op in &self.ops {
            let pad = "  ".repeat(depth);
            match op {
                TraceOp::Insert(k) => writeln!(f, "{pad}i {k}")?,
                TraceOp::ExtractMin => writeln!(f, "{pad}x")?,
                TraceOp::DecreaseKey { ordinal, key } => writeln!(f, "{pad}d {ordinal} {key}")?,
                TraceOp::Delete(o) => writeln!(f, "{pad}del {o}")?,
                TraceOp::Union(inner) => {
                    writeln!(f, "{pad}u {{")?;
                    inner.write_indented(f, depth + 1)?;
                    writeln!(f, "{pad}}}")?;
                }
            }
        }
        Ok(())
    }
}

fn collect_keys(ops: &[TraceOp], out: &mut Vec<i64>) {
    for op in ops {
        match op {
            TraceOp::Insert(k) => out.push(*k),
            TraceOp::Union(inner) => collect_keys(&inner.ops, out),
            _ => {}
        }
    }
}

impl fmt::Display for OpTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

impl FromStr for OpTrace {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut stack: Vec<(usize, Vec<TraceOp>)> = vec![(0, Vec::new())];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| ParseError { line, message };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let int = |s: &str| {
                s.parse::<i64>()
                    .map_err(|e| err(format!("bad integer `{s}`: {e}")))
            };
            let ord = |s: &str| {
                s.parse::<u64>()
                    .map_err(|e| err(format!("bad ordinal `{s}`: {e}")))
            };
            let op = match tokens.as_slice() {
                ["i", k] => TraceOp::Insert(int(k)?),
                ["x"] => TraceOp::ExtractMin,
                ["d", o, k] => TraceOp::DecreaseKey {
                    ordinal: ord(o)?,
                    key: int(k)?,
                },
                ["del", o] => TraceOp::Delete(ord(o)?),
                ["u", "{"] => {
                    stack.push((line, Vec::new()));
                    continue;
                }
                ["}"] => {
                    if stack.len() < 2 {
                        return Err(err("`}` without an open `u {`".into()));
                    }
                    let (_, ops) = stack.pop().unwrap();
                    TraceOp::Union(OpTrace { ops })
                }
                _ => return Err(err(format!("unrecognised line `{trimmed}`"))),
            };
            stack.last_mut().unwrap().1.push(op);
        }
        if stack.len() > 1 {
            let (open, _) = stack.pop().unwrap();
            return Err(ParseError {
                line: open,
                message: "unclosed `u {` block".into(),
            });
        }
        Ok(OpTrace {
            ops: stack.pop().unwrap().1,
        })
    }
}
