//! Plain-text formats.
//!
//! Matrix files: a header line `ROWS COLS`, then `ROWS * COLS` entries in
//! row-major order, split across lines however is convenient.  Entries are
//! nonnegative integers (`3`), fractions (`1/2`) or decimals (`0.25`,
//! parsed exactly as base-10 rationals).  Lines whose first nonblank
//! character is `#` are comments.
//!
//! Pattern files: one line per row, each a string over `*` (positive) and
//! `0` (zero).
//!
//! Graph files: a first line `N`, then one `U V` edge per line (1-based,
//! `U U` is a loop).  Duplicate edges collapse.
//!
//! Emission is canonical (integers stay integers, everything else is
//! `num/den` in lowest terms), so `parse(emit(x)) == x` and emitted files
//! round-trip byte for byte.

use std::str::FromStr;

use num::{BigInt, Signed, Zero};

use crate::graph::Graph;
use crate::matrix::{IndexSet, NonnegMatrix, Partition, PatternMatrix};
use crate::{Error, Rational, Result};

/// Parses a nonnegative rational literal: integer, `num/den`, or decimal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |msg: &str| Error::Invalid(format!("bad rational {s:?}: {msg}"));
    if s.is_empty() {
        return Err(fail("empty"));
    }
    if s.starts_with('-') {
        return Err(fail("negative values are not supported"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num).map_err(|_| fail("numerator is not an integer"))?;
        let den = BigInt::from_str(den).map_err(|_| fail("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(fail("denominator is zero"));
        }
        if num.is_negative() || den.is_negative() {
            return Err(fail("negative values are not supported"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("expected digits after the decimal point"));
        }
        let int = BigInt::from_str(int_part).map_err(|_| fail("bad integer part"))?;
        let frac = BigInt::from_str(frac_part).expect("digits only");
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rational::new(int * &scale + frac, scale));
    }
    let n = BigInt::from_str(s).map_err(|_| fail("not a number"))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text for a rational: `7` or `22/7`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lines with content, paired with their original 1-based line numbers.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<NonnegMatrix> {
    let lines = significant_lines(text);
    let (header_line, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::Parse {
            line: *header_line,
            msg: format!("expected header `ROWS COLS`, got {header:?}"),
        });
    }
    let parse_dim = |s: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Parse {
            line: *header_line,
            msg: format!("bad dimension {s:?}"),
        })
    };
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse {
            line: *header_line,
            msg: "dimensions must be at least 1".into(),
        });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    let mut last_line = *header_line;
    for (line_no, line) in &lines[1..] {
        last_line = *line_no;
        for token in line.split_whitespace() {
            if entries.len() == rows * cols {
                return Err(Error::Parse {
                    line: *line_no,
                    msg: format!("extra entry {token:?} beyond {rows}x{cols}"),
                });
            }
            entries.push(parse_rational(token).map_err(|e| Error::Parse {
                line: *line_no,
                msg: e.to_string(),
            })?);
        }
    }
    if entries.len() != rows * cols {
        return Err(Error::Parse {
            line: last_line,
            msg: format!(
                "expected {} entries for {rows}x{cols}, found {}",
                rows * cols,
                entries.len()
            ),
        });
    }
    NonnegMatrix::new(rows, cols, entries)
}

pub fn emit_matrix(m: &NonnegMatrix) -> String {
    use crate::matrix::Support;
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_rational(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<PatternMatrix> {
    let lines = significant_lines(text);
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        });
    }
    let cols = lines[0].1.chars().count();
    let mut p = PatternMatrix::zeros(lines.len(), cols.max(1))?;
    for (i, (line_no, line)) in lines.iter().enumerate() {
        if line.chars().count() != cols {
            return Err(Error::Parse {
                line: *line_no,
                msg: format!("expected {cols} characters, found {}", line.chars().count()),
            });
        }
        for (j, c) in line.chars().enumerate() {
            match c {
                '*' => p.set(i, j, true),
                '0' => {}
                other => {
                    return Err(Error::Parse {
                        line: *line_no,
                        msg: format!("unexpected character {other:?} (want `*` or `0`)"),
                    })
                }
            }
        }
    }
    Ok(p)
}

pub fn emit_pattern(p: &PatternMatrix) -> String {
    use crate::matrix::Support;
    let mut out = String::new();
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            out.push(if p.get(i, j) { '*' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let lines = significant_lines(text);
    let (header_line, header) = lines.first().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: *header_line,
        msg: format!("expected vertex count, got {header:?}"),
    })?;
    let mut edges = Vec::new();
    for (line_no, line) in &lines[1..] {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: *line_no,
                msg: format!("expected `U V`, got {line:?}"),
            });
        }
        let parse_v = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: *line_no,
                msg: format!("bad vertex {s:?}"),
            })
        };
        edges.push((parse_v(parts[0])?, parse_v(parts[1])?));
    }
    Graph::new(n, edges)
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges_one_based() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses `{1,2}{3}`, `singletons` or `full` against a known universe.
pub fn parse_partition(text: &str, universe: usize) -> Result<Partition> {
    let s = text.trim();
    match s {
        "singletons" => return Partition::singletons(universe),
        "full" => return Partition::whole(universe),
        _ => {}
    }
    let mut blocks = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('{') else {
            return Err(Error::InvalidPartition(format!(
                "expected `{{` at {rest:?}"
            )));
        };
        let Some(close) = stripped.find('}') else {
            return Err(Error::InvalidPartition(format!("unclosed block in {s:?}")));
        };
        blocks.push(parse_index_body(&stripped[..close], universe)?);
        rest = &stripped[close + 1..];
    }
    Partition::new(blocks)
}

/// Parses `{1,2,3}` (braces optional) as a nonempty index set.
pub fn parse_index_set(text: &str, universe: usize) -> Result<IndexSet> {
    let s = text.trim();
    let body = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(s);
    parse_index_body(body, universe)
}

fn parse_index_body(body: &str, universe: usize) -> Result<IndexSet> {
    let mut members = Vec::new();
    for token in body.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let v: usize = token
            .parse()
            .map_err(|_| Error::Invalid(format!("bad index {token:?}")))?;
        members.push(v);
    }
    IndexSet::new(universe, members)
}
