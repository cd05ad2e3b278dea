//! Plain-text matrices.
//!
//! ```text
//! ring=quat n=2
//! 0, i+j
//! 0, 0
//! ```
//!
//! Rows are separated by `;` or newlines and entries by `,`. Optional
//! header tokens `ring=rat|gauss|quat` and `n=<dim>` come first, on their
//! own line(s). Everything after `#` on a line is a comment. The one-line
//! form `0,1;0,0` is what certificates and the CLI print.

use crate::error::{Error, ParseError, Result};
use crate::nilmat::Matrix;
use crate::scalar::{GaussianRational, Rational, RationalQuaternion, Ring, Scalar};

/// An entry's source text and where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Cell {
    text: String,
    line: usize,
    column: usize,
}

/// A matrix document split into header and cells, before the ring is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatrix {
    pub ring: Option<Ring>,
    pub n: Option<usize>,
    rows: Vec<Vec<Cell>>,
}

impl RawMatrix {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut ring = None;
        let mut n = None;
        let mut rows: Vec<Vec<Cell>> = Vec::new();
        let mut body_started = false;
        for (li, raw_line) in src.lines().enumerate() {
            let line = li + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if !body_started && (trimmed.starts_with("ring=") || trimmed.starts_with("n=")) {
                parse_header(content, line, &mut ring, &mut n)?;
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            body_started = true;
            split_rows(content, line, &mut rows)?;
        }
        if rows.is_empty() {
            let line = src.lines().count().max(1);
            return Err(ParseError::new(line, 1, "empty matrix"));
        }
        let size = rows.len();
        if let Some(declared) = n {
            if declared != size {
                let c = &rows[0][0];
                return Err(ParseError::new(
                    c.line,
                    c.column,
                    format!("header declares n={declared} but the body has {size} rows"),
                ));
            }
        }
        for row in &rows {
            if row.len() != size {
                let c = &row[0];
                return Err(ParseError::new(
                    c.line,
                    c.column,
                    format!("row has {} entries, expected {size} for a square matrix", row.len()),
                ));
            }
        }
        Ok(Self { ring, n, rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn to_matrix<S: Scalar>(&self) -> Result<Matrix<S>, ParseError> {
        let mut entries = Vec::with_capacity(self.size() * self.size());
        for cell in self.rows.iter().flatten() {
            let value = S::parse_literal(&cell.text).map_err(|m| {
                ParseError::new(cell.line, cell.column, format!("bad {} literal {:?}: {m}", S::RING, cell.text))
            })?;
            entries.push(value);
        }
        let n = self.size();
        Ok(Matrix::from_fn(n, |i, j| entries[i * n + j].clone()))
    }
}

fn parse_header(content: &str, line: usize, ring: &mut Option<Ring>, n: &mut Option<usize>) -> Result<(), ParseError> {
    for (column, token) in tokens(content) {
        let fail = |m: String| ParseError::new(line, column, m);
        if let Some(v) = token.strip_prefix("ring=") {
            let r = v.parse::<Ring>().map_err(|_| fail(format!("unknown ring {v:?}; expected rat, gauss or quat")))?;
            *ring = Some(r);
        } else if let Some(v) = token.strip_prefix("n=") {
            let d = v.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| fail(format!("bad dimension {v:?}")))?;
            *n = Some(d);
        } else {
            return Err(fail(format!("unexpected header token {token:?}")));
        }
    }
    Ok(())
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, (b, ch)) in s.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((k + 1, b)),
            (true, Some((col, from))) => {
                out.push((col, &s[from..b]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, from)) = start {
        out.push((col, &s[from..]));
    }
    out.into_iter()
}

fn split_rows(content: &str, line: usize, rows: &mut Vec<Vec<Cell>>) -> Result<(), ParseError> {
    let mut row: Vec<Cell> = Vec::new();
    let mut text = String::new();
    let mut column = None;
    let finish_cell = |row: &mut Vec<Cell>, text: &mut String, column: &mut Option<usize>, at: usize| {
        let start = column.take();
        let cell = std::mem::take(text);
        match start {
            Some(column) => {
                row.push(Cell { text: cell.trim_end().to_string(), line, column });
                Ok(())
            }
            None => Err(ParseError::new(line, at, "empty entry")),
        }
    };
    let mut col = 0;
    for ch in content.chars() {
        col += 1;
        match ch {
            ',' => finish_cell(&mut row, &mut text, &mut column, col)?,
            ';' => {
                if row.is_empty() && column.is_none() {
                    // tolerate `;;` and a trailing `;`
                    continue;
                }
                finish_cell(&mut row, &mut text, &mut column, col)?;
                rows.push(std::mem::take(&mut row));
            }
            c if c.is_whitespace() && column.is_none() => {}
            c => {
                column.get_or_insert(col);
                text.push(c);
            }
        }
    }
    if column.is_some() || !row.is_empty() {
        finish_cell(&mut row, &mut text, &mut column, col + 1)?;
        rows.push(row);
    }
    Ok(())
}

/// Matrix over a ring chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Rat(Matrix<Rational>),
    Gauss(Matrix<GaussianRational>),
    Quat(Matrix<RationalQuaternion>),
}

/// Runs a generic expression on whichever matrix an [`AnyMatrix`] holds.
#[macro_export]
macro_rules! with_any_matrix {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::text::AnyMatrix::Rat($m) => $body,
            $crate::text::AnyMatrix::Gauss($m) => $body,
            $crate::text::AnyMatrix::Quat($m) => $body,
        }
    };
}

impl AnyMatrix {
    /// Parses a matrix document. The ring comes from the header, else from
    /// `ring`, else defaults to `rat`; a header that disagrees with an
    /// explicit `ring` is a `RingMismatch`.
    pub fn parse(src: &str, ring: Option<Ring>) -> Result<Self> {
        let raw = RawMatrix::parse(src)?;
        let ring = match (raw.ring, ring) {
            (Some(found), Some(expected)) if found != expected => return Err(Error::RingMismatch { expected, found }),
            (Some(r), _) | (None, Some(r)) => r,
            (None, None) => Ring::Rat,
        };
        Ok(match ring {
            Ring::Rat => AnyMatrix::Rat(raw.to_matrix()?),
            Ring::Gauss => AnyMatrix::Gauss(raw.to_matrix()?),
            Ring::Quat => AnyMatrix::Quat(raw.to_matrix()?),
        })
    }

    pub fn ring(&self) -> Ring {
        match self {
            AnyMatrix::Rat(_) => Ring::Rat,
            AnyMatrix::Gauss(_) => Ring::Gauss,
            AnyMatrix::Quat(_) => Ring::Quat,
        }
    }

    pub fn n(&self) -> usize {
        with_any_matrix!(self, m => m.n())
    }

    pub fn to_text(&self) -> String {
        with_any_matrix!(self, m => m.to_text())
    }
}

/// Parses a matrix over a ring fixed at compile time.
pub fn parse_matrix<S: Scalar>(src: &str) -> Result<Matrix<S>> {
    let raw = RawMatrix::parse(src)?;
    if let Some(found) = raw.ring {
        if found != S::RING {
            return Err(Error::RingMismatch { expected: S::RING, found });
        }
    }
    Ok(raw.to_matrix()?)
}

/// File form with a header line, one row per line.
pub fn to_document<S: Scalar>(m: &Matrix<S>) -> String {
    let mut out = format!("ring={} n={}\n", S::RING, m.n());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
