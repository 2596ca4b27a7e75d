//! Code matrices and the `RLSC 1` text format.
//!
//! ```text
//! RLSC 1
//! <t> <n> <k> <d> <p> <w>      absent values written as "-"
//! <t lines of n characters from {0,1}>
//! # optional comment lines
//! ```

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::column::BitColumn;
use crate::error::{Error, Result};

pub const MAGIC: &str = "RLSC 1";

/// Construction parameters carried alongside a matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixMeta {
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub p: Option<usize>,
    pub w: Option<usize>,
}

/// A `t x n` binary matrix stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMatrix {
    rows: usize,
    columns: Vec<BitColumn>,
    pub meta: MatrixMeta,
}

impl CodeMatrix {
    pub fn from_columns(rows: usize, columns: Vec<BitColumn>) -> Result<Self> {
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != rows) {
            return Err(Error::InvalidParams(format!(
                "column {j} has length {}, expected {rows}",
                c.len()
            )));
        }
        Ok(CodeMatrix {
            rows,
            columns,
            meta: MatrixMeta::default(),
        })
    }

    /// Builds a matrix from row strings such as `["100", "011"]`. Test helper.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut columns = vec![BitColumn::zeros(rows.len()); n];
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidParams(format!("row {i} has length {}", row.len())));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => columns[j].set(i, true),
                    other => {
                        return Err(Error::InvalidParams(format!("unexpected character {other:?}")))
                    }
                }
            }
        }
        CodeMatrix::from_columns(rows.len(), columns)
    }

    pub fn with_meta(mut self, meta: MatrixMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn column(&self, j: usize) -> &BitColumn {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[BitColumn] {
        &self.columns
    }

    pub(crate) fn column_mut(&mut self, j: usize) -> &mut BitColumn {
        &mut self.columns[j]
    }

    /// Bitwise OR of the given columns.
    pub fn or_of(&self, cols: impl IntoIterator<Item = usize>) -> BitColumn {
        let mut acc = BitColumn::zeros(self.rows);
        for j in cols {
            acc.union_with(&self.columns[j]);
        }
        acc
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_text().as_bytes())
    }

    pub fn to_text(&self) -> String {
        fn opt(v: Option<usize>) -> String {
            v.map_or_else(|| "-".to_string(), |x| x.to_string())
        }
        let mut s = String::with_capacity((self.cols() + 1) * (self.rows + 2));
        s.push_str(MAGIC);
        s.push('\n');
        let m = &self.meta;
        let _ = writeln!(
            s,
            "{} {} {} {} {} {}",
            self.rows,
            self.cols(),
            opt(m.k),
            opt(m.d),
            opt(m.p),
            opt(m.w)
        );
        for i in 0..self.rows {
            for c in &self.columns {
                s.push(if c.get(i) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let mut next_line = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((i, line)) => Ok((i + 1, line?)),
                None => Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("unexpected end of file, expected {what}"),
                }),
            }
        };

        let (ln, magic) = next_line("header")?;
        if magic.trim_end() != MAGIC {
            return Err(parse_err(ln, 1, format!("expected {MAGIC:?}")));
        }
        let (ln, params) = next_line("parameter line")?;
        // (1-based column, text) of each whitespace-separated field
        let mut fields: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, ch) in params.char_indices().chain(std::iter::once((params.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    fields.push((s + 1, &params[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if fields.len() != 6 {
            return Err(parse_err(
                ln,
                1,
                format!("expected 6 fields `t n k d p w`, found {}", fields.len()),
            ));
        }
        let mut values = [None; 6];
        for (idx, (slot, &(col, field))) in values.iter_mut().zip(&fields).enumerate() {
            if field != "-" {
                let v = field
                    .parse::<usize>()
                    .map_err(|_| parse_err(ln, col, format!("invalid number {field:?}")))?;
                *slot = Some(v);
            } else if idx < 2 {
                return Err(parse_err(ln, col, "t and n are required".into()));
            }
        }
        let (t, n) = (values[0].unwrap(), values[1].unwrap());
        let meta = MatrixMeta {
            k: values[2],
            d: values[3],
            p: values[4],
            w: values[5],
        };

        let mut columns = vec![BitColumn::zeros(t); n];
        let mut row = 0;
        let mut last = ln;
        for (i, line) in lines {
            let ln = i + 1;
            last = ln;
            let line = line?;
            if line.starts_with('#') || (row == t && line.trim().is_empty()) {
                continue;
            }
            if row == t {
                return Err(parse_err(ln, 1, format!("more than {t} matrix rows")));
            }
            let bytes = line.as_bytes();
            if bytes.len() != n {
                return Err(parse_err(
                    ln,
                    bytes.len().min(n) + 1,
                    format!("row has {} entries, expected {n}", bytes.len()),
                ));
            }
            for (j, &b) in bytes.iter().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => columns[j].set(row, true),
                    _ => {
                        return Err(parse_err(
                            ln,
                            j + 1,
                            format!("unexpected character {:?}", b as char),
                        ))
                    }
                }
            }
            row += 1;
        }
        if row != t {
            return Err(parse_err(last + 1, 1, format!("found {row} matrix rows, expected {t}")));
        }
        Ok(CodeMatrix {
            rows: t,
            columns,
            meta,
        })
    }
}

fn parse_err(line: usize, column: usize, message: String) -> Error {
    Error::Parse {
        line,
        column,
        message,
    }
}

/// The `n x n` identity matrix.
pub fn identity(n: usize) -> CodeMatrix {
    let columns = (0..n).map(|j| BitColumn::from_support(n, &[j])).collect();
    CodeMatrix {
        rows: n,
        columns,
        meta: MatrixMeta {
            w: Some(1),
            ..MatrixMeta::default()
        },
    }
}
