//! ⊙ multiplication tables: row `a` (twist), column `m` (multiplicity).
//! A cell is blank when `gcd(m, l)` does not divide `a`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::residue::{Level, ResidueError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Level(#[from] ResidueError),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdotTable {
    pub level: u64,
    /// `rows[a][m]`
    pub rows: Vec<Vec<Option<u64>>>,
}

impl OdotTable {
    pub fn compute(level: Level) -> Self {
        let l = level.get();
        let rows = (0..l)
            .map(|a| {
                (0..l)
                    .map(|m| level.odot(level.canon_u(a), level.canon_u(m)).ok().map(|r| r.value()))
                    .collect()
            })
            .collect();
        OdotTable { level: l, rows }
    }

    pub fn cell(&self, a: usize, m: usize) -> Option<u64> {
        self.rows[a][m]
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Text => self.to_text(),
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => {
                let mut s = serde_json::to_string(self).expect("table serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn parse(input: &str, format: TableFormat) -> Result<Self, TableError> {
        let table = match format {
            TableFormat::Text => Self::parse_rows(input, '|', true)?,
            TableFormat::Csv => Self::parse_rows(input, ',', false)?,
            TableFormat::Json => serde_json::from_str(input).map_err(|e| TableError::Json(e.to_string()))?,
        };
        table.check_shape()?;
        Ok(table)
    }

    fn check_shape(&self) -> Result<(), TableError> {
        Level::new(self.level)?;
        let l = self.level as usize;
        if self.rows.len() != l {
            return Err(TableError::Malformed {
                line: 0,
                message: format!("expected {l} rows, found {}", self.rows.len()),
            });
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != l) {
            return Err(TableError::Malformed {
                line: i + 2,
                message: format!("expected {l} cells"),
            });
        }
        Ok(())
    }

    fn to_csv(&self) -> String {
        let mut out = format!("l={}", self.level);
        for m in 0..self.level {
            write!(out, ",{m}").unwrap();
        }
        out.push('\n');
        for (a, row) in self.rows.iter().enumerate() {
            write!(out, "{a}").unwrap();
            for cell in row {
                out.push(',');
                if let Some(v) = cell {
                    write!(out, "{v}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    fn to_text(&self) -> String {
        let width = (self.level - 1).to_string().len();
        let head = format!("l={}", self.level);
        let first = head.len().max(width);
        let mut out = String::new();
        write!(out, "| {head:<first$} |").unwrap();
        for m in 0..self.level {
            write!(out, " {m:>width$} |").unwrap();
        }
        out.push('\n');
        write!(out, "|{}|", "-".repeat(first + 2)).unwrap();
        for _ in 0..self.level {
            write!(out, "{}|", "-".repeat(width + 2)).unwrap();
        }
        out.push('\n');
        for (a, row) in self.rows.iter().enumerate() {
            write!(out, "| {a:<first$} |").unwrap();
            for cell in row {
                match cell {
                    Some(v) => write!(out, " {v:>width$} |").unwrap(),
                    None => write!(out, " {:>width$} |", "").unwrap(),
                }
            }
            out.push('\n');
        }
        out
    }

    fn parse_rows(input: &str, sep: char, piped: bool) -> Result<Self, TableError> {
        let mut lines = input
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !(piped && l.trim_start().starts_with("|-")));
        let split = |line: &str| -> Vec<String> {
            let body = if piped {
                line.trim().trim_start_matches('|').trim_end_matches('|')
            } else {
                line
            };
            body.split(sep).map(|c| c.trim().to_string()).collect()
        };
        let (hline, header) = lines.next().ok_or(TableError::Malformed {
            line: 1,
            message: "empty table".into(),
        })?;
        let header = split(header);
        let level: u64 = header[0]
            .strip_prefix("l=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| TableError::Malformed {
                line: hline + 1,
                message: format!("expected `l=<level>`, found {:?}", header[0]),
            })?;
        for (i, h) in header[1..].iter().enumerate() {
            if h.parse::<usize>().ok() != Some(i) {
                return Err(TableError::Malformed {
                    line: hline + 1,
                    message: format!("column header {i} reads {h:?}"),
                });
            }
        }
        let mut rows = Vec::new();
        for (n, line) in lines {
            let cells = split(line);
            if cells[0].parse::<usize>().ok() != Some(rows.len()) {
                return Err(TableError::Malformed {
                    line: n + 1,
                    message: format!("row label {:?} out of order", cells[0]),
                });
            }
            let row = cells[1..]
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        Ok(None)
                    } else {
                        c.parse().map(Some).map_err(|_| TableError::Malformed {
                            line: n + 1,
                            message: format!("bad cell {c:?}"),
                        })
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(OdotTable { level, rows })
    }
}
