//! Grid file formats.
//!
//! `plain`: one row per line, whitespace-separated integers, `-inf` for
//! blocked cells; blank lines and lines starting with `#` are skipped.
//!
//! `structured`: a JSON object `{"h": .., "w": .., "d": [..]?, "cells": [[..]]}`
//! with cells as integers or the string `"-inf"`; `d` holds the step width
//! into each row after the first.

use std::str::FromStr;

use cp2_core::{CellValue, Grid, StepProfile};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Structured,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Token { line: usize, source: cp2_core::cell::ParseCellError },
    #[error("malformed structured grid: {0}")]
    Json(#[from] serde_json::Error),
    #[error("header says {h}x{w} but cells are {rows}x{cols}")]
    Header { h: usize, w: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Grid(#[from] cp2_core::Error),
}

/// A parsed grid plus the optional step profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridFile {
    pub grid: Grid,
    pub steps: Option<StepProfile>,
}

#[derive(Serialize, Deserialize)]
struct Structured {
    h: usize,
    w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<usize>>,
    cells: Vec<Vec<CellValue>>,
}

pub fn parse(text: &str, format: Format) -> Result<GridFile, ParseError> {
    match format {
        Format::Plain => {
            let mut rows = Vec::new();
            for (k, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let row = line
                    .split_whitespace()
                    .map(CellValue::from_str)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| ParseError::Token { line: k + 1, source })?;
                rows.push(row);
            }
            Ok(GridFile { grid: Grid::from_rows(rows)?, steps: None })
        }
        Format::Structured => {
            let s: Structured = serde_json::from_str(text)?;
            let cols = s.cells.first().map_or(0, Vec::len);
            if s.cells.len() != s.h || s.cells.iter().any(|r| r.len() != s.w) {
                return Err(ParseError::Header { h: s.h, w: s.w, rows: s.cells.len(), cols });
            }
            let grid = Grid::from_rows(s.cells)?;
            let steps = s.d.map(|d| StepProfile::new(d, grid.height(), grid.width())).transpose()?;
            Ok(GridFile { grid, steps })
        }
    }
}

pub fn render(file: &GridFile, format: Format) -> String {
    let g = &file.grid;
    match format {
        Format::Plain => {
            let mut out = String::new();
            for row in g.rows() {
                let line: Vec<String> = row.iter().map(ToString::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out
        }
        Format::Structured => {
            let s = Structured {
                h: g.height(),
                w: g.width(),
                d: file.steps.as_ref().map(|d| d.as_slice().to_vec()),
                cells: g.rows().map(<[CellValue]>::to_vec).collect(),
            };
            let mut out = serde_json::to_string(&s).expect("grid serializes");
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cp2_core::{generate_grid, NegInfinity};

    #[test]
    fn plain_round_trip() {
        for seed in 0..50 {
            let grid = generate_grid(2 + seed as usize % 6, 2 + seed as usize % 5, -9, 9, seed).unwrap();
            let file = GridFile { grid: grid.with_cell(0, 1, NegInfinity), steps: None };
            for format in [Format::Plain, Format::Structured] {
                assert_eq!(parse(&render(&file, format), format).unwrap(), file);
            }
        }
    }

    #[test]
    fn structured_with_steps() {
        let text = r#"{"h": 2, "w": 3, "d": [2], "cells": [[1, "-inf", 3], [4, 5, 6]]}"#;
        let f = parse(text, Format::Structured).unwrap();
        assert_eq!(f.grid.get(0, 1), NegInfinity);
        assert_eq!(f.steps.unwrap().as_slice(), &[2]);
        assert_eq!(parse(&render(&parse(text, Format::Structured).unwrap(), Format::Structured), Format::Structured).unwrap().grid, f.grid);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("1 2\n3 x\n", Format::Plain), Err(ParseError::Token { line: 2, .. })));
        assert!(matches!(parse("1 2\n3\n", Format::Plain), Err(ParseError::Grid(_))));
        assert!(matches!(parse("1 2 3\n", Format::Plain), Err(ParseError::Grid(_))));
        assert!(matches!(parse(r#"{"h": 3, "w": 2, "cells": [[1, 2], [3, 4]]}"#, Format::Structured), Err(ParseError::Header { .. })));
        assert!(matches!(parse(r#"{"h": 2, "w": 2, "d": [2], "cells": [[1, 2], [3, 4]]}"#, Format::Structured), Err(ParseError::Grid(_))));
        assert!(matches!(parse("{", Format::Structured), Err(ParseError::Json(_))));
        assert!(parse("# comment\n\n1 2\n3 4\n", Format::Plain).is_ok());
    }
}
