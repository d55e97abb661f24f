//! Tilting grids over `0 <= r, s <= max`, rendered as ASCII, TSV, SVG or JSON.
//!
//! Row index is `r` (top to bottom), column index is `s` (left to right).
//! Every renderer is deterministic: the same grid always yields the same
//! bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::decide::explicit_tilting;
use crate::padic::Prime;
use crate::{Error, Result};

pub const MAX_GRID_WEIGHT: u64 = 4096;

const CELL: u64 = 16;
const MARGIN: u64 = 40;
const TILTING_FILL: &str = "#2a2";
const OTHER_FILL: &str = "#ddd";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Ascii,
    Tsv,
    Svg,
    Json,
}

impl FromStr for GridFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(GridFormat::Ascii),
            "tsv" => Ok(GridFormat::Tsv),
            "svg" => Ok(GridFormat::Svg),
            "json" => Ok(GridFormat::Json),
            other => Err(format!("unknown grid format {other:?} (expected ascii, tsv, svg or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub p: Prime,
    pub max_weight: u64,
    pub format: GridFormat,
}

impl GridSpec {
    pub fn render(&self) -> Result<String> {
        Ok(Grid::compute(self.p, self.max_weight)?.render(self.format))
    }
}

/// A `(max+1) × (max+1)` table of verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    p: Prime,
    max: u64,
    cells: Vec<bool>,
}

impl Grid {
    /// Fills the grid with the explicit criterion.
    pub fn compute(p: Prime, max: u64) -> Result<Self> {
        Self::from_fn(p, max, |r, s| explicit_tilting(p, r, s))
    }

    /// Fills the grid from an arbitrary decider; rows are computed in
    /// parallel.
    pub fn from_fn(p: Prime, max: u64, decide: impl Fn(u64, u64) -> bool + Sync) -> Result<Self> {
        if max > MAX_GRID_WEIGHT {
            return Err(Error::GridTooLarge(max));
        }
        let side = max as usize + 1;
        let mut cells = vec![false; side * side];
        cells
            .par_chunks_mut(side)
            .enumerate()
            .for_each(|(r, row)| {
                for (s, cell) in row.iter_mut().enumerate() {
                    *cell = decide(r as u64, s as u64);
                }
            });
        Ok(Grid { p, max, cells })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn side(&self) -> usize {
        self.max as usize + 1
    }

    pub fn get(&self, r: u64, s: u64) -> bool {
        assert!(r <= self.max && s <= self.max, "({r}, {s}) outside grid");
        self.cells[r as usize * self.side() + s as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.cells.chunks(self.side())
    }

    pub fn render(&self, format: GridFormat) -> String {
        match format {
            GridFormat::Ascii => self.to_ascii(),
            GridFormat::Tsv => self.to_tsv(),
            GridFormat::Svg => self.to_svg(),
            GridFormat::Json => self.to_json(),
        }
    }

    /// `#` for tilting, `.` otherwise, one line per row.
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() + self.side());
        for row in self.rows() {
            out.extend(row.iter().map(|&c| if c { '#' } else { '.' }));
            out.push('\n');
        }
        out
    }

    /// Header-less, tab-separated `1`/`0`, LF line endings.
    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(2 * self.cells.len());
        for row in self.rows() {
            for (s, &c) in row.iter().enumerate() {
                if s > 0 {
                    out.push('\t');
                }
                out.push(if c { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            p: u64,
            max: u64,
            tilting: &'a [[u64; 2]],
        }
        let tilting: Vec<[u64; 2]> = self
            .rows()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &c)| c)
                    .map(move |(s, _)| [r as u64, s as u64])
            })
            .collect();
        let doc = Doc {
            p: self.p.get(),
            max: self.max,
            tilting: &tilting,
        };
        let mut out = serde_json::to_string(&doc).expect("grid JSON serialisation");
        out.push('\n');
        out
    }

    /// Weights `p^n - 1` inside the grid; these get axis labels and gridlines.
    pub fn marked_weights(&self) -> Vec<u64> {
        let p = self.p.get();
        let mut out = Vec::new();
        let mut power = 1u64;
        while power - 1 <= self.max {
            out.push(power - 1);
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
        }
        out
    }

    /// One 16px `rect` per cell in row-major order, labels and a 1px
    /// gridline after every weight `p^n - 1`.
    pub fn to_svg(&self) -> String {
        let span = self.side() as u64 * CELL;
        let size = MARGIN + span;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r##"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"##
        );
        let _ = writeln!(out, r##"<rect x="0" y="0" width="{size}" height="{size}" fill="#fff"/>"##);
        for (r, row) in self.rows().enumerate() {
            for (s, &c) in row.iter().enumerate() {
                let x = MARGIN + s as u64 * CELL;
                let y = MARGIN + r as u64 * CELL;
                let fill = if c { TILTING_FILL } else { OTHER_FILL };
                let _ = writeln!(
                    out,
                    r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>"##
                );
            }
        }
        for w in self.marked_weights() {
            let centre = MARGIN + w * CELL + CELL / 2;
            let edge = MARGIN + (w + 1) * CELL;
            let _ = writeln!(
                out,
                r##"<line x1="{MARGIN}" y1="{edge}" x2="{size}" y2="{edge}" stroke="#000" stroke-width="1"/>"##
            );
            let _ = writeln!(
                out,
                r##"<line x1="{edge}" y1="{MARGIN}" x2="{edge}" y2="{size}" stroke="#000" stroke-width="1"/>"##
            );
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{centre}" font-family="monospace" font-size="10" text-anchor="end" dominant-baseline="middle">{w}</text>"##,
                MARGIN - 4
            );
            let _ = writeln!(
                out,
                r##"<text x="{centre}" y="{}" font-family="monospace" font-size="10" text-anchor="middle">{w}</text>"##,
                MARGIN - 6
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
