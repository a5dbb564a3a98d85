//! Static charts of a rectangular (s, t) window: JSON (`mayv1`), SVG and TSV.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use mayss_core::adams_certify::Verdict;
use mayss_core::ContextError;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::session::Session;

pub const SCHEMA: &str = "mayv1";
pub const DEFAULT_CELL_CAP: usize = 200_000;

#[derive(Debug, Error)]
pub enum ChartError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("window of {cells} cells exceeds the cap of {cap}")]
    WindowTooLarge { cells: usize, cap: usize },
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("chart JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported chart schema {0:?}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            "tsv" => Ok(Format::Tsv),
            other => Err(format!("unknown chart format {other:?} (json, svg, tsv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub s: RangeInclusive<u32>,
    pub t: RangeInclusive<u64>,
}

impl Window {
    pub fn new(s: RangeInclusive<u32>, t: RangeInclusive<u64>) -> Self {
        Window { s, t }
    }

    pub fn cell_count(&self) -> usize {
        let ns = if self.s.is_empty() { 0 } else { (self.s.end() - self.s.start()) as usize + 1 };
        let nt = if self.t.is_empty() { 0 } else { (self.t.end() - self.t.start()) as usize + 1 };
        ns.saturating_mul(nt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCell {
    pub s: u32,
    pub t: u64,
    pub e1: usize,
    pub e2: usize,
    /// `E2Zero`, `DimCertified` or `UpperBound`.
    pub certification: String,
    pub lower: usize,
    pub upper: usize,
    pub representatives: Vec<String>,
}

impl ChartCell {
    pub fn stem(&self) -> i64 {
        self.t as i64 - self.s as i64
    }

    pub fn is_certified(&self) -> bool {
        self.certification != "UpperBound"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub schema: String,
    pub p: u64,
    pub s_range: [u32; 2],
    pub t_range: [u64; 2],
    /// Cells with nonempty E1, sorted by (s, t).
    pub cells: Vec<ChartCell>,
}

impl Chart {
    pub fn cell(&self, s: u32, t: u64) -> Option<&ChartCell> {
        self.cells.iter().find(|c| c.s == s && c.t == t)
    }

    pub fn from_json(text: &str) -> Result<Chart, ChartError> {
        let c: Chart = serde_json::from_str(text)?;
        if c.schema != SCHEMA {
            return Err(ChartError::Schema(c.schema));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes") + "\n"
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tt\tstem\te1\te2\tcertification\tlower\tupper\trepresentatives\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                c.s,
                c.t,
                c.stem(),
                c.e1,
                c.e2,
                c.certification,
                c.lower,
                c.upper,
                c.representatives.join("; ")
            );
        }
        out
    }

    /// Dots at (t - s, s), one per E2 dimension; hollow where the cell is
    /// not certified.
    pub fn to_svg(&self) -> String {
        let live: Vec<&ChartCell> = self.cells.iter().filter(|c| c.e2 > 0).collect();
        let x_min = live.iter().map(|c| c.stem()).min().unwrap_or(0).min(0);
        let x_max = live.iter().map(|c| c.stem()).max().unwrap_or(0).max(x_min + 1);
        let y_max = live.iter().map(|c| c.s).max().unwrap_or(0).max(1) as f64;
        let margin = 40.0;
        let xs = (1000.0 / (x_max - x_min) as f64).clamp(0.5, 24.0);
        let ys = 40.0;
        let width = margin * 2.0 + xs * (x_max - x_min) as f64;
        let height = margin * 2.0 + ys * y_max;
        let px = |stem: i64| margin + xs * (stem - x_min) as f64;
        let py = |s: u32| height - margin - ys * s as f64;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
        );
        let _ = writeln!(out, r#"<title>E2 at p = {}, stems by filtration</title>"#, self.p);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888"/>"##,
            margin,
            py(0),
            width - margin,
            py(0)
        );
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888"/>"##,
            px(x_min),
            margin,
            px(x_min),
            height - margin
        );
        for c in live {
            let fill = if c.is_certified() { "black" } else { "none" };
            for k in 0..c.e2 {
                let dx = (k as f64 - (c.e2 as f64 - 1.0) / 2.0) * 4.0;
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.1}" cy="{:.1}" r="2.5" fill="{fill}" stroke="black"><title>({},{}) {}</title></circle>"#,
                    px(c.stem()) + dx,
                    py(c.s),
                    c.s,
                    c.t,
                    c.representatives.get(k).map(String::as_str).unwrap_or("")
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Svg => self.to_svg(),
            Format::Tsv => self.to_tsv(),
        }
    }
}

/// Compute every cell of the window.
pub fn build_chart(session: &Session, p: u64, window: &Window, cap: usize) -> Result<Chart, ChartError> {
    let n = window.cell_count();
    if n > cap {
        return Err(ChartError::WindowTooLarge { cells: n, cap });
    }
    session.engine(p)?;
    let coords: Vec<(u32, u64)> = window.s.clone().flat_map(|s| window.t.clone().map(move |t| (s, t))).collect();
    let cells: Result<Vec<Option<ChartCell>>, ContextError> = coords
        .par_iter()
        .map(|&(s, t)| {
            let cert = session.dim(p, s as i64, t as i64)?;
            if cert.verdict == Verdict::E1Empty {
                return Ok(None);
            }
            let reps = if cert.e2 > 0 {
                session.e2(p, s, t)?.representatives().map(|e| e.to_string()).collect()
            } else {
                Vec::new()
            };
            let (lower, upper) = cert.bounds();
            Ok(Some(ChartCell {
                s,
                t,
                e1: cert.e1,
                e2: cert.e2,
                certification: cert.verdict.label().to_string(),
                lower,
                upper,
                representatives: reps,
            }))
        })
        .collect();
    Ok(Chart {
        schema: SCHEMA.to_string(),
        p,
        s_range: [*window.s.start(), *window.s.end()],
        t_range: [*window.t.start(), *window.t.end()],
        cells: cells?.into_iter().flatten().collect(),
    })
}

pub fn emit_chart(session: &Session, p: u64, window: &Window, format: Format, path: &Path) -> Result<Chart, ChartError> {
    let chart = build_chart(session, p, window, DEFAULT_CELL_CAP)?;
    fs::write(path, chart.render(format))?;
    Ok(chart)
}
