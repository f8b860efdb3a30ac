//! File formats: the plain-text point list and the JSON result document.
//!
//! Point files carry one point per line, two decimals separated by
//! whitespace; `#` starts a comment line. Coordinates are read at `f64`
//! precision and serialized back as shortest round-tripping decimals, so
//! write-then-read is lossless. Duplicate points are rejected with both line
//! numbers.
//!
//! The result document serializes with a fixed field order and shortest
//! round-trip floats, so byte-identical output is a function of the input
//! and flags alone (wall time excluded).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::Point;
use crate::kinetic::{RunStats, TraceRecord};
use crate::oracle::{BoundReport, SimplexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointFileError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line_b}: duplicate of point on line {line_a}")]
    Duplicate { line_a: usize, line_b: usize },
    #[error("no points in file")]
    Empty,
}

/// Parses a point file. Line numbers are 1-based.
pub fn parse_points(text: &str) -> Result<Vec<Point>, PointFileError> {
    let mut points = Vec::new();
    let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(PointFileError::Line {
                line,
                msg: format!("expected two coordinates, found {}", fields.len()),
            });
        }
        let mut coords = [0.0f64; 2];
        for (slot, field) in coords.iter_mut().zip(&fields) {
            let v: f64 = field.parse().map_err(|_| PointFileError::Line {
                line,
                msg: format!("cannot parse `{field}` as a number"),
            })?;
            if !v.is_finite() {
                return Err(PointFileError::Line {
                    line,
                    msg: format!("non-finite coordinate `{field}`"),
                });
            }
            *slot = v;
        }
        let p = Point::new(coords[0], coords[1]);
        if let Some(&line_a) = seen.get(&p) {
            return Err(PointFileError::Duplicate { line_a, line_b: line });
        }
        seen.insert(p, line);
        points.push(p);
    }
    if points.is_empty() {
        return Err(PointFileError::Empty);
    }
    Ok(points)
}

/// Serializes points one per line after a comment header.
pub fn format_points(points: &[Point], header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for p in points {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

/// Configuration echo embedded in every result document. Exact rationals
/// serialize as `numerator/denominator` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub tau: String,
    pub box_scale: String,
    pub max_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocVertex {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub kind: String,
}

/// Flat statistics block: the bound-report fields plus kinetic counters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocStats {
    pub n: usize,
    pub f: usize,
    pub spread: f64,
    pub steiner_count: usize,
    pub flips: u64,
    pub flips_22: u64,
    pub flips_31: u64,
    pub potential_flips: u64,
    pub stale_pops: u64,
    pub heap_peak: usize,
    pub scaffolding: usize,
    pub ratio_flip: f64,
    pub ratio_size: f64,
    pub wall_time_ms: f64,
}

/// The structured output of a pipeline run: the final complex over the input
/// points, with counters. Round-trips losslessly through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub version: String,
    pub config: ConfigEcho,
    pub vertices: Vec<DocVertex>,
    pub edges: Vec<[u32; 2]>,
    pub triangles: Vec<[u32; 3]>,
    pub stats: DocStats,
}

pub const DOC_VERSION: &str = "1";

impl ResultDocument {
    pub fn from_final_set(
        points: &[Point],
        final_set: &SimplexSet,
        stats: &RunStats,
        report: &BoundReport,
        config: ConfigEcho,
    ) -> ResultDocument {
        let vertices = points
            .iter()
            .enumerate()
            .map(|(i, p)| DocVertex {
                id: i as u32,
                x: p.x,
                y: p.y,
                kind: "input".to_string(),
            })
            .collect();
        let edges = final_set.edges.iter().map(|&(u, v)| [u.0, v.0]).collect();
        let triangles = final_set
            .triangles
            .iter()
            .map(|t| [t[0].0, t[1].0, t[2].0])
            .collect();
        ResultDocument {
            version: DOC_VERSION.to_string(),
            config,
            vertices,
            edges,
            triangles,
            stats: DocStats {
                n: report.n,
                f: report.f,
                spread: report.spread,
                steiner_count: report.steiner_count,
                flips: stats.flips_total(),
                flips_22: stats.flips_22,
                flips_31: stats.flips_31,
                potential_flips: stats.potential_flips_seen,
                stale_pops: stats.stale_pops,
                heap_peak: stats.heap_peak,
                scaffolding: stats.scaffolding_count,
                ratio_flip: report.ratio_flip,
                ratio_size: report.ratio_size,
                wall_time_ms: report.wall_time_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ResultDocument, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Copy with the wall-time field zeroed, for determinism comparisons.
    pub fn with_zeroed_wall_time(&self) -> ResultDocument {
        let mut doc = self.clone();
        doc.stats.wall_time_ms = 0.0;
        doc
    }
}

/// Renders an event trace as line-delimited records behind a header.
pub fn format_trace(records: &[TraceRecord]) -> String {
    let mut out = String::from("# flip trace: <time num/den> <kind> <ids>\n");
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}
