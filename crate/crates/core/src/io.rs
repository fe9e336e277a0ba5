//! Score, matrix and evaluation report files.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a value
//! read back parses to the identical `f64`.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::border::BorderIndex;
use crate::error::{Error, Result};
use crate::evaluation::{RobustnessPoint, ShiiEstimate};
use crate::graph::{TargetSet, VertexId};
use crate::rsi::{RankedSpanners, RsiScores};
use crate::weights::InteractionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct ScoreRecord {
    vertex: VertexId,
    score: f64,
}

/// Writes the score of every border vertex, ascending by vertex ID.
pub fn write_border_scores<W: Write>(
    mut out: W,
    format: ScoreFormat,
    scores: &RsiScores,
    border: &BorderIndex,
) -> Result<()> {
    let records: Vec<ScoreRecord> = border
        .vertices()
        .iter()
        .map(|&v| ScoreRecord {
            vertex: v,
            score: scores.get(v),
        })
        .collect();
    match format {
        ScoreFormat::Csv => {
            writeln!(out, "vertex_id,rsi")?;
            for r in &records {
                writeln!(out, "{},{}", r.vertex, r.score)?;
            }
        }
        ScoreFormat::Json => {
            serde_json::to_writer(&mut out, &records).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_ranked<W: Write>(mut out: W, format: ScoreFormat, ranked: &RankedSpanners) -> Result<()> {
    match format {
        ScoreFormat::Csv => {
            writeln!(out, "rank,vertex_id,rsi")?;
            for e in &ranked.entries {
                writeln!(out, "{},{},{}", e.rank, e.vertex, e.score)?;
            }
        }
        ScoreFormat::Json => {
            serde_json::to_writer(&mut out, &ranked.entries).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Reads a score CSV written by [`write_border_scores`] or [`write_ranked`].
pub fn read_score_csv<R: BufRead>(reader: R) -> Result<Vec<(VertexId, f64)>> {
    let mut lines = reader.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
            None => return Ok(Vec::new()),
        }
    };
    let columns: Vec<&str> = header.trim().split(',').collect();
    let find = |name: &str| columns.iter().position(|&c| c == name);
    let (Some(vertex_col), Some(score_col)) = (find("vertex_id"), find("rsi")) else {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected a header with vertex_id and rsi columns, got {header:?}"),
        });
    };
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim().split(',').collect();
        let bad = |what: &str| Error::Parse {
            line: idx + 1,
            message: format!("malformed {what}"),
        };
        let vertex = fields
            .get(vertex_col)
            .and_then(|f| f.parse::<VertexId>().ok())
            .ok_or_else(|| bad("vertex_id"))?;
        let score = fields
            .get(score_col)
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(|| bad("rsi"))?;
        out.push((vertex, score));
    }
    Ok(out)
}

/// Reads one vertex ID per line (first whitespace- or comma-separated
/// token); `#` starts a comment line.
pub fn read_vertex_set<R: BufRead>(reader: R) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let token = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .next()
            .unwrap_or_default();
        let v = token.parse::<VertexId>().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("malformed vertex {token:?}"),
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Dumps the interaction matrix: one row per border vertex, one column per
/// target community.
pub fn write_matrix_csv<W: Write>(
    mut out: W,
    matrix: &InteractionMatrix,
    border: &BorderIndex,
    targets: &TargetSet,
) -> Result<()> {
    write!(out, "border_id,vertex_id")?;
    for c in targets.targets() {
        write!(out, ",{c}")?;
    }
    writeln!(out)?;
    for j in 0..matrix.rows() {
        write!(out, "{},{}", j, border.global(j as u32))?;
        for x in matrix.row(j) {
            write!(out, ",{x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_robustness_csv<W: Write>(mut out: W, series: &[(&str, &[RobustnessPoint])]) -> Result<()> {
    writeln!(out, "set,fraction,mean_awcc,stderr")?;
    for (label, points) in series {
        for p in points.iter() {
            writeln!(out, "{label},{},{},{}", p.fraction, p.mean_awcc, p.stderr)?;
        }
    }
    Ok(())
}

pub fn write_shii_csv<W: Write>(mut out: W, estimates: &[ShiiEstimate]) -> Result<()> {
    writeln!(out, "vertex,shii_mean,shii_stderr")?;
    for e in estimates {
        writeln!(out, "{},{},{}", e.vertex, e.mean, e.stderr)?;
    }
    Ok(())
}
