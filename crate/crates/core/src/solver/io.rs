//! Branch files: one JSON record per line (header, points, stop) and a
//! per-point summary CSV.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{Bifurcation, BranchPoint, StoppingReason};
use crate::error::{Result, WaveError};
use crate::io::fmt17;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum BranchRecord {
    Header {
        version: String,
        config: serde_json::Value,
        #[serde(default)]
        bifurcation: Option<Bifurcation>,
    },
    Point(BranchPoint),
    Stop(StoppingReason),
}

#[derive(Debug, Clone, Default)]
pub struct BranchFile {
    pub config: serde_json::Value,
    pub bifurcation: Option<Bifurcation>,
    pub points: Vec<BranchPoint>,
    pub stop: Option<StoppingReason>,
}

pub const SUMMARY_HEADER: &str = "s,A,N,M,Q,m,min_stag_margin,residual";

pub fn write_jsonl<W: Write>(
    mut w: W,
    config: &serde_json::Value,
    bifurcation: Option<&Bifurcation>,
    points: &[BranchPoint],
    stop: Option<&StoppingReason>,
) -> Result<()> {
    let header = BranchRecord::Header {
        version: crate::VERSION.to_string(),
        config: config.clone(),
        bifurcation: bifurcation.cloned(),
    };
    writeln!(w, "{}", serde_json::to_string(&header)?)?;
    for p in points {
        writeln!(w, "{}", serde_json::to_string(&BranchRecord::Point(p.clone()))?)?;
    }
    if let Some(s) = stop {
        writeln!(w, "{}", serde_json::to_string(&BranchRecord::Stop(*s))?)?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<BranchFile> {
    let mut out = BranchFile::default();
    let mut seen_header = false;
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: BranchRecord =
            serde_json::from_str(&line).map_err(|e| WaveError::Parse(format!("line {}: {e}", i + 1)))?;
        match rec {
            BranchRecord::Header {
                config, bifurcation, ..
            } => {
                out.config = config;
                out.bifurcation = bifurcation;
                seen_header = true;
            }
            BranchRecord::Point(p) => out.points.push(p),
            BranchRecord::Stop(s) => out.stop = Some(s),
        }
    }
    if !seen_header {
        return Err(WaveError::Parse("branch file has no header record".into()));
    }
    Ok(out)
}

/// Config echo as `# key = value` lines.
pub fn write_comment_block<W: Write>(mut w: W, config: &serde_json::Value) -> Result<()> {
    writeln!(w, "# version = {}", crate::VERSION)?;
    if let Some(map) = config.as_object() {
        for (k, v) in map {
            match v {
                serde_json::Value::String(s) => writeln!(w, "# {k} = {s}")?,
                other => writeln!(w, "# {k} = {other}")?,
            }
        }
    }
    Ok(())
}

pub fn write_summary_csv<W: Write>(mut w: W, config: &serde_json::Value, points: &[BranchPoint]) -> Result<()> {
    write_comment_block(&mut w, config)?;
    writeln!(w, "{SUMMARY_HEADER}")?;
    for p in points {
        let row = [
            p.arclength_s,
            p.amplitude,
            p.slope_n,
            p.convexity_m,
            p.params.q,
            p.params.m,
            p.min_stag_margin(),
            p.residual(),
        ];
        let cells: Vec<String> = row.iter().map(|&v| fmt17(v)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}
