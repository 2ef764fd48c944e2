//! On-disk formats: line-delimited JSON instance files, tab-separated
//! results files and scaling summaries. Instance records are
//! self-contained (weights, edges and coupling are stored, not just
//! seeds), so downstream results stay reproducible even if generator
//! internals change.

use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::ComparisonRecord;
use crate::graph::{GraphModel, WeightedGraph};

/// One self-contained problem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    /// "er" or "ba".
    pub model: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    pub seed: u64,
    pub j: f64,
    pub weights: Vec<f64>,
    pub edges: Vec<(usize, usize)>,
}

impl InstanceRecord {
    pub fn graph_model(&self) -> Result<GraphModel> {
        match (self.model.as_str(), self.p, self.m) {
            ("er", Some(p), None) => Ok(GraphModel::Er { p }),
            ("ba", None, Some(m)) => Ok(GraphModel::Ba { m }),
            _ => Err(Error::Data(format!(
                "record {}: model '{}' and parameters (p={:?}, m={:?}) do not line up",
                self.id, self.model, self.p, self.m
            ))),
        }
    }

    /// Rebuild the stored graph, revalidating its invariants.
    pub fn graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(self.n, self.edges.clone(), self.weights.clone())
            .map_err(|e| Error::Data(format!("record {}: {e}", self.id)))
    }
}

/// Write instance records as one JSON object per line.
pub fn write_instances<W: Write>(mut w: W, records: &[InstanceRecord]) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r)
            .map_err(|e| Error::Data(format!("serializing record {}: {e}", r.id)))?;
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Read a line-delimited instance file. Malformed lines are reported with
/// their line number.
pub fn read_instances<R: Read>(r: R) -> Result<Vec<InstanceRecord>> {
    let mut records = Vec::new();
    for (lineno, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: InstanceRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Data(format!("line {}: {e}", lineno + 1)))?;
        records.push(rec);
    }
    Ok(records)
}

/// Like `read_instances`, but malformed lines come back as per-line errors
/// instead of failing the whole file, so batch commands can emit an error
/// row and keep going.
pub fn read_instances_lenient<R: Read>(
    r: R,
) -> Result<Vec<std::result::Result<InstanceRecord, String>>> {
    let mut records = Vec::new();
    for (lineno, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(
            serde_json::from_str::<InstanceRecord>(&line)
                .map_err(|e| format!("line {}: {e}", lineno + 1)),
        );
    }
    Ok(records)
}

/// One row of a results file.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub id: String,
    pub n: usize,
    pub model: String,
    pub param: f64,
    pub delta: f64,
    pub s_star: f64,
    pub delta_c: f64,
    pub s_star_c: f64,
    pub ratio: f64,
    pub rejected: bool,
}

pub const RESULTS_HEADER: &str =
    "id\tn\tmodel\tparam\tdelta\ts_star\tdelta_c\ts_star_c\tratio\trejected";

impl ResultRow {
    pub fn from_record(r: &ComparisonRecord) -> Self {
        Self {
            id: r.instance_id.clone(),
            n: r.n,
            model: r.model.tag().to_string(),
            param: r.model.param(),
            delta: r.delta,
            s_star: r.s_star,
            delta_c: r.delta_c,
            s_star_c: r.s_star_c,
            ratio: if r.usable() { r.delta_c / r.delta } else { f64::NAN },
            rejected: r.rejected,
        }
    }

    /// Row that records a per-instance failure without dropping the line.
    pub fn failed(id: &str, n: usize, model: &str, param: f64) -> Self {
        Self {
            id: id.to_string(),
            n,
            model: model.to_string(),
            param,
            delta: f64::NAN,
            s_star: f64::NAN,
            delta_c: f64::NAN,
            s_star_c: f64::NAN,
            ratio: f64::NAN,
            rejected: true,
        }
    }

    /// Enters statistics: kept and both gaps present.
    pub fn usable(&self) -> bool {
        !self.rejected && self.delta > 0.0 && self.delta_c > 0.0 && self.ratio.is_finite()
    }
}

/// Write the tabular results file. Floats use the shortest representation
/// that round-trips, so full double precision survives the text form.
pub fn write_results<W: Write>(mut w: W, rows: &[ResultRow]) -> Result<()> {
    writeln!(w, "{RESULTS_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.id, r.n, r.model, r.param, r.delta, r.s_star, r.delta_c, r.s_star_c, r.ratio,
            r.rejected
        )?;
    }
    Ok(())
}

pub fn read_results<R: Read>(r: R) -> Result<Vec<ResultRow>> {
    let mut lines = BufReader::new(r).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Data("empty results file".into()))??;
    if header.trim() != RESULTS_HEADER {
        return Err(Error::Data(format!("unexpected results header: {header}")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 10 {
            return Err(Error::Data(format!(
                "line {}: expected 10 columns, found {}",
                lineno + 2,
                parts.len()
            )));
        }
        let field = |k: usize| -> Result<f64> {
            parts[k]
                .parse::<f64>()
                .map_err(|e| Error::Data(format!("line {}: column {}: {e}", lineno + 2, k + 1)))
        };
        rows.push(ResultRow {
            id: parts[0].to_string(),
            n: parts[1]
                .parse()
                .map_err(|e| Error::Data(format!("line {}: n: {e}", lineno + 2)))?,
            model: parts[2].to_string(),
            param: field(3)?,
            delta: field(4)?,
            s_star: field(5)?,
            delta_c: field(6)?,
            s_star_c: field(7)?,
            ratio: field(8)?,
            rejected: parts[9]
                .parse()
                .map_err(|e| Error::Data(format!("line {}: rejected: {e}", lineno + 2)))?,
        });
    }
    Ok(rows)
}

/// One row of a scaling summary file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub model: String,
    pub param: f64,
    pub n: usize,
    pub fraction_improved: f64,
    pub fraction_lo: f64,
    pub fraction_hi: f64,
    pub geo_mean: f64,
    pub geo_lo: f64,
    pub geo_hi: f64,
    pub tiny_gap_share: f64,
}

pub const SCALING_HEADER: &str = "model\tparam\tn\tfraction_improved\tfraction_lo\tfraction_hi\tgeo_mean\tgeo_lo\tgeo_hi\ttiny_gap_share";

impl ScalingRow {
    pub fn from_point(point: &crate::experiments::ScalingPoint) -> Self {
        Self {
            model: point.model.tag().to_string(),
            param: point.model.param(),
            n: point.n,
            fraction_improved: point.stats.fraction_improved,
            fraction_lo: point.stats.fraction_ci.0,
            fraction_hi: point.stats.fraction_ci.1,
            geo_mean: point.stats.geo_mean_improvement,
            geo_lo: point.stats.geo_mean_ci.0,
            geo_hi: point.stats.geo_mean_ci.1,
            tiny_gap_share: point.tiny_gap_share,
        }
    }
}

pub fn write_scaling<W: Write>(mut w: W, rows: &[ScalingRow]) -> Result<()> {
    writeln!(w, "{SCALING_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.model,
            r.param,
            r.n,
            r.fraction_improved,
            r.fraction_lo,
            r.fraction_hi,
            r.geo_mean,
            r.geo_lo,
            r.geo_hi,
            r.tiny_gap_share
        )?;
    }
    Ok(())
}

pub fn read_scaling<R: Read>(r: R) -> Result<Vec<ScalingRow>> {
    let mut lines = BufReader::new(r).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Data("empty scaling file".into()))??;
    if header.trim() != SCALING_HEADER {
        return Err(Error::Data(format!("unexpected scaling header: {header}")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 10 {
            return Err(Error::Data(format!(
                "line {}: expected 10 columns, found {}",
                lineno + 2,
                parts.len()
            )));
        }
        let field = |k: usize| -> Result<f64> {
            parts[k]
                .parse::<f64>()
                .map_err(|e| Error::Data(format!("line {}: column {}: {e}", lineno + 2, k + 1)))
        };
        rows.push(ScalingRow {
            model: parts[0].to_string(),
            param: field(1)?,
            n: parts[2]
                .parse()
                .map_err(|e| Error::Data(format!("line {}: n: {e}", lineno + 2)))?,
            fraction_improved: field(3)?,
            fraction_lo: field(4)?,
            fraction_hi: field(5)?,
            geo_mean: field(6)?,
            geo_lo: field(7)?,
            geo_hi: field(8)?,
            tiny_gap_share: field(9)?,
        });
    }
    Ok(rows)
}
