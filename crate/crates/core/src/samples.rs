//! Two-sample ingestion, ECDF evaluation and log-log plot data.
//!
//! A [`Sample`] is always stored sorted, so every downstream computation is
//! invariant to the row order of the input.

use std::io::{Read, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest group size for which the four-argument kernel can be evaluated.
pub const MIN_SAMPLE_SIZE: usize = 2;

/// One group's observations in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    label: String,
    values: Vec<f64>,
}

impl Sample {
    pub fn new(label: impl Into<String>, mut values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain {
                name: "observation",
                value: *bad,
                reason: "observations must be finite",
            });
        }
        if values.len() < MIN_SAMPLE_SIZE {
            return Err(Error::InsufficientData {
                group: label,
                needed: MIN_SAMPLE_SIZE,
                got: values.len(),
            });
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { label, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of observations that are negative. The rank statistics are well
    /// defined for any real data, but reversed-hazard models assume a
    /// nonnegative support, so callers usually surface this as a warning.
    pub fn negative_count(&self) -> usize {
        self.values.partition_point(|&v| v < 0.0)
    }

    /// Right-continuous empirical CDF: the fraction of observations `<= t`.
    pub fn ecdf(&self, t: f64) -> f64 {
        self.count_at_most(t) as f64 / self.len() as f64
    }

    /// Number of observations strictly below `t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.values.partition_point(|&v| v < t)
    }

    /// Number of observations at or below `t`.
    pub fn count_at_most(&self, t: f64) -> usize {
        self.values.partition_point(|&v| v <= t)
    }

    /// `log(-log(F_n(t)))` at every distinct observed value with `0 < F_n(t) < 1`.
    ///
    /// The point at the sample maximum (where `F_n = 1`) is dropped instead of
    /// clamped, so the series is empty when all observations coincide.
    pub fn loglog_series(&self) -> LogLogSeries {
        let m = self.len() as f64;
        let mut points = Vec::new();
        let mut i = 0;
        while i < self.values.len() {
            let t = self.values[i];
            // Skip to the last copy of a tied value.
            let upto = i + self.values[i..].partition_point(|&v| v <= t);
            if upto < self.values.len() {
                let f = upto as f64 / m;
                points.push(LogLogPoint {
                    t,
                    loglog: (-f.ln()).ln(),
                });
            }
            i = upto;
        }
        LogLogSeries {
            label: self.label.clone(),
            points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogPoint {
    pub t: f64,
    pub loglog: f64,
}

/// Plot-ready `log(-log(F_n(t)))` curve for one group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogLogSeries {
    pub label: String,
    pub points: Vec<LogLogPoint>,
}

/// Writes one or more series as CSV with columns `label,t,loglog`.
///
/// Floats use the shortest representation that round-trips exactly.
pub fn write_loglog_csv<W: Write>(series: &[LogLogSeries], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["label", "t", "loglog"]).map_err(io_err)?;
    for s in series {
        for p in &s.points {
            w.write_record([s.label.as_str(), &p.t.to_string(), &p.loglog.to_string()])
                .map_err(io_err)?;
        }
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// How the two groups are laid out in the input CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSpec {
    /// One column per group. The first names the baseline (`X`, drawn from
    /// `F0`) group, the second the comparison (`Y`, drawn from `F`) group.
    /// A shorter group may end early; its trailing cells are then empty.
    TwoColumns { x: String, y: String },
    /// Long format: a label column plus a value column. Rows whose label
    /// equals `baseline` form `X`; the only other label present forms `Y`.
    Grouped {
        group: String,
        value: String,
        baseline: String,
    },
}

/// Reads a headered UTF-8 CSV into the baseline and comparison samples.
pub fn parse_two_samples<R: Read>(source: R, spec: &ColumnSpec) -> Result<(Sample, Sample)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| Error::Schema(format!("cannot read header row: {e}")))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema(format!("column `{name}` not found in header")))
    };

    match spec {
        ColumnSpec::TwoColumns { x, y } => {
            let (xi, yi) = (column(x)?, column(y)?);
            let mut xs = RaggedColumn::new(x);
            let mut ys = RaggedColumn::new(y);
            for (row, record) in reader.records().enumerate() {
                let row = row + 1;
                let record = record.map_err(|e| csv_err(row, e))?;
                xs.push(row, record.get(xi).unwrap_or(""))?;
                ys.push(row, record.get(yi).unwrap_or(""))?;
            }
            Ok((
                Sample::new(x.as_str(), xs.values)?,
                Sample::new(y.as_str(), ys.values)?,
            ))
        }
        ColumnSpec::Grouped {
            group,
            value,
            baseline,
        } => {
            let (gi, vi) = (column(group)?, column(value)?);
            let mut base = Vec::new();
            let mut other: Option<(String, Vec<f64>)> = None;
            let mut saw_baseline = false;
            for (row, record) in reader.records().enumerate() {
                let row = row + 1;
                let record = record.map_err(|e| csv_err(row, e))?;
                let label = record.get(gi).unwrap_or("");
                if label.is_empty() {
                    return Err(Error::Parse {
                        row,
                        column: group.clone(),
                        message: "missing group label".into(),
                    });
                }
                let v = parse_cell(row, value, record.get(vi).unwrap_or(""))?;
                if label == baseline {
                    saw_baseline = true;
                    base.push(v);
                    continue;
                }
                match &mut other {
                    None => other = Some((label.to_string(), vec![v])),
                    Some((name, vals)) if name == label => vals.push(v),
                    Some((name, _)) => {
                        return Err(Error::Schema(format!(
                            "unknown group label `{label}` at row {row}: expected `{baseline}` or `{name}`"
                        )))
                    }
                }
            }
            if !saw_baseline {
                return Err(Error::Schema(format!(
                    "baseline label `{baseline}` does not occur in column `{group}`"
                )));
            }
            let (other_label, other_vals) =
                other.unwrap_or_else(|| (format!("not {baseline}"), Vec::new()));
            Ok((
                Sample::new(baseline.as_str(), base)?,
                Sample::new(other_label, other_vals)?,
            ))
        }
    }
}

/// Writes a pair of samples in the two-column layout read by
/// [`ColumnSpec::TwoColumns`], using the sample labels as headers.
pub fn write_two_samples<W: Write>(x: &Sample, y: &Sample, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([x.label(), y.label()]).map_err(io_err)?;
    let cell = |s: &Sample, i: usize| s.values().get(i).map(f64::to_string).unwrap_or_default();
    for i in 0..x.len().max(y.len()) {
        w.write_record([cell(x, i), cell(y, i)]).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// A column that may stop early; a value after a blank cell is a missing value.
struct RaggedColumn<'a> {
    name: &'a str,
    values: Vec<f64>,
    ended_at: Option<usize>,
}

impl<'a> RaggedColumn<'a> {
    fn new(name: &'a str) -> Self {
        Self {
            name,
            values: Vec::new(),
            ended_at: None,
        }
    }

    fn push(&mut self, row: usize, cell: &str) -> Result<()> {
        if cell.is_empty() {
            self.ended_at.get_or_insert(row);
            return Ok(());
        }
        if let Some(blank) = self.ended_at {
            return Err(Error::Parse {
                row: blank,
                column: self.name.to_string(),
                message: "missing value".into(),
            });
        }
        self.values.push(parse_cell(row, self.name, cell)?);
        Ok(())
    }
}

fn parse_cell(row: usize, column: &str, cell: &str) -> Result<f64> {
    let err = |message: String| Error::Parse {
        row,
        column: column.to_string(),
        message,
    };
    if cell.is_empty() {
        return Err(err("missing value".into()));
    }
    let v: f64 = cell
        .parse()
        .map_err(|_| err(format!("`{cell}` is not a number")))?;
    if !v.is_finite() {
        return Err(err(format!("`{cell}` is not finite")));
    }
    Ok(v)
}

fn csv_err(row: usize, e: csv::Error) -> Error {
    Error::Parse {
        row,
        column: String::new(),
        message: e.to_string(),
    }
}

fn io_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
