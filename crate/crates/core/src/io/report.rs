//! Report files: a schema-versioned JSON envelope and a flat CSV table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lab::{ExperimentReport, StepTiming};
use crate::rational::Exact;

pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema for [`ReportFile`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub timings: Vec<StepTiming>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub payload: ExperimentReport,
    pub metadata: Metadata,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl ReportFile {
    pub fn new(report: &ExperimentReport) -> Self {
        ReportFile {
            schema_version: SCHEMA_VERSION,
            payload: report.clone(),
            metadata: Metadata {
                tool: format!("fsig {}", env!("CARGO_PKG_VERSION")),
                timings: report.timings.clone(),
            },
        }
    }

    pub fn into_report(self) -> ExperimentReport {
        let mut r = self.payload;
        r.timings = self.metadata.timings;
        r
    }
}

pub fn to_json(report: &ExperimentReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ReportFile::new(report))? + "\n")
}

/// The deterministic part of a report, without timings.
pub fn payload_json(report: &ExperimentReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn from_json(text: &str) -> Result<ExperimentReport> {
    let file: ReportFile = serde_json::from_str(text)?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::usage(format!(
            "report schema version {} is not supported (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    Ok(file.into_report())
}

pub const CSV_HEADER: [&str; 11] =
    ["schema_version", "kind", "fixture", "section", "label", "e", "q", "length", "exact", "approx", "detail"];

struct Row {
    section: &'static str,
    label: String,
    e: Option<u32>,
    q: Option<u64>,
    length: Option<u64>,
    exact: Option<Exact>,
    detail: String,
}

/// One row per sample, diagnostic, verdict, slice point and oracle case.
/// Exact values come first; the `approx` column is for human eyes only.
pub fn to_csv(report: &ExperimentReport) -> Result<String> {
    let mut rows = Vec::new();
    for t in &report.tables {
        for s in &t.samples {
            rows.push(Row {
                section: "sample",
                label: t.label.clone(),
                e: Some(s.e),
                q: Some(s.q),
                length: Some(s.length),
                exact: Some(s.estimate),
                detail: s.rounding.name().to_string(),
            });
        }
    }
    for d in &report.diagnostics {
        rows.push(Row {
            section: "diagnostic",
            label: d.name.clone(),
            e: Some(d.e),
            q: None,
            length: None,
            exact: Some(d.value),
            detail: String::new(),
        });
    }
    if let Some(c) = report.decay_constant {
        rows.push(Row {
            section: "constant",
            label: "decay_constant".into(),
            e: None,
            q: None,
            length: None,
            exact: Some(c),
            detail: String::new(),
        });
    }
    for h in &report.hyperplanes {
        let label = format!("hyperplane {}", h.sample.index);
        if h.points.is_empty() {
            rows.push(Row {
                section: "hyperplane",
                label: label.clone(),
                e: None,
                q: None,
                length: None,
                exact: None,
                detail: format!("{:?}: {}", h.status, h.detail),
            });
        }
        for pt in &h.points {
            rows.push(Row {
                section: "slice_point",
                label: format!("{label} {:?}", pt.coordinates),
                e: Some(pt.slice.e),
                q: Some(pt.slice.q),
                length: Some(pt.slice.length),
                exact: Some(pt.slice.estimate),
                detail: format!("singular={} upstream={}", pt.singular, pt.upstream.estimate),
            });
        }
    }
    for c in &report.oracle_cases {
        rows.push(Row {
            section: "oracle",
            label: format!("{} | {}", c.label, c.element),
            e: Some(1),
            q: Some(c.p as u64),
            length: None,
            exact: None,
            detail: format!("oracle={} formula={}", c.oracle, c.formula),
        });
    }
    for v in &report.verdicts {
        rows.push(Row {
            section: "verdict",
            label: v.name.clone(),
            e: None,
            q: None,
            length: None,
            exact: None,
            detail: format!("{}: {}", if v.passed { "pass" } else { "fail" }, v.detail),
        });
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in rows {
        w.write_record([
            SCHEMA_VERSION.to_string(),
            report.kind.name().to_string(),
            report.fixture.clone(),
            r.section.to_string(),
            r.label,
            opt(r.e.map(|x| x.to_string())),
            opt(r.q.map(|x| x.to_string())),
            opt(r.length.map(|x| x.to_string())),
            opt(r.exact.map(|x| x.to_string())),
            opt(r.exact.map(|x| format!("{:.6}", x.approx()))),
            r.detail,
        ])
        .map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::usage(e.to_string()))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

pub fn render(report: &ExperimentReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}
