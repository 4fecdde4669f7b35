//! Record and report serialization.
//!
//! JSONL and CSV are stable formats: integers that can exceed a machine word
//! (`y`, `value`) are written as decimal strings. The table format is for
//! people and may change.

use std::io::{self, Write};

use fibsum_core::search::Indices;
use fibsum_core::{SolutionRecord, VerificationReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
    Table,
}

#[derive(Serialize)]
struct RecordRow<'a> {
    sign: &'a str,
    n: Option<u64>,
    m: Option<u64>,
    y: String,
    p: u32,
    value: String,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'a str>,
}

impl<'a> From<&'a SolutionRecord> for RecordRow<'a> {
    fn from(r: &'a SolutionRecord) -> Self {
        RecordRow {
            sign: r.sign.symbol(),
            n: r.n(),
            m: r.m(),
            y: r.y.to_string(),
            p: r.p,
            value: r.value.to_string(),
            degenerate: r.degenerate,
            family: (r.indices == Indices::Diagonal).then_some("n=m"),
        }
    }
}

pub fn write_jsonl<W: Write>(out: &mut W, records: &[SolutionRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &RecordRow::from(r))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(out: &mut W, records: &[SolutionRecord]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sign", "n", "m", "y", "p", "value", "degenerate"])?;
    for r in records {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([
            r.sign.symbol().to_string(),
            opt(r.n()),
            opt(r.m()),
            r.y.to_string(),
            r.p.to_string(),
            r.value.to_string(),
            r.degenerate.to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_table<W: Write>(out: &mut W, records: &[SolutionRecord]) -> io::Result<()> {
    for r in records {
        let (n, m) = match r.indices {
            Indices::Pair { n, m } => (n.to_string(), m.to_string()),
            Indices::Diagonal => ("n".to_string(), "n".to_string()),
        };
        let lhs = format!("F_{n} {} F_{m}", r.sign);
        if r.degenerate {
            writeln!(out, "{lhs:<20} = {}", r.value)?;
        } else {
            writeln!(out, "{lhs:<20} = {}^{} = {}", r.y, r.p, r.value)?;
        }
    }
    Ok(())
}

pub fn write_records<W: Write>(
    out: &mut W,
    format: Format,
    records: &[SolutionRecord],
) -> io::Result<()> {
    match format {
        Format::Jsonl => write_jsonl(out, records),
        Format::Csv => write_csv(out, records),
        Format::Table => write_table(out, records),
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    theorem_id: &'a str,
    bounds: &'a [u64],
    witnesses: &'a [Vec<i64>],
    expected: &'a [Vec<i64>],
    verdict: &'a str,
    notes: serde_json::Map<String, serde_json::Value>,
}

/// One report as a single-line JSON object.
pub fn report_json(report: &VerificationReport) -> String {
    let notes = report
        .notes
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let json = ReportJson {
        theorem_id: report.theorem_id.as_str(),
        bounds: &report.bounds,
        witnesses: &report.witnesses,
        expected: &report.expected,
        verdict: report.verdict.as_str(),
        notes,
    };
    serde_json::to_string(&json).expect("report serializes")
}
