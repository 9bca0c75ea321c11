//! Report serialization: CSV with fixed columns, or JSON mirroring them.

use std::io::Write;
use std::path::Path;

use serde_json::json;

use crate::run::CellOutcome;

pub const CSV_HEADER: &str =
    "claim_id,T,H,parameter,lhs,main_term,residual,normalizer,normalized_residual,node_count,elapsed_ms";

/// 17 significant digits, enough to reproduce every f64 bit-exactly.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_csv(outcomes: &[CellOutcome]) -> String {
    let mut out = String::with_capacity(128 * (outcomes.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for o in outcomes {
        let c = &o.cell;
        match &o.report {
            Ok(r) => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.claim_id,
                    fmt_float(r.t),
                    fmt_float(r.h),
                    fmt_float(r.parameter),
                    fmt_float(r.lhs),
                    fmt_float(r.main_term),
                    fmt_float(r.residual),
                    fmt_float(r.normalizer),
                    fmt_float(r.normalized_residual()),
                    r.node_count,
                    o.elapsed_ms
                ));
            }
            Err(_) => {
                out.push_str(&format!(
                    "{},{},{},{},NaN,NaN,NaN,NaN,NaN,0,{}\n",
                    c.claim,
                    fmt_float(c.t),
                    fmt_float(c.h),
                    fmt_float(c.parameter),
                    o.elapsed_ms
                ));
            }
        }
    }
    out
}

pub fn to_json(outcomes: &[CellOutcome]) -> String {
    let rows: Vec<serde_json::Value> = outcomes
        .iter()
        .map(|o| match &o.report {
            Ok(r) => json!({
                "claim_id": r.claim_id,
                "T": r.t,
                "H": r.h,
                "parameter": r.parameter,
                "lhs": r.lhs,
                "main_term": r.main_term,
                "residual": r.residual,
                "normalizer": r.normalizer,
                "normalized_residual": r.normalized_residual(),
                "node_count": r.node_count,
                "elapsed_ms": o.elapsed_ms,
                "error": serde_json::Value::Null,
            }),
            Err(msg) => json!({
                "claim_id": o.cell.claim,
                "T": o.cell.t,
                "H": o.cell.h,
                "parameter": o.cell.parameter,
                "lhs": serde_json::Value::Null,
                "main_term": serde_json::Value::Null,
                "residual": serde_json::Value::Null,
                "normalizer": serde_json::Value::Null,
                "normalized_residual": serde_json::Value::Null,
                "node_count": 0,
                "elapsed_ms": o.elapsed_ms,
                "error": msg,
            }),
        })
        .collect();
    // one row per line, floats at the same 17 significant digits as the CSV
    let mut text = String::from("[\n");
    for (i, row) in rows.iter().enumerate() {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigitFormatter);
        serde::Serialize::serialize(row, &mut ser).expect("json serialization");
        text.push_str("  ");
        text.push_str(std::str::from_utf8(&buf).expect("utf8 json"));
        text.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    text.push_str("]\n");
    text
}

/// Compact formatter with `write_f64` overridden to 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn emit(
    outcomes: &[CellOutcome],
    format: crate::config::OutputFormat,
    path: &Path,
) -> std::io::Result<()> {
    let payload = match format {
        crate::config::OutputFormat::Csv => to_csv(outcomes),
        crate::config::OutputFormat::Json => to_json(outcomes),
    };
    let mut file = std::fs::File::create(path)?;
    file.write_all(payload.as_bytes())
}
