//! Artifact writers.  Every float is rendered as `{:.16e}` (17 significant
//! digits, enough to round-trip any f64 bit pattern), every line ends in LF,
//! and JSON object keys come out sorted, so identical runs produce identical
//! bytes.

use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use zaslab_core::imcf::FlowTrace;
use zaslab_core::mass::{MassKind, MassReport};
use zaslab_core::report::{CaseStatus, SuiteReport};

/// 17 significant digits; non-finite values use the same spellings as the
/// JSON encoding of mass values.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn push_indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                out.push_str(&fmt_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string encodes")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                push_indent(out, depth + 1);
                write_value(item, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            push_indent(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                push_indent(out, depth + 1);
                out.push_str(&serde_json::to_string(key).expect("key encodes"));
                out.push_str(": ");
                write_value(item, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            push_indent(out, depth);
            out.push('}');
        }
    }
}

/// Render any serializable report with the fixed float formatting.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn csv_from_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("csv header");
    for row in rows {
        w.write_record(&row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

fn mass_kind_str(kind: MassKind) -> &'static str {
    match kind {
        MassKind::Hawking => "hawking",
        MassKind::Adm => "adm",
        MassKind::Regular => "regular",
        MassKind::Zas => "zas",
    }
}

fn status_str(status: CaseStatus) -> &'static str {
    match status {
        CaseStatus::Pass => "pass",
        CaseStatus::Fail => "fail",
        CaseStatus::HypothesisUnmet => "hypothesisUnmet",
        CaseStatus::Info => "info",
    }
}

pub fn mass_csv(reports: &[MassReport]) -> String {
    let rows = reports
        .iter()
        .map(|m| {
            vec![
                mass_kind_str(m.kind).to_string(),
                m.r.map(fmt_float).unwrap_or_default(),
                fmt_float(m.value),
            ]
        })
        .collect();
    csv_from_rows(&["kind", "r", "value"], rows)
}

pub fn flow_csv(trace: &FlowTrace) -> String {
    let rows = trace
        .samples
        .iter()
        .map(|s| {
            vec![
                fmt_float(s.t),
                fmt_float(s.r),
                fmt_float(s.area),
                fmt_float(s.mean_curvature),
                fmt_float(s.hawking_mass),
            ]
        })
        .collect();
    csv_from_rows(&["t", "r", "area", "H", "m_H"], rows)
}

pub fn suite_csv(report: &SuiteReport) -> String {
    let rows = report
        .cases
        .iter()
        .map(|c| {
            vec![
                report.suite.clone(),
                c.profile.clone(),
                c.quantity.clone(),
                c.relation.clone(),
                fmt_float(c.lhs),
                fmt_float(c.rhs),
                fmt_float(c.margin),
                status_str(c.status).to_string(),
            ]
        })
        .collect();
    csv_from_rows(
        &["suite", "profile", "quantity", "relation", "lhs", "rhs", "margin", "status"],
        rows,
    )
}

/// Rows are (quantity, r, value); r may be absent for boundary limits.
pub fn capacity_csv(rows: &[(String, Option<f64>, f64)]) -> String {
    let rows = rows
        .iter()
        .map(|(q, r, v)| {
            vec![q.clone(), r.map(fmt_float).unwrap_or_default(), fmt_float(*v)]
        })
        .collect();
    csv_from_rows(&["quantity", "r", "value"], rows)
}

/// Single funnel for artifact writes: creates the directory, writes the
/// bytes as-is (all content already carries LF endings).
pub fn write_text(dir: &Path, name: &str, text: &str) -> io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, text.as_bytes())?;
    Ok(path)
}
