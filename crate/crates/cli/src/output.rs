//! Report envelope and the three output formats.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use spectrum_core::corners::{ENTROPY_TOL, MEMBERSHIP_SLACK};
use spectrum_core::params::{COMPARE_SLACK, THETA_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Wraps a result with everything needed to rerun it.
pub fn envelope(argv: &[String], seed: u64, cap: usize, result: Value) -> Value {
    json!({
        "command": argv.join(" "),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "materialization_cap": cap,
        "tolerances": {
            "theta_relative": THETA_TOL,
            "entropy_bits": ENTROPY_TOL,
            "membership_slack": MEMBERSHIP_SLACK,
            "compare_slack": COMPARE_SLACK,
        },
        "result": result,
    })
}

/// `(dotted path, scalar)` pairs in document order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), items.join(" ")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Csv | Format::Text => {
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            let mut s = String::new();
            if format == Format::Csv {
                s.push_str("field,value\n");
                for (k, v) in rows {
                    s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
                }
            } else {
                let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                for (k, v) in rows {
                    s.push_str(&format!("{k:<width$}  {v}\n"));
                }
            }
            s
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

/// A numeric value with its provenance tag.
pub fn tagged(value: Value, kind: &str, detail: impl Into<String>) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), value);
    m.insert("provenance".into(), json!({"kind": kind, "detail": detail.into()}));
    Value::Object(m)
}
