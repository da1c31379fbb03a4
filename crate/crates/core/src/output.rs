//! Tabular datasets and their CSV / JSON renderings.
//!
//! Numbers are written with nine significant digits so identical inputs
//! give byte-identical files.

use serde_json::{json, Map, Value};

use crate::config::{Command, OutputFormat};

pub const TOOL_NAME: &str = "casimir-delta";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `v` with nine significant digits, scientific notation.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        // Avoid "-0.00000000e0".
        return "0.00000000e0".to_string();
    }
    format!("{v:.8e}")
}

/// `v` rounded to nine significant digits.
pub fn round_sig9(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    fmt_sig9(v).parse().unwrap_or(v)
}

fn json_number(v: f64) -> Value {
    serde_json::Number::from_f64(round_sig9(v))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub command: Command,
    pub config: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Extra `#` lines (warnings, notes).
    pub notes: Vec<String>,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {TOOL_NAME} {VERSION}\n"));
        out.push_str(&format!("# command: {}\n", self.command));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("# note: {note}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_sig9(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), json_number(*v));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "tool": TOOL_NAME,
            "version": VERSION,
            "command": self.command.to_string(),
            "config": config_object(&self.config),
            "notes": self.notes,
            "rows": rows,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("valid JSON");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

pub fn config_object(config: &[(&'static str, String)]) -> Value {
    let mut m = Map::new();
    for (k, v) in config {
        m.insert((*k).to_string(), Value::String(v.clone()));
    }
    Value::Object(m)
}

/// Recursively round every number in `value` to nine significant digits.
pub fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => json_number(f),
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Flatten a JSON record into `key,value` CSV lines with dotted keys.
pub fn record_to_csv(header: &[(&'static str, String)], command: Command, record: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, v) in m {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), v, out);
                }
            }
            Value::Number(n) => {
                let s = match n.as_f64() {
                    Some(f) if n.is_f64() => fmt_sig9(f),
                    _ => n.to_string(),
                };
                out.push((prefix.to_string(), s));
            }
            Value::String(s) => out.push((prefix.to_string(), s.replace(',', ";"))),
            Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
            Value::Null => out.push((prefix.to_string(), String::new())),
        }
    }
    let mut lines = Vec::new();
    walk("", record, &mut lines);
    let mut out = format!("# {TOOL_NAME} {VERSION}\n# command: {command}\n");
    for (k, v) in header {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out.push_str("quantity,value\n");
    for (k, v) in lines {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dataset {
        Dataset {
            command: Command::Fig1,
            config: vec![("t1_k", "300".into())],
            columns: vec!["a_um", "dF_real_N_per_m2"],
            rows: vec![vec![0.15, -1.234_567_890_12e-5], vec![2.0, 0.0]],
            notes: vec![],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], format!("# casimir-delta {VERSION}"));
        assert_eq!(lines[1], "# command: fig1");
        assert_eq!(lines[2], "# t1_k = 300");
        assert_eq!(lines[3], "a_um,dF_real_N_per_m2");
        assert_eq!(lines[4], "1.50000000e-1,-1.23456789e-5");
        assert_eq!(lines[5], "2.00000000e0,0.00000000e0");
    }

    #[test]
    fn json_rows_are_rounded() {
        let v = sample().to_json_value();
        assert_eq!(v["rows"][0]["dF_real_N_per_m2"].as_f64(), Some(-1.23456789e-5));
        assert_eq!(v["config"]["t1_k"], "300");
    }

    #[test]
    fn sig9_handles_negative_zero() {
        assert_eq!(fmt_sig9(-0.0), "0.00000000e0");
        assert_eq!(round_sig9(1.0 / 3.0), 0.333333333);
    }
}
