//! Machine-readable key-value reports with deterministic field order.
//!
//! One `key value` pair per line, keys dotted by section, values either
//! plain tokens or space-separated lists. Floats are rendered with
//! twelve significant digits so reports are reproducible bit for bit.

use std::fmt::Write as _;

#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

/// Twelve significant digits, locale-free; negative zero collapses to
/// zero so equal values always render identically.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.push_str("report", command);
        r
    }

    pub fn push_str(&mut self, key: &str, value: impl AsRef<str>) {
        self.lines.push((key.to_string(), value.as_ref().to_string()));
    }

    pub fn push_usize(&mut self, key: &str, value: usize) {
        self.push_str(key, value.to_string());
    }

    pub fn push_bool(&mut self, key: &str, value: bool) {
        self.push_str(key, if value { "true" } else { "false" });
    }

    pub fn push_float(&mut self, key: &str, value: f64) {
        self.push_str(key, fmt_float(value));
    }

    pub fn push_floats(&mut self, key: &str, values: &[f64]) {
        let mut joined = String::new();
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                joined.push(' ');
            }
            joined.push_str(&fmt_float(*v));
        }
        self.push_str(key, joined);
    }

    pub fn push_usizes(&mut self, key: &str, values: &[usize]) {
        let joined = values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        self.push_str(key, joined);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k} {v}");
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}
