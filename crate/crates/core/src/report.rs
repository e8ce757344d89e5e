//! Report rows and their CSV/JSON renderings.
//!
//! Numbers are written with 17 significant digits, so identical inputs give
//! byte-identical files.

use std::cmp::Ordering;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 6] = ["symbol_id", "alpha", "estimator", "index", "value", "flags"];

/// One line of a report. Summary rows carry the bare estimator name;
/// trace rows append `/trace`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub symbol_id: String,
    pub alpha: f64,
    pub estimator: String,
    pub index: f64,
    pub value: f64,
    pub flags: String,
}

impl ReportRow {
    pub fn new(symbol_id: &str, alpha: f64, estimator: &str, index: f64, value: f64, flags: &[&str]) -> Self {
        Self {
            symbol_id: symbol_id.to_string(),
            alpha,
            estimator: estimator.to_string(),
            index,
            value,
            flags: flags.join(";"),
        }
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.symbol_id
            .cmp(&other.symbol_id)
            .then(self.alpha.total_cmp(&other.alpha))
            .then(self.estimator.cmp(&other.estimator))
            .then(self.index.total_cmp(&other.index))
    }
}

/// `{:.16e}`: 17 significant digits, correctly rounded.
pub fn render_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows plus `key = value` metadata.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub metadata: Vec<(String, String)>,
    rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(metadata: Vec<(String, String)>) -> Self {
        Self { metadata, rows: Vec::new() }
    }

    /// Adds a row; values must be finite and non-negative.
    pub fn push(&mut self, row: ReportRow) -> Result<()> {
        if !row.value.is_finite() || row.value < 0.0 || !row.index.is_finite() || !row.alpha.is_finite() {
            return Err(Error::ParameterDomain(format!(
                "report value for {} / {} must be finite and non-negative, got {}",
                row.symbol_id, row.estimator, row.value
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = ReportRow>) -> Result<()> {
        for r in rows {
            self.push(r)?;
        }
        Ok(())
    }

    /// Rows in `(symbol_id, alpha, estimator, index)` order.
    pub fn rows(&self) -> Vec<ReportRow> {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.key_cmp(b));
        rows
    }

    /// Summary rows only.
    pub fn summary(&self) -> Vec<ReportRow> {
        self.rows().into_iter().filter(|r| !r.estimator.ends_with("/trace")).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(io)?;
        for r in self.rows() {
            w.write_record([
                r.symbol_id.as_str(),
                &render_number(r.alpha),
                &r.estimator,
                &render_number(r.index),
                &render_number(r.value),
                &r.flags,
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let s = |t: &str| serde_json::to_string(t).expect("strings serialize");
        let mut out = String::from("{\n  \"metadata\": {\n");
        let meta: Vec<String> = self
            .metadata
            .iter()
            .map(|(k, v)| format!("    {}: {}", s(k), s(v)))
            .collect();
        out.push_str(&meta.join(",\n"));
        out.push_str("\n  },\n  \"rows\": [\n");
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                format!(
                    "    {{\"symbol_id\": {}, \"alpha\": {}, \"estimator\": {}, \"index\": {}, \"value\": {}, \"flags\": {}}}",
                    s(&r.symbol_id),
                    render_number(r.alpha),
                    s(&r.estimator),
                    render_number(r.index),
                    render_number(r.value),
                    s(&r.flags)
                )
            })
            .collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("\n  ]\n}\n");
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, format: Format, path: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match path {
            Some(p) => fs::write(p, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(vec![("version".into(), "1".into())]);
        r.push(ReportRow::new("b", 1.0, "E1", 0.5, 0.25, &[])).unwrap();
        r.push(ReportRow::new("a, with comma", 2.0, "E2", 3.0, 1.0 / 3.0, &["extrapolated"])).unwrap();
        r.push(ReportRow::new("a, with comma", 1.0, "E1/trace", 0.75, 1.0, &["x", "y"])).unwrap();
        r.push(ReportRow::new("a, with comma", 1.0, "E1", 0.75, 1.0, &[])).unwrap();
        r
    }

    #[test]
    fn numbers_have_seventeen_digits() {
        assert_eq!(render_number(1.0 / 3.0), "3.3333333333333331e-1");
        assert_eq!(render_number(0.0), "0.0000000000000000e0");
        assert_eq!(render_number(2.0), "2.0000000000000000e0");
    }

    #[test]
    fn rows_sorted() {
        let rows = sample().rows();
        let keys: Vec<(&str, f64, &str)> = rows.iter().map(|r| (r.symbol_id.as_str(), r.alpha, r.estimator.as_str())).collect();
        assert_eq!(
            keys,
            vec![("a, with comma", 1.0, "E1"), ("a, with comma", 1.0, "E1/trace"), ("a, with comma", 2.0, "E2"), ("b", 1.0, "E1")]
        );
        assert_eq!(sample().summary().len(), 3);
    }

    #[test]
    fn csv_and_json() {
        let csv = sample().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "symbol_id,alpha,estimator,index,value,flags");
        assert_eq!(
            lines.next().unwrap(),
            "\"a, with comma\",1.0000000000000000e0,E1,7.5000000000000000e-1,1.0000000000000000e0,"
        );
        let json: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 4);
        assert_eq!(json["rows"][1]["flags"], "x;y");
        assert_eq!(json["metadata"]["version"], "1");
    }

    #[test]
    fn rejects_bad_values() {
        let mut r = Report::default();
        assert!(r.push(ReportRow::new("a", 1.0, "E1", 0.0, -1.0, &[])).is_err());
        assert!(r.push(ReportRow::new("a", 1.0, "E1", 0.0, f64::NAN, &[])).is_err());
    }
}
