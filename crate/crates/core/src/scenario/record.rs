//! Line-delimited run records.
//!
//! One record per line, entries separated by tabs. Numbers are written as
//! `key:<value>[<unit>]` using the shortest decimal that parses back to the
//! same `f64`, so every numeric field round-trips bit for bit. Text entries
//! are written as `key:"<json string>"`.

use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum RecordValue {
    Number { value: f64, unit: String },
    Text(String),
}

impl fmt::Display for RecordValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordValue::Number { value, unit } => write!(f, "{value:e}[{unit}]"),
            RecordValue::Text(s) => f.write_str(&serde_json::to_string(s).expect("string serializes")),
        }
    }
}

/// Key under which the wall-clock time of the run is stored.
pub const TIMESTAMP_KEY: &str = "timestamp";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunRecord {
    entries: Vec<(String, RecordValue)>,
}

impl RunRecord {
    pub(crate) fn push_number(&mut self, key: &str, value: f64, unit: &str) {
        self.push(key, RecordValue::Number { value, unit: unit.to_string() });
    }

    pub(crate) fn push_text(&mut self, key: &str, text: impl Into<String>) {
        self.push(key, RecordValue::Text(text.into()));
    }

    fn push(&mut self, key: &str, value: RecordValue) {
        debug_assert!(self.entry(key).is_none(), "duplicate record key {key}");
        self.entries.push((key.to_string(), value));
    }

    pub fn entries(&self) -> &[(String, RecordValue)] {
        &self.entries
    }

    pub fn entry(&self, key: &str) -> Option<&RecordValue> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        match self.entry(key)? {
            RecordValue::Number { value, .. } => Some(*value),
            RecordValue::Text(_) => None,
        }
    }

    pub fn unit(&self, key: &str) -> Option<&str> {
        match self.entry(key)? {
            RecordValue::Number { unit, .. } => Some(unit),
            RecordValue::Text(_) => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.entry(key)? {
            RecordValue::Text(s) => Some(s),
            RecordValue::Number { .. } => None,
        }
    }

    /// Numeric keys in record order.
    pub fn numeric_keys(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(|(_, v)| matches!(v, RecordValue::Number { .. }))
            .map(|(k, _)| k.as_str())
    }

    /// Copy with the timestamp entry removed, for determinism comparisons.
    pub fn without_timestamp(&self) -> Self {
        Self {
            entries: self.entries.iter().filter(|(k, _)| k != TIMESTAMP_KEY).cloned().collect(),
        }
    }

    pub fn to_line(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join("\t")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let line = line.trim_end_matches(['\n', '\r']);
        let mut record = Self::default();
        for field in line.split('\t') {
            let (key, raw) = field
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("record entry without ':' separator: {field:?}")))?;
            let value = if raw.starts_with('"') {
                RecordValue::Text(
                    serde_json::from_str(raw).map_err(|e| Error::Config(format!("record entry `{key}`: {e}")))?,
                )
            } else {
                let bad = || Error::Config(format!("record entry `{key}`: expected <number>[<unit>], got {raw:?}"));
                let (num, rest) = raw.split_once('[').ok_or_else(bad)?;
                let unit = rest.strip_suffix(']').ok_or_else(bad)?;
                RecordValue::Number {
                    value: num.parse().map_err(|_| bad())?,
                    unit: unit.to_string(),
                }
            };
            if record.entry(key).is_some() {
                return Err(Error::Config(format!("duplicate record key `{key}`")));
            }
            record.entries.push((key.to_string(), value));
        }
        Ok(record)
    }

    /// Appends the record as one line to `path`, creating the file if needed.
    pub fn append_to(&self, path: &Path) -> Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(file, "{}", self.to_line())?;
        Ok(())
    }

    /// Reads every record in a line-delimited file.
    pub fn read_all(path: &Path) -> Result<Vec<Self>> {
        std::fs::read_to_string(path)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(Self::parse_line)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn line_format() {
        let mut r = RunRecord::default();
        r.push_number("eta_c", 0.627, "1");
        r.push_number("omega_v", 2.4e6, "rad/s");
        r.push_text("label", "rb\t\"x\"");
        assert_eq!(r.to_line(), "eta_c:6.27e-1[1]\tomega_v:2.4e6[rad/s]\tlabel:\"rb\\t\\\"x\\\"\"");
        assert_eq!(RunRecord::parse_line(&r.to_line()).unwrap(), r);
        assert_eq!(r.unit("omega_v"), Some("rad/s"));
        assert_eq!(r.text("label"), Some("rb\t\"x\""));
    }

    #[test]
    fn malformed_lines_rejected() {
        for bad in ["nocolon", "a:1.0", "a:1.0[m", "a:x[m]", "a:1[m]\ta:2[m]"] {
            assert!(RunRecord::parse_line(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn numbers_round_trip_exactly(values in prop::collection::vec(any::<f64>(), 1..20)) {
            let mut r = RunRecord::default();
            for (i, v) in values.iter().enumerate() {
                r.push_number(&format!("k{i}"), *v, "J");
            }
            let back = RunRecord::parse_line(&r.to_line()).unwrap();
            for (i, v) in values.iter().enumerate() {
                let got = back.get(&format!("k{i}")).unwrap();
                prop_assert!(got.to_bits() == v.to_bits() || (got.is_nan() && v.is_nan()));
            }
        }
    }
}
