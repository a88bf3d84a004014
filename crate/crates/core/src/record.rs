//! Tabular output records and their CSV / JSON serialization.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), which parses
//! back to the identical `f64`. NaN is written as `NaN` in CSV and `null`
//! in JSON.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::error::{invalid, Result};

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cell::Int(a), Cell::Int(b)) => a == b,
            (Cell::Real(a), Cell::Real(b)) => a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()),
            (Cell::Text(a), Cell::Text(b)) => a == b,
            _ => false,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Real(r) => Some(*r),
            Cell::Text(_) => None,
        }
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(r) => format_real(*r),
            Cell::Text(t) => t.clone(),
        }
    }

    fn parse_csv(s: &str) -> Cell {
        if let Ok(i) = s.parse::<i64>() {
            Cell::Int(i)
        } else if let Ok(r) = s.parse::<f64>() {
            Cell::Real(r)
        } else {
            Cell::Text(s.to_string())
        }
    }
}

/// `{:.16e}`, or `NaN` / `inf` / `-inf`.
pub fn format_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

struct Real17(f64);

impl Serialize for Real17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(format_real(self.0)).map_err(serde::ser::Error::custom)?.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Real(r) => Real17(*r).serialize(s),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub version: String,
    pub tolerances: BTreeMap<String, f64>,
    /// Seconds since the Unix epoch; excluded from payload comparisons.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Metadata,
}

struct Tolerances<'a>(&'a BTreeMap<String, f64>);

impl Serialize for Tolerances<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, &Real17(*v))?;
        }
        m.end()
    }
}

impl Serialize for Metadata {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("version", &self.version)?;
        m.serialize_entry("tolerances", &Tolerances(&self.tolerances))?;
        m.serialize_entry("timestamp", &self.timestamp)?;
        m.end()
    }
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("command", &self.command)?;
        m.serialize_entry("parameters", &self.parameters)?;
        m.serialize_entry("columns", &self.columns)?;
        m.serialize_entry("rows", &self.rows)?;
        m.serialize_entry("metadata", &self.metadata)?;
        m.end()
    }
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION").to_string(),
                tolerances: BTreeMap::new(),
                timestamp,
            },
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.metadata.tolerances.insert(key.to_string(), value);
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(invalid(format!("row has {} cells, expected {}", row.len(), self.columns.len())));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Numeric values of one column; text cells are skipped.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().filter_map(|r| r[idx].as_f64()).collect())
    }

    /// Header plus rows, the part of the record that is reproducible.
    pub fn payload_eq(&self, other: &Self) -> bool {
        self.columns == other.columns && self.rows == other.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.command));
        out.push_str(&format!("# version: {}\n", self.metadata.version));
        out.push_str(&format!("# timestamp: {}\n", self.metadata.timestamp));
        for (k, v) in &self.parameters {
            out.push_str(&format!("# param: {k}={v}\n"));
        }
        for (k, v) in &self.metadata.tolerances {
            out.push_str(&format!("# tolerance: {k}={}\n", format_real(*v)));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rec = OutputRecord::new("", &[]);
        rec.metadata.timestamp = 0;
        let mut body = String::new();
        for line in text.lines() {
            let Some(meta) = line.strip_prefix("# ") else {
                body.push_str(line);
                body.push('\n');
                continue;
            };
            let (key, value) = meta.split_once(": ").ok_or_else(|| invalid(format!("bad metadata line: {line}")))?;
            match key {
                "command" => rec.command = value.to_string(),
                "version" => rec.metadata.version = value.to_string(),
                "timestamp" => rec.metadata.timestamp = value.parse().map_err(|_| invalid("bad timestamp"))?,
                "param" | "tolerance" => {
                    let (k, v) = value.split_once('=').ok_or_else(|| invalid(format!("bad metadata line: {line}")))?;
                    if key == "param" {
                        rec.parameters.insert(k.to_string(), v.to_string());
                    } else {
                        let t = v.parse().map_err(|_| invalid(format!("bad tolerance: {v}")))?;
                        rec.metadata.tolerances.insert(k.to_string(), t);
                    }
                }
                _ => return Err(invalid(format!("unknown metadata key: {key}"))),
            }
        }
        let mut r = csv::Reader::from_reader(body.as_bytes());
        rec.columns = r
            .headers()
            .map_err(|e| invalid(format!("bad csv header: {e}")))?
            .iter()
            .map(str::to_string)
            .collect();
        for row in r.records() {
            let row = row.map_err(|e| invalid(format!("bad csv row: {e}")))?;
            rec.push_row(row.iter().map(Cell::parse_csv).collect())?;
        }
        Ok(rec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| invalid(format!("bad json: {e}")))?;
        let field = |name: &str| v.get(name).ok_or_else(|| invalid(format!("json record lacks '{name}'")));
        let as_str = |x: &Value| x.as_str().map(str::to_string).ok_or_else(|| invalid("expected a string"));
        let mut rec = OutputRecord::new(&as_str(field("command")?)?, &[]);
        for (k, val) in field("parameters")?.as_object().ok_or_else(|| invalid("parameters must be an object"))? {
            rec.parameters.insert(k.clone(), as_str(val)?);
        }
        rec.columns = field("columns")?
            .as_array()
            .ok_or_else(|| invalid("columns must be an array"))?
            .iter()
            .map(as_str)
            .collect::<Result<_>>()?;
        for row in field("rows")?.as_array().ok_or_else(|| invalid("rows must be an array"))? {
            let cells = row
                .as_array()
                .ok_or_else(|| invalid("row must be an array"))?
                .iter()
                .map(|c| match c {
                    Value::Null => Ok(Cell::Real(f64::NAN)),
                    Value::String(s) => Ok(Cell::Text(s.clone())),
                    Value::Number(n) => match n.as_i64() {
                        Some(i) => Ok(Cell::Int(i)),
                        None => n.as_f64().map(Cell::Real).ok_or_else(|| invalid("bad number")),
                    },
                    _ => Err(invalid("unsupported cell type")),
                })
                .collect::<Result<Vec<Cell>>>()?;
            rec.push_row(cells)?;
        }
        let meta = field("metadata")?;
        rec.metadata.version = meta.get("version").and_then(Value::as_str).unwrap_or_default().to_string();
        rec.metadata.timestamp = meta.get("timestamp").and_then(Value::as_u64).unwrap_or(0);
        if let Some(t) = meta.get("tolerances").and_then(Value::as_object) {
            for (k, val) in t {
                rec.metadata.tolerances.insert(k.clone(), val.as_f64().unwrap_or(f64::NAN));
            }
        }
        Ok(rec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("elements", &["p", "value", "route"]);
        r.param("alpha", 0.5).param("route", "closed");
        r.tolerance("abs_tol", 1e-12);
        r.push_row(vec![Cell::Int(0), Cell::Real(0.1 + 0.2), "closed".into()]).unwrap();
        r.push_row(vec![Cell::Int(-3), Cell::Real(f64::NAN), "singular".into()]).unwrap();
        r.push_row(vec![Cell::Int(7), Cell::Real(-1.0), "closed".into()]).unwrap();
        r
    }

    #[test]
    fn csv_layout() {
        let text = sample().to_csv();
        assert!(text.contains("# command: elements\n"));
        assert!(text.contains("# param: alpha=0.5\n"));
        assert!(text.contains("\np,value,route\n0,3.0000000000000004e-1,closed\n"));
        assert!(text.contains("-3,NaN,singular"));
    }

    #[test]
    fn json_layout() {
        let text = sample().to_json();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["columns"][1], "value");
        assert!(text.contains("3.0000000000000004e-1"));
        assert!(v["rows"][1][1].is_null());
        assert!(text.contains("\"abs_tol\":9.9999999999999998e-13"));
    }

    #[test]
    fn round_trips() {
        let r = sample();
        let c = OutputRecord::from_csv(&r.to_csv()).unwrap();
        assert_eq!(c, r);
        let j = OutputRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(j, r);
    }

    #[test]
    fn row_width_is_checked() {
        let mut r = OutputRecord::new("x", &["a", "b"]);
        assert!(r.push_row(vec![Cell::Int(1)]).is_err());
        assert!(OutputRecord::from_json("{").is_err());
        assert!(OutputRecord::from_csv("# nonsense\n").is_err());
    }

    proptest! {
        #[test]
        fn reals_round_trip_bit_exactly(vals in proptest::collection::vec(any::<f64>(), 1..20)) {
            let mut r = OutputRecord::new("t", &["i", "x"]);
            for (i, v) in vals.iter().enumerate() {
                r.push_row(vec![Cell::Int(i as i64), Cell::Real(*v)]).unwrap();
            }
            let c = OutputRecord::from_csv(&r.to_csv()).unwrap();
            prop_assert!(c.payload_eq(&r));
            let j = OutputRecord::from_json(&r.to_json()).unwrap();
            // JSON has no infinities; those come back as NaN
            for (a, b) in j.rows.iter().zip(&r.rows) {
                match (&a[1], &b[1]) {
                    (Cell::Real(x), Cell::Real(y)) if y.is_finite() => prop_assert_eq!(x.to_bits(), y.to_bits()),
                    (Cell::Real(x), Cell::Real(_)) => prop_assert!(x.is_nan()),
                    _ => prop_assert!(false),
                }
            }
        }
    }
}
