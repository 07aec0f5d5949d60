use std::fmt;
use std::io::Write;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// A printed formula with a known problem disagrees with the oracle.
    #[serde(rename = "REPORTED-DISCREPANCY")]
    Reported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED-DISCREPANCY",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v.into())
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

/// Ordered case parameters; serialized as a JSON object in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseParams(pub Vec<(&'static str, ParamValue)>);

impl CaseParams {
    pub fn with(mut self, key: &'static str, value: impl Into<ParamValue>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for CaseParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                ParamValue::Int(i) => map.serialize_entry(k, i)?,
                ParamValue::Text(s) => map.serialize_entry(k, s)?,
            }
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub params: CaseParams,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl CaseRecord {
    /// A case that passes iff `actual == expected`; mismatches count as
    /// failures unless `suspect` is set, in which case they are reported.
    pub fn compare(
        id: impl Into<String>,
        params: CaseParams,
        expected: String,
        actual: String,
        suspect: bool,
    ) -> Self {
        let status = if expected == actual {
            Status::Pass
        } else if suspect {
            Status::Reported
        } else {
            Status::Fail
        };
        Self {
            id: id.into(),
            params,
            expected,
            actual,
            status,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    pub duration_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseRecord>, duration_ms: u128) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Reported => summary.reported += 1,
            }
        }
        Self {
            suite: suite.into(),
            cases,
            summary,
            duration_ms,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn cases_with_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a CaseRecord> + 'a {
        self.cases.iter().filter(move |c| c.id == id)
    }

    /// One line per case plus a summary line; no timing, so output is
    /// byte-identical across runs.
    pub fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        for c in &self.cases {
            writeln!(
                out,
                "{} {} [{}] expected={} actual={}",
                c.status, c.id, c.params, c.expected, c.actual
            )?;
        }
        let s = self.summary;
        writeln!(
            out,
            "suite={} cases={} pass={} fail={} reported={}",
            self.suite,
            self.cases.len(),
            s.pass,
            s.fail,
            s.reported
        )
    }

    pub fn write_csv(&self, out: &mut impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["id", "params", "expected", "actual", "status"])?;
        for c in &self.cases {
            w.write_record([
                c.id.as_str(),
                &c.params.to_string(),
                &c.expected,
                &c.actual,
                c.status.as_str(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, out: &mut impl Write) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out).map_err(serde_json::Error::io)
    }
}
