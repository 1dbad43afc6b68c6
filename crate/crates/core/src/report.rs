//! Row-oriented reports with stable JSON and CSV encodings.

use std::path::Path;

use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::error::{Error, Result};

/// Outcome of one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A known discrepancy with printed reference data; does not fail the run.
    Flagged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Flagged => "flagged",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Ordered `(key, value)` pairs; values are strings so no precision is lost.
pub type Fields = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub inputs: Fields,
    pub computed: Fields,
    pub expected: Fields,
    pub deviation: Fields,
    pub verdict: Verdict,
}

impl Row {
    pub fn new(inputs: Fields) -> Self {
        Row { inputs, computed: Vec::new(), expected: Vec::new(), deviation: Vec::new(), verdict: Verdict::Pass }
    }

    pub fn computed(mut self, key: &str, value: impl Into<String>) -> Self {
        self.computed.push((key.into(), value.into()));
        self
    }

    pub fn expected(mut self, key: &str, value: impl Into<String>) -> Self {
        self.expected.push((key.into(), value.into()));
        self
    }

    pub fn deviation(mut self, key: &str, value: impl Into<String>) -> Self {
        self.deviation.push((key.into(), value.into()));
        self
    }

    pub fn verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    /// Looks up `section.key`, e.g. `get("inputs", "n")`.
    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        let fields = match section {
            "inputs" => &self.inputs,
            "computed" => &self.computed,
            "expected" => &self.expected,
            "deviation" => &self.deviation,
            _ => return None,
        };
        fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn sections(&self) -> [(&'static str, &Fields); 4] {
        [
            ("inputs", &self.inputs),
            ("computed", &self.computed),
            ("expected", &self.expected),
            ("deviation", &self.deviation),
        ]
    }
}

/// Pass, fail and flagged counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Summary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}; use csv or json"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub meta: Fields,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let meta = vec![
            ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
            ("command".to_string(), command.to_string()),
            ("precision_bits".to_string(), config.prec().to_string()),
            ("rel_tol".to_string(), config.tol.rel_tol.to_sci(6)),
            ("abs_tol".to_string(), config.tol.abs_tol.to_sci(6)),
            ("seed".to_string(), config.seed.to_string()),
            ("timestamp".to_string(), timestamp.to_string()),
        ];
        Report { meta, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Row>) {
        self.rows.extend(rows);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary { rows: self.rows.len(), ..Summary::default() };
        for row in &self.rows {
            match row.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Flagged => s.flagged += 1,
            }
        }
        s
    }

    /// 0 when nothing failed (flags allowed), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary().fail == 0 {
            0
        } else {
            1
        }
    }

    /// Clears the timestamp so two runs can be compared byte for byte.
    pub fn without_timestamp(mut self) -> Self {
        for (k, v) in &mut self.meta {
            if k == "timestamp" {
                v.clear();
            }
        }
        self
    }

    pub fn to_json_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("meta".into(), fields_to_json(&self.meta));
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, fields) in row.sections() {
                    obj.insert(name.into(), fields_to_json(fields));
                }
                obj.insert("verdict".into(), Value::String(row.verdict.as_str().into()));
                Value::Object(obj)
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        let s = self.summary();
        let mut summary = Map::new();
        for (k, v) in [("rows", s.rows), ("pass", s.pass), ("fail", s.fail), ("flagged", s.flagged)] {
            summary.insert(k.into(), Value::from(v));
        }
        root.insert("summary".into(), Value::Object(summary));
        Value::Object(root)
    }

    /// Pretty JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_json_value()).expect("string-only JSON");
        text.push('\n');
        text
    }

    /// Dotted column names in first-appearance order, e.g. `inputs.n`, then `verdict`.
    pub fn csv_columns(&self) -> Vec<String> {
        let mut columns: Vec<String> = Vec::new();
        for row in &self.rows {
            for (section, fields) in row.sections() {
                for (k, _) in fields {
                    let name = format!("{section}.{k}");
                    if !columns.contains(&name) {
                        columns.push(name);
                    }
                }
            }
        }
        // keep sections grouped even when later rows introduce new keys
        let order = |c: &String| ["inputs.", "computed.", "expected.", "deviation."].iter().position(|p| c.starts_with(p));
        columns.sort_by_key(order);
        columns.push("verdict".into());
        columns
    }

    pub fn to_csv(&self) -> Result<String> {
        let columns = self.csv_columns();
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&columns).map_err(io_err)?;
        for row in &self.rows {
            let record: Vec<&str> = columns
                .iter()
                .map(|c| match c.split_once('.') {
                    Some((section, key)) => row.get(section, key).unwrap_or(""),
                    None => row.verdict.as_str(),
                })
                .collect();
            writer.write_record(&record).map_err(io_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    /// Writes to `out`, or to stdout when `out` is `None`.
    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn fields_to_json(fields: &Fields) -> Value {
    Value::Object(fields.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
}

fn io_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// A report holding a single failed row that describes `err`.
pub fn error_report(command: &str, config: &RunConfig, err: &Error) -> Report {
    let mut report = Report::new(command, config);
    report.push(
        Row::new(vec![("command".into(), command.into())])
            .computed("error", err.to_string())
            .verdict(Verdict::Fail),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("test", &RunConfig::default());
        r.push(Row::new(vec![("n".into(), "5".into())]).computed("x", "1.5").expected("x", "1.5"));
        r.push(
            Row::new(vec![("n".into(), "6".into())])
                .computed("x", "a,b")
                .deviation("abs", "1e-3")
                .verdict(Verdict::Flagged),
        );
        r
    }

    #[test]
    fn json_has_stable_layout() {
        let r = sample().without_timestamp();
        let text = r.to_json();
        assert!(text.ends_with('\n'));
        let meta = text.find("\"meta\"").unwrap();
        let rows = text.find("\"rows\"").unwrap();
        let summary = text.find("\"summary\"").unwrap();
        assert!(meta < rows && rows < summary);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["summary"]["flagged"], 1);
        assert_eq!(v["rows"][0]["inputs"]["n"], "5");
        assert_eq!(text, sample().without_timestamp().to_json());
    }

    #[test]
    fn csv_matches_json_rows() {
        let r = sample();
        let csv_text = r.to_csv().unwrap();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let headers = reader.headers().unwrap().clone();
        assert_eq!(
            headers.iter().collect::<Vec<_>>(),
            ["inputs.n", "computed.x", "expected.x", "deviation.abs", "verdict"]
        );
        let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(records.len(), 2);
        assert_eq!(&records[1][1], "a,b");
        assert_eq!(&records[1][4], "flagged");
        assert_eq!(&records[0][3], "");
    }

    #[test]
    fn exit_codes() {
        let mut r = sample();
        assert_eq!(r.exit_code(), 0);
        r.push(Row::new(Vec::new()).verdict(Verdict::Fail));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.summary(), Summary { rows: 3, pass: 1, fail: 1, flagged: 1 });
    }
}
