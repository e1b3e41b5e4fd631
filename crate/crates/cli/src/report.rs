//! The report document every subcommand emits, with its JSON, CSV and text
//! renderings. JSON and CSV both round-trip exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub genus: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub hypotheses: String,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
}

/// All cells are strings; exact rationals appear as `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Status::Pass),
            "fail" => Some(Status::Fail),
            "skipped" => Some(Status::Skipped),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub detail: String,
    pub certificate: BTreeMap<String, String>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status,
            detail: detail.into(),
            certificate: BTreeMap::new(),
        }
    }

    pub fn from_bool(check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.certificate.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid JSON report: {0}")]
    Json(serde_json::Error),
    #[error("invalid CSV report: {0}")]
    Csv(csv::Error),
    #[error("malformed report: {0}")]
    Malformed(String),
}

impl ReportDocument {
    pub fn new(genus: u32, command: &str, hypotheses: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            genus,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            hypotheses: hypotheses.into(),
            tables: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        serde_json::from_str(s).map_err(ParseError::Json)
    }

    /// One record per fact, under the header `kind,name,row,column,value`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut put = |fields: [&str; 5]| w.write_record(fields).expect("in-memory write");
        put(["kind", "name", "row", "column", "value"]);
        put(["meta", "schema_version", "", "", &self.schema_version.to_string()]);
        put(["meta", "genus", "", "", &self.genus.to_string()]);
        put(["meta", "command", "", "", &self.command]);
        put(["meta", "hypotheses", "", "", &self.hypotheses]);
        for (k, v) in &self.parameters {
            put(["param", k, "", "", v]);
        }
        for t in &self.tables {
            put(["table", &t.name, "", "", ""]);
            for (j, c) in t.columns.iter().enumerate() {
                put(["column", &t.name, "", &j.to_string(), c]);
            }
            for (i, row) in t.rows.iter().enumerate() {
                put(["row", &t.name, &i.to_string(), "", ""]);
                for (j, cell) in row.iter().enumerate() {
                    put(["cell", &t.name, &i.to_string(), &j.to_string(), cell]);
                }
            }
        }
        for (i, v) in self.verdicts.iter().enumerate() {
            let idx = i.to_string();
            put(["verdict", &v.check, &idx, "status", v.status.as_str()]);
            put(["verdict", &v.check, &idx, "detail", &v.detail]);
            for (k, val) in &v.certificate {
                put(["certificate", &v.check, &idx, k, val]);
            }
        }
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("utf-8 input")
    }

    pub fn from_csv(s: &str) -> Result<Self, ParseError> {
        let bad = |m: String| ParseError::Malformed(m);
        let mut reader = csv::Reader::from_reader(s.as_bytes());
        let mut doc = ReportDocument::new(0, "", "");
        let mut meta = BTreeMap::new();
        let index = |field: &str, what: &str| -> Result<usize, ParseError> {
            field.parse().map_err(|_| bad(format!("bad {what} index {field:?}")))
        };
        for record in reader.records() {
            let r = record.map_err(ParseError::Csv)?;
            if r.len() != 5 {
                return Err(bad(format!("record with {} fields", r.len())));
            }
            let (kind, name, row, column, value) = (&r[0], &r[1], &r[2], &r[3], &r[4]);
            match kind {
                "meta" => {
                    meta.insert(name.to_string(), value.to_string());
                }
                "param" => {
                    doc.parameters.insert(name.to_string(), value.to_string());
                }
                "table" => doc.tables.push(Table {
                    name: name.to_string(),
                    columns: Vec::new(),
                    rows: Vec::new(),
                }),
                "column" | "row" | "cell" => {
                    let t = doc
                        .tables
                        .iter_mut()
                        .rev()
                        .find(|t| t.name == name)
                        .ok_or_else(|| bad(format!("{kind} before table {name:?}")))?;
                    if kind == "row" {
                        if index(row, "row")? != t.rows.len() {
                            return Err(bad(format!("row {row} out of order in {name:?}")));
                        }
                        t.rows.push(Vec::new());
                        continue;
                    }
                    let j = index(column, "column")?;
                    if kind == "column" {
                        if j != t.columns.len() {
                            return Err(bad(format!("column {j} out of order in {name:?}")));
                        }
                        t.columns.push(value.to_string());
                    } else {
                        let i = index(row, "row")?;
                        if i + 1 != t.rows.len() || j != t.rows[i].len() {
                            return Err(bad(format!("cell ({i}, {j}) out of order in {name:?}")));
                        }
                        t.rows[i].push(value.to_string());
                    }
                }
                "verdict" | "certificate" => {
                    let i = index(row, "verdict")?;
                    if kind == "verdict" && column == "status" {
                        if i != doc.verdicts.len() {
                            return Err(bad(format!("verdict {i} out of order")));
                        }
                        let status = Status::parse(value).ok_or_else(|| bad(format!("status {value:?}")))?;
                        doc.verdicts.push(Verdict::new(name, status, ""));
                        continue;
                    }
                    let v = doc
                        .verdicts
                        .get_mut(i)
                        .filter(|v| v.check == name)
                        .ok_or_else(|| bad(format!("{kind} for unknown verdict {i}")))?;
                    if kind == "verdict" {
                        if column != "detail" {
                            return Err(bad(format!("verdict field {column:?}")));
                        }
                        v.detail = value.to_string();
                    } else {
                        v.certificate.insert(column.to_string(), value.to_string());
                    }
                }
                other => return Err(bad(format!("record kind {other:?}"))),
            }
        }
        let get = |k: &str| meta.get(k).cloned().ok_or_else(|| bad(format!("missing meta {k}")));
        doc.schema_version = get("schema_version")?
            .parse()
            .map_err(|_| bad("schema_version".into()))?;
        doc.genus = get("genus")?.parse().map_err(|_| bad("genus".into()))?;
        doc.command = get("command")?;
        doc.hypotheses = get("hypotheses")?;
        Ok(doc)
    }

    /// Aligned plain-text tables for reading in a terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ihtheta {} (genus {})", self.command, self.genus);
        let _ = writeln!(out, "hypotheses: {}", self.hypotheses);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{k}: {v}");
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n[{}]", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for row in &t.rows {
                for (j, cell) in row.iter().enumerate() {
                    if j < widths.len() {
                        widths[j] = widths[j].max(cell.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}", w = *w))
                    .collect();
                padded.join("  ")
            };
            let _ = writeln!(out, "{}", line(&t.columns));
            for row in &t.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "\n[verdicts]");
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "{:<7} {}: {}", v.status.as_str().to_uppercase(), v.check, v.detail);
            for (k, val) in &v.certificate {
                let _ = writeln!(out, "        {k} = {val}");
            }
        }
        out
    }
}
