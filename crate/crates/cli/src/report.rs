use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// One line of a report: what was computed, with which inputs, against what
/// it was compared, and the outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub op: String,
    pub params: Value,
    pub reference: String,
    pub value: Value,
    /// `None` for plain computations that check nothing.
    pub pass: Option<bool>,
}

impl Record {
    pub fn computed(op: &str, params: Value, reference: &str, value: Value) -> Self {
        Self {
            op: op.to_string(),
            params,
            reference: reference.to_string(),
            value,
            pass: None,
        }
    }

    pub fn check(op: &str, params: Value, reference: &str, value: Value, pass: bool) -> Self {
        Self {
            pass: Some(pass),
            ..Self::computed(op, params, reference, value)
        }
    }

    pub fn to_json(&self) -> Value {
        // serde_json keeps keys sorted, so this ordering is stable
        let mut m = Map::new();
        m.insert("op".into(), json!(self.op));
        m.insert("params".into(), self.params.clone());
        m.insert("reference".into(), json!(self.reference));
        m.insert("value".into(), self.value.clone());
        m.insert("pass".into(), json!(self.pass));
        Value::Object(m)
    }

    fn text_line(&self) -> String {
        let status = match self.pass {
            Some(true) => " [PASS]",
            Some(false) => " [FAIL]",
            None => "",
        };
        format!("{} {}: {}{status}", self.op, self.params, self.value)
    }
}

/// The output of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub records: Vec<Record>,
    /// Tabular rendering, for verbs that produce series or coefficient tables.
    pub csv: Option<String>,
    /// Human-readable rendering overriding the per-record lines.
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    /// No record failed.
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass != Some(false))
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "pass": self.pass(),
            "records": self.records.iter().map(Record::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .expect("report values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv.clone().ok_or_else(|| {
                CliError::usage(format!("{} has no CSV rendering", self.command))
            }),
            Format::Text => Ok(match &self.text {
                Some(t) => t.clone(),
                None => {
                    let mut out: String = self
                        .records
                        .iter()
                        .map(|r| r.text_line() + "\n")
                        .collect();
                    out.push_str(if self.pass() { "PASS\n" } else { "FAIL\n" });
                    out
                }
            }),
        }
    }
}

/// Fixed-width rendering of floats so reports are byte-stable.
pub fn float(x: f64) -> Value {
    json!(format!("{x:.12e}"))
}

pub fn pair(re: f64, im: f64) -> Value {
    json!([format!("{re:.12e}"), format!("{im:.12e}")])
}
