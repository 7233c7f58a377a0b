use std::io::Write;

use serde_json::{json, Value};

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};
use crate::seqfun::Precision;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand produced, before serialisation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub params: Value,
    pub result: Value,
    /// The precision actually used, if the command has one.
    pub precision: Option<Precision>,
    /// Set for commands whose natural output is a list.
    pub table: Option<Table>,
    /// `Some(false)` maps to exit code 1.
    pub passed: Option<bool>,
    pub default_format: Format,
}

impl Outcome {
    pub fn new(command: &str, params: Value, result: Value) -> Self {
        Outcome {
            command: command.to_string(),
            params,
            result,
            precision: None,
            table: None,
            passed: None,
            default_format: Format::Json,
        }
    }

    pub fn precision(mut self, p: Precision) -> Self {
        self.precision = Some(p);
        self
    }

    pub fn verdict(mut self, passed: bool) -> Self {
        self.passed = Some(passed);
        self
    }

    pub fn table(mut self, t: Table, default_csv: bool) -> Self {
        self.table = Some(t);
        if default_csv {
            self.default_format = Format::Csv;
        }
        self
    }
}

pub fn envelope(o: &Outcome, cfg: &RunConfig, runtime_ms: f64) -> Value {
    json!({
        "command": o.command,
        "params": o.params,
        "result": o.result,
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "seed": cfg.seed,
            "precision": o.precision,
            "runtime_ms": runtime_ms,
        },
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `path,value` rows, nested keys joined with `.`.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(v: &Value, path: &str, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| go(x, &join(k), out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| go(x, &join(&i.to_string()), out)),
            _ => out.push((path.to_string(), scalar(v))),
        }
    }
    let mut out = vec![];
    go(v, "", &mut out);
    out
}

pub fn write(o: &Outcome, cfg: &RunConfig, runtime_ms: f64, w: &mut dyn Write) -> Result<()> {
    match cfg.format_or(o.default_format) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&envelope(o, cfg, runtime_ms))?;
            s.push('\n');
            w.write_all(s.as_bytes())?;
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            match &o.table {
                Some(t) => {
                    c.write_record(&t.header)?;
                    for r in &t.rows {
                        c.write_record(r)?;
                    }
                }
                None => {
                    c.write_record(["key", "value"])?;
                    for (k, v) in flatten(&o.result) {
                        c.write_record([k, v])?;
                    }
                }
            }
            c.flush()?;
        }
    }
    Ok(())
}

/// 1 for a failed verification, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolated { .. } | Error::NotLocallyLinear { .. } | Error::Inconsistent { .. } => 1,
        _ => 2,
    }
}

