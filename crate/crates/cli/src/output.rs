//! Rendering results as JSON or CSV and choosing the exit code.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::ValueEnum;
use serde_json::{json, Value};

use taut_core::report::VerificationReport;

use crate::{Cli, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub enum Rendered {
    Value(Value),
    List(Vec<Value>),
    /// JSON form and CSV form with its index legend.
    Matrix(Value, String),
    Report(VerificationReport),
    /// A value describing a failed check.
    Failed(Value),
}

fn csv_cell(v: &Value) -> String {
    let text = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

fn report_rows(r: &VerificationReport, prefix: &str, out: &mut String) {
    let path = if prefix.is_empty() { r.suite.clone() } else { format!("{prefix}/{}", r.suite) };
    out.push_str(&format!("{},{},{},{}\n", csv_cell(&json!(path)), r.pass, r.checked, r.witnesses.len()));
    for c in &r.children {
        report_rows(c, &path, out);
    }
}

fn object_rows(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            out.push_str("key,value\n");
            for (k, val) in map {
                out.push_str(&format!("{},{}\n", csv_cell(&json!(k)), csv_cell(val)));
            }
        }
        other => out.push_str(&format!("{}\n", csv_cell(other))),
    }
}

fn render(r: &Rendered, format: Format) -> String {
    match format {
        Format::Json => {
            let v = match r {
                Rendered::Value(v) | Rendered::Failed(v) | Rendered::Matrix(v, _) => v.clone(),
                Rendered::List(l) => Value::Array(l.clone()),
                Rendered::Report(rep) => json!(rep),
            };
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            match r {
                Rendered::Matrix(_, csv) => out.push_str(csv),
                Rendered::List(l) => l.iter().for_each(|v| out.push_str(&format!("{}\n", csv_cell(v)))),
                Rendered::Report(rep) => {
                    out.push_str("suite,pass,checked,witnesses\n");
                    report_rows(rep, "", &mut out);
                }
                Rendered::Value(v) | Rendered::Failed(v) => object_rows(v, &mut out),
            }
            out
        }
    }
}

pub fn emit(r: &Rendered, cli: &Cli) -> Result<ExitCode, Failure> {
    let text = render(r, cli.out);
    match &cli.output {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    if let (Some(path), Rendered::Report(rep)) = (&cli.timings, r) {
        let timings = serde_json::to_string_pretty(&rep.timings()).expect("timings serialize");
        fs::write(path, timings).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let pass = match r {
        Rendered::Report(rep) => rep.pass,
        Rendered::Failed(_) => false,
        _ => true,
    };
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
