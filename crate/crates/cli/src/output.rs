use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::{json, Value};
use torind::theorem::REPORT_SCHEMA;

/// An error that ends the run without a report.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Pass/fail outcome of a checking command. Informational commands have none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Only reached through inputs flagged as outside the intended scope.
    OutOfScope,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::OutOfScope => "out-of-scope",
        }
    }

    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub struct Report {
    pub command: String,
    pub p: u32,
    pub cutoff: u32,
    pub seed: u64,
    pub inputs_digest: String,
    pub verdict: Option<Outcome>,
    /// Headline such as `2 ≤ ecodepth 2`.
    pub statement: Option<String>,
    pub witnesses: Vec<Value>,
    pub result: Value,
    /// Human-readable summary lines.
    pub lines: Vec<String>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            None | Some(Outcome::Pass) => 0,
            Some(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "p": self.p,
            "cutoff": self.cutoff,
            "seed": self.seed,
            "inputs_digest": self.inputs_digest,
            "verdict": self.verdict.map(Outcome::as_str),
            "statement": self.statement,
            "witnesses": self.witnesses,
            "result": self.result,
            "timings": { "elapsed_ms": self.elapsed_ms },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "torind {}  (p = {}, D = {}, seed = {}, inputs {})\n",
            self.command,
            self.p,
            self.cutoff,
            self.seed,
            &self.inputs_digest[..16.min(self.inputs_digest.len())]
        );
        for l in &self.lines {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        if let Some(st) = &self.statement {
            s.push_str(&format!("statement: {st}\n"));
        }
        if let Some(v) = self.verdict {
            s.push_str(&format!("verdict: {}\n", v.as_str()));
        }
        for w in &self.witnesses {
            s.push_str(&format!("witness: {w}\n"));
        }
        s.push_str(&format!("elapsed: {:.1} ms\n", self.elapsed_ms));
        s
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report values serialize");
            s.push('\n');
            s
        }
    }
}

/// Prints the report, or writes it through a sibling temporary file and a
/// rename so readers never see a partial report.
pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> anyhow::Result<()> {
    let text = render(report, format);
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().context("--out needs a file name")?.to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(text.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
