use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::resolve::Input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

/// The outcome of one subcommand. Everything except `timing_ms` is a
/// function of the inputs and flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub verdict: Verdict,
    pub results: Map<String, Value>,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: Verdict::Pass,
            results: Map::new(),
            witnesses: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results
            .insert(key.to_string(), serde_json::to_value(value).expect("report values serialize"));
        self
    }

    pub fn witness(&mut self, value: impl Serialize) -> &mut Self {
        self.witnesses.push(serde_json::to_value(value).expect("witnesses serialize"));
        self
    }

    /// Fails the report unless `ok`; once failed it stays failed.
    pub fn require(&mut self, ok: bool) -> &mut Self {
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "verdict: {}", if self.verdict == Verdict::Pass { "pass" } else { "fail" });
        if !self.inputs.is_empty() {
            let _ = writeln!(out, "inputs:");
            for i in &self.inputs {
                let _ = writeln!(out, "  {} ({}) sha256:{}", i.name, i.kind, &i.sha256[..16]);
            }
        }
        if !self.results.is_empty() {
            let _ = writeln!(out, "results:");
            for (k, v) in &self.results {
                let _ = writeln!(out, "  {k}: {}", inline(v));
            }
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "witnesses:");
            for w in &self.witnesses {
                let _ = writeln!(out, "  - {}", inline(w));
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "timing: {t} ms");
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| x.is_string()) => {
            format!("[{}]", xs.iter().map(|x| x.as_str().unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}
