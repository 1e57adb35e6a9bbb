//! Line-delimited JSON reports.
//!
//! Every record is one JSON object with a `record` field. The `timing`
//! record is the only one that varies between runs; everything else is the
//! canonical section, which is byte-stable for fixed inputs and options
//! (object keys are emitted in sorted order).

use serde_json::{json, Value};
use workbench_core::kernel::{Status, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Holds = 0,
    Fails = 1,
    Unknown = 2,
    InputError = 3,
}

impl From<Status> for Exit {
    fn from(s: Status) -> Self {
        match s {
            Status::Holds => Exit::Holds,
            Status::Fails => Exit::Fails,
            Status::Unknown => Exit::Unknown,
        }
    }
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Exit::Holds => "holds",
            Exit::Fails => "fails",
            Exit::Unknown => "unknown",
            Exit::InputError => "input-error",
        }
    }

    /// The worse of two outcomes: input errors, then failures, then unknowns.
    pub fn join(self, other: Exit) -> Exit {
        fn rank(e: Exit) -> u8 {
            match e {
                Exit::Holds => 0,
                Exit::Unknown => 1,
                Exit::Fails => 2,
                Exit::InputError => 3,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub records: Vec<Value>,
    pub exit: Exit,
}

pub fn witness_json(w: &Witness) -> Value {
    json!({
        "lhs": w.lhs,
        "rhs": w.rhs,
        "clause": w.clause,
        "trace": w.trace,
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "record": "verdict",
        "status": v.status.to_string(),
        "witness": v.witness.as_ref().map(witness_json),
        "diagnostics": v.diagnostics,
    })
}

impl Report {
    pub fn new() -> Self {
        Report {
            records: Vec::new(),
            exit: Exit::Holds,
        }
    }

    pub fn push(&mut self, record: Value) {
        self.records.push(record);
    }

    pub fn canonical_lines(&self) -> Vec<String> {
        self.records
            .iter()
            .filter(|r| r["record"] != "timing")
            .map(|r| r.to_string())
            .collect()
    }

    pub fn canonical(&self) -> String {
        let mut s = self.canonical_lines().join("\n");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for r in &self.records {
            match format {
                Format::Json => out.push_str(&r.to_string()),
                Format::Text => out.push_str(&text(r)),
            }
            out.push('\n');
        }
        out
    }
}

impl Default for Report {
    fn default() -> Self {
        Self::new()
    }
}

fn str_field<'a>(r: &'a Value, k: &str) -> &'a str {
    r[k].as_str().unwrap_or("")
}

/// A one-line human rendering; unknown record kinds fall back to JSON.
fn text(r: &Value) -> String {
    match str_field(r, "record") {
        "step" => {
            let (from, to) = (str_field(r, "from"), str_field(r, "to"));
            if let Some(l) = r["label"].as_str() {
                format!("{from} —{l}→ {to}")
            } else if let Some(rule) = r["rule"].as_str() {
                format!("{from} →[{rule}] {to}")
            } else {
                format!("{from} → {to}")
            }
        }
        "verdict" => {
            let mut s = str_field(r, "status").to_string();
            if let Some(w) = r["witness"].as_object() {
                s.push_str(&format!(
                    ": {} vs {} at clause {}",
                    w["lhs"].as_str().unwrap_or(""),
                    w["rhs"].as_str().unwrap_or(""),
                    w["clause"].as_str().unwrap_or("")
                ));
                for t in w["trace"].as_array().into_iter().flatten() {
                    s.push_str(&format!("\n  {}", t.as_str().unwrap_or("")));
                }
            }
            s
        }
        "error" => format!("error: {}", str_field(r, "message")),
        _ => r.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timing_is_not_canonical() {
        let mut r = Report::new();
        r.push(json!({"record": "verdict", "status": "holds"}));
        r.push(json!({"record": "timing", "wall_ms": 3}));
        assert_eq!(
            r.canonical(),
            "{\"record\":\"verdict\",\"status\":\"holds\"}\n"
        );
    }

    #[test]
    fn join_prefers_worse() {
        assert_eq!(Exit::Holds.join(Exit::Unknown), Exit::Unknown);
        assert_eq!(Exit::Fails.join(Exit::Unknown), Exit::Fails);
        assert_eq!(Exit::Fails.join(Exit::InputError), Exit::InputError);
    }

    #[test]
    fn step_text() {
        let r = json!({"record": "step", "from": "S''(K,I)", "label": "I", "to": "(K I) (I I)"});
        assert_eq!(text(&r), "S''(K,I) —I→ (K I) (I I)");
    }
}
