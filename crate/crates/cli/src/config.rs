use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::report::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Language {
    Xcl,
    Fgcbv,
    Cbpv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Parse (and for cbpv, type) each input term.
    Typecheck,
    /// Print every transition from a term.
    Trace,
    /// Search for a terminal state.
    Normalize,
    /// Check a relation file against the simulation clauses.
    CheckSim,
    /// Step-indexed logical relation levels of the pairs in a relation file.
    Logrel,
    /// Compare two terms (or every pair in a relation file) in all small contexts.
    CtxOracle,
    /// Run the golden corpus and the quick property suites.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Flag {
    /// Admit `fix(t)` (fgcbv).
    Fix,
    /// A thunk value also exposes its forcing (cbpv).
    TestingWeakening,
    /// Fire `to` only on a literal `prod v` (cbpv).
    LiteralToRule,
}

impl Flag {
    pub fn language(self) -> Language {
        match self {
            Flag::Fix => Language::Fgcbv,
            Flag::TestingWeakening | Flag::LiteralToRule => Language::Cbpv,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flag::Fix => "fix",
            Flag::TestingWeakening => "testing-weakening",
            Flag::LiteralToRule => "literal-to-rule",
        }
    }
}

/// Equivalence workbench for combinatory logics and call-by-push-value.
///
/// Exit status: 0 holds, 1 fails, 2 unknown (a bound was hit), 3 input error.
/// `WORKBENCH_SEED` seeds the random generators used by `selftest`.
#[derive(Clone, Debug, Parser)]
#[command(name = "workbench", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Terms, or relation files for check-sim and logrel. `@path` reads a
    /// universe file wherever terms are expected.
    pub inputs: Vec<String>,
    #[arg(long = "lang", value_enum)]
    pub language: Option<Language>,
    #[arg(long, default_value_t = 1000)]
    pub fuel: usize,
    #[arg(long, default_value_t = 16)]
    pub depth: usize,
    /// Label size (xcl, fgcbv) or value size (cbpv) bounding function inputs.
    #[arg(long = "labels", default_value_t = 3)]
    pub label_size: usize,
    #[arg(long, default_value_t = 5)]
    pub ctx_size: usize,
    #[arg(long = "flag", value_enum)]
    pub flags: Vec<Flag>,
    /// Argument to apply at a terminal state during `trace`; repeatable.
    #[arg(long = "label")]
    pub trace_labels: Vec<String>,
    /// cbpv index `x:phi, … |- type` for term inputs.
    #[arg(long)]
    pub index: Option<String>,
    /// Extra universe file for `logrel`.
    #[arg(long)]
    pub universe: Option<PathBuf>,
    /// Golden corpus directory for `selftest`.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl RunConfig {
    pub fn has(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("fuel", self.fuel),
            ("depth", self.depth),
            ("labels", self.label_size),
            ("ctx-size", self.ctx_size),
        ] {
            if v == 0 {
                return Err(format!("--{name} must be positive"));
            }
        }
        if self.command == Command::Selftest {
            return Ok(());
        }
        let Some(lang) = self.language else {
            return Err("--lang is required".into());
        };
        for f in &self.flags {
            if f.language() != lang {
                return Err(format!(
                    "--flag {} is not valid for {}",
                    f.name(),
                    lang_name(lang)
                ));
            }
        }
        Ok(())
    }

    /// Echo of the options that influence the canonical report.
    pub fn echo(&self) -> Value {
        let mut flags: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
        flags.sort_unstable();
        flags.dedup();
        json!({
            "record": "config",
            "command": command_name(self.command),
            "language": self.language.map(lang_name),
            "inputs": self.inputs,
            "fuel": self.fuel,
            "depth": self.depth,
            "label_size": self.label_size,
            "ctx_size": self.ctx_size,
            "flags": flags,
            "labels": self.trace_labels,
            "index": self.index,
            "universe": self.universe.as_ref().map(|p| p.display().to_string()),
        })
    }
}

pub fn lang_name(l: Language) -> &'static str {
    match l {
        Language::Xcl => "xcl",
        Language::Fgcbv => "fgcbv",
        Language::Cbpv => "cbpv",
    }
}

pub fn command_name(c: Command) -> &'static str {
    match c {
        Command::Typecheck => "typecheck",
        Command::Trace => "trace",
        Command::Normalize => "normalize",
        Command::CheckSim => "check-sim",
        Command::Logrel => "logrel",
        Command::CtxOracle => "ctx-oracle",
        Command::Selftest => "selftest",
    }
}
