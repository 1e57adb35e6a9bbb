//! Golden corpus runner and quick property suites.
//!
//! A golden file (`*.golden`) has a header and the expected canonical
//! report after a `---` line:
//!
//! ```text
//! # what this checks
//! args: trace --lang xcl "(S K) I" --label I
//! exit: 0
//! ---
//! {"record":"config",...}
//! ```
//!
//! Relative paths in `args` are resolved against the golden's directory.
//! Setting `WORKBENCH_BLESS=1` rewrites the expected sections in place.

use std::path::{Path, PathBuf};

use clap::Parser as _;
use serde_json::json;
use workbench_core::cbpv::sem::{observe, successors};
use workbench_core::cbpv::syntax::{self as cs, typecheck, Enumerator, Ty, TypePool};
use workbench_core::fgcbv::{random_comp, random_value, FgTerm};
use workbench_core::kernel::{is_antitone, Verdict, Witness};
use workbench_core::rng::{env_seed, seeded};
use workbench_core::xcl::{app, kp, logrel_xcl, omega, random_term, XclTerm, XclTerm::*};

use crate::config::{Command, RunConfig};
use crate::parse::{parse_cbpv_in, parse_fg, parse_xcl, Scope};
use crate::report::{verdict_json, Exit, Report};
use crate::run::run;

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens")
}

/// Whitespace-separated words; double quotes group, with no escapes.
pub fn split_args(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for c in s.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if quoted {
        return Err("unterminated quote".into());
    }
    if any {
        out.push(cur);
    }
    Ok(out)
}

pub struct Golden {
    pub args: Vec<String>,
    pub exit: i32,
    pub expected: String,
    header: String,
}

pub fn parse_golden(src: &str) -> Result<Golden, String> {
    let (header, expected) = src.split_once("\n---\n").ok_or("missing `---` separator")?;
    let mut args = None;
    let mut exit = None;
    for line in header.lines() {
        if let Some(a) = line.strip_prefix("args:") {
            args = Some(split_args(a)?);
        } else if let Some(e) = line.strip_prefix("exit:") {
            exit = Some(e.trim().parse::<i32>().map_err(|e| e.to_string())?);
        }
    }
    Ok(Golden {
        args: args.ok_or("missing `args:` line")?,
        exit: exit.ok_or("missing `exit:` line")?,
        expected: expected.to_string(),
        header: header.to_string(),
    })
}

fn resolve(path: &str, dir: &Path) -> String {
    let p = Path::new(path);
    if p.is_absolute() {
        path.to_string()
    } else {
        dir.join(p).display().to_string()
    }
}

/// `cfg` with its file arguments made relative to `dir`.
fn resolved(cfg: &RunConfig, dir: &Path) -> RunConfig {
    let mut out = cfg.clone();
    let files = match cfg.command {
        Command::CheckSim | Command::Logrel => true,
        Command::CtxOracle => cfg.inputs.len() == 1,
        _ => false,
    };
    for s in &mut out.inputs {
        if let Some(p) = s.strip_prefix('@') {
            *s = format!("@{}", resolve(p, dir));
        } else if files {
            *s = resolve(s, dir);
        }
    }
    if let Some(u) = &cfg.universe {
        out.universe = Some(PathBuf::from(resolve(&u.display().to_string(), dir)));
    }
    out
}

/// Runs a golden's command and returns its exit code and canonical report,
/// as if run from the golden's directory.
pub fn run_golden(g: &Golden, dir: &Path) -> Result<(i32, String), String> {
    let cfg =
        RunConfig::try_parse_from(std::iter::once("workbench".to_string()).chain(g.args.clone()))
            .map_err(|e| e.to_string())?;
    if cfg.command == Command::Selftest {
        return Err("a golden cannot run selftest".into());
    }
    let mut rep = run(&resolved(&cfg, dir));
    rep.records[0] = cfg.echo();
    // paths in messages read as written in the golden
    let prefix = format!("{}/", dir.display());
    Ok((rep.exit.code(), rep.canonical().replace(&prefix, "")))
}

fn goldens(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "golden"))
        .collect();
    out.sort();
    Ok(out)
}

fn check_golden(path: &Path, bless: bool) -> Result<(), String> {
    let src = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let g = parse_golden(&src)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let (code, got) = run_golden(&g, dir)?;
    if bless {
        let text = format!("{}\nexit: {code}\n---\n{got}", strip_exit(&g.header));
        return std::fs::write(path, text).map_err(|e| e.to_string());
    }
    if code != g.exit {
        return Err(format!("exit {code}, expected {}", g.exit));
    }
    if got != g.expected {
        let (ge, ee): (Vec<&str>, Vec<&str>) =
            (got.lines().collect(), g.expected.lines().collect());
        let line = ge
            .iter()
            .zip(&ee)
            .position(|(a, b)| a != b)
            .unwrap_or(ge.len().min(ee.len()));
        return Err(format!(
            "report differs at line {}: got {:?}, expected {:?}",
            line + 1,
            ge.get(line).copied().unwrap_or("<end>"),
            ee.get(line).copied().unwrap_or("<end>")
        ));
    }
    Ok(())
}

fn strip_exit(header: &str) -> String {
    header
        .lines()
        .filter(|l| !l.starts_with("exit:"))
        .collect::<Vec<_>>()
        .join("\n")
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

fn suite(name: &'static str, body: impl FnOnce(&mut Vec<String>) -> usize) -> Suite {
    let mut failures = Vec::new();
    let cases = body(&mut failures);
    Suite {
        name,
        cases,
        failures,
    }
}

fn property_suites(seed: u64) -> Vec<Suite> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    out.push(suite("xcl parser round-trip", |fails| {
        let n = 1000;
        for i in 0..n {
            let t: XclTerm = random_term(&mut rng, 1 + i % 14);
            match parse_xcl(&t.to_string()) {
                Ok(back) if back == t => {}
                other => fails.push(format!("{t}: {other:?}")),
            }
        }
        n
    }));
    out.push(suite("fgcbv parser round-trip", |fails| {
        let n = 1000;
        for i in 0..n {
            let t = if i % 2 == 0 {
                FgTerm::V(random_value(&mut rng, 1 + i % 12, true))
            } else {
                FgTerm::C(random_comp(&mut rng, 1 + i % 12, true))
            };
            match parse_fg(&t.to_string()) {
                Ok(back) if back == t => {}
                other => fails.push(format!("{t}: {other:?}")),
            }
        }
        n
    }));
    out.push(suite("cbpv parser round-trip", |fails| {
        let pool = TypePool::default();
        let types = pool.all_types();
        let n = 500;
        for i in 0..n {
            let ty = &types[i % types.len()];
            let t = cs::random_term(&mut rng, ty, &Vec::new(), 2 + i % 10, &pool);
            match parse_cbpv_in(&t.to_string(), &mut Scope::default(), Some(ty)) {
                Ok((back, _)) if back == t => {}
                other => fails.push(format!("{t}: {other:?}")),
            }
        }
        n
    }));
    out.push(suite("cbpv subject reduction and progress", |fails| {
        let e = Enumerator::new(TypePool::default());
        let terms = e.closed_computations(5);
        for (k, t) in &terms {
            let succ = successors(t);
            if succ.is_empty() && observe(t).is_none() {
                fails.push(format!("{t} is stuck"));
            }
            for s in succ {
                if typecheck(&Vec::new(), &s) != Ok(Ty::C(k.clone())) {
                    fails.push(format!("{t} -> {s} changes type"));
                }
            }
        }
        terms.len()
    }));
    out.push(suite("xcl logrel chain antitone", |fails| {
        let u = vec![I, K, kp(I), app(I, K), app(K, I), omega()];
        let chain = logrel_xcl(&u, &[], 16, 200);
        if !is_antitone(&chain) {
            fails.push("chain is not antitone".into());
        }
        chain.len()
    }));
    out
}

/// Runs every golden in `cfg.dir` (or the bundled corpus) and the property
/// suites; one record per golden and per suite, then a summary.
pub fn selftest(cfg: &RunConfig, rep: &mut Report) -> Exit {
    let dir = cfg.dir.clone().unwrap_or_else(default_dir);
    let bless = std::env::var("WORKBENCH_BLESS").is_ok_and(|v| v == "1");
    let paths = match goldens(&dir) {
        Ok(p) => p,
        Err(e) => {
            rep.push(json!({"record": "error", "message": e}));
            return Exit::InputError;
        }
    };
    let mut first_failure = None;
    let mut golden_failures = 0;
    for path in &paths {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let result = check_golden(path, bless);
        rep.push(json!({
            "record": "golden",
            "name": name,
            "status": if result.is_ok() { "pass" } else { "fail" },
            "detail": result.as_ref().err(),
        }));
        if let Err(e) = result {
            golden_failures += 1;
            first_failure.get_or_insert_with(|| Witness::new(&name, "expected report", e));
        }
    }
    let suites = property_suites(env_seed());
    let mut suite_failures = 0;
    for s in &suites {
        rep.push(json!({
            "record": "suite",
            "name": s.name,
            "cases": s.cases,
            "failures": s.failures.len(),
            "examples": s.failures.iter().take(3).collect::<Vec<_>>(),
        }));
        if !s.failures.is_empty() {
            suite_failures += 1;
            first_failure.get_or_insert_with(|| {
                Witness::new(s.name, "no violations", s.failures[0].clone())
            });
        }
    }
    rep.push(json!({
        "record": "summary",
        "goldens": paths.len(),
        "golden_failures": golden_failures,
        "suites": suites.len(),
        "suite_failures": suite_failures,
    }));
    let v = match first_failure {
        Some(w) => Verdict::fails(w),
        None => Verdict::holds(),
    };
    rep.push(verdict_json(&v));
    v.status.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting() {
        assert_eq!(
            split_args(r#"trace --lang xcl "(S K) I" --label I"#).unwrap(),
            vec!["trace", "--lang", "xcl", "(S K) I", "--label", "I"]
        );
        assert_eq!(split_args(r#"a "" b"#).unwrap(), vec!["a", "", "b"]);
        assert!(split_args(r#"a "b"#).is_err());
    }

    #[test]
    fn golden_format() {
        let g = parse_golden("# c\nargs: trace --lang xcl I\nexit: 0\n---\n{}\n").unwrap();
        assert_eq!(g.args.len(), 4);
        assert_eq!(g.exit, 0);
        assert_eq!(g.expected, "{}\n");
    }
}
