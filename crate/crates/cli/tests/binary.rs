//! The installed binary: exit codes and byte-stable output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .output()
        .unwrap()
}

fn goldens(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("goldens")
        .join(name)
        .display()
        .to_string()
}

fn canonical(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .filter(|l| !l.contains("\"record\":\"timing\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 8] = [
        (&["normalize", "--lang", "xcl", "S K K"], 0),
        (&["normalize", "--lang", "xcl", "(S I I) (S I I)"], 1),
        (
            &[
                "normalize",
                "--lang",
                "xcl",
                "--fuel",
                "3",
                "S K K (S K K) I",
            ],
            2,
        ),
        (&["normalize", "--lang", "xcl", "S K ("], 3),
        (&["trace", "I"], 3),
        (&["trace", "--lang", "xcl", "--fuel", "0", "I"], 3),
        (&["bogus-command"], 3),
        (&["trace", "--lang", "xcl", "--flag", "fix", "I"], 3),
    ];
    for (args, code) in cases {
        let out = workbench(args);
        assert_eq!(
            out.status.code(),
            Some(code),
            "{args:?}: {}",
            canonical(&out)
        );
    }
}

#[test]
fn check_sim_exit_codes() {
    assert_eq!(
        workbench(&["check-sim", "--lang", "fgcbv", &goldens("fg_beta_ii.rel")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        workbench(&["check-sim", "--lang", "fgcbv", &goldens("fg_beta_i.rel")])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        workbench(&["check-sim", "--lang", "fgcbv", &goldens("bad.rel")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        workbench(&["check-sim", "--lang", "fgcbv", "/nonexistent.rel"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn output_is_deterministic() {
    let runs: [&[&str]; 3] = [
        &["logrel", "--lang", "cbpv", &goldens("cbpv_beta_eta.rel")],
        &["ctx-oracle", "--lang", "fgcbv", "[I]", "[K]"],
        &[
            "trace",
            "--lang",
            "cbpv",
            "prod star (+) force (thunk (prod star))",
        ],
    ];
    for args in runs {
        let a = workbench(args);
        let b = workbench(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(canonical(&a), canonical(&b), "{args:?}");
    }
}

#[test]
fn every_line_is_a_json_record() {
    let out = workbench(&["trace", "--lang", "xcl", "(S K) I", "--label", "I"]);
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["record"].is_string(), "{line}");
    }
}

#[test]
fn text_format() {
    let out = workbench(&[
        "trace", "--lang", "xcl", "--format", "text", "(S K) I", "--label", "I",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("S''(K,I) —I→ (K I) (I I)"), "{text}");
}
