use std::path::Path;

use clap::Parser as _;
use workbench::selftest::default_dir;
use workbench::{run, Exit, RunConfig};

fn selftest(dir: &Path) -> workbench::Report {
    let dir = dir.display().to_string();
    run(&RunConfig::try_parse_from(["workbench", "selftest", "--dir", &dir]).unwrap())
}

fn summary(rep: &workbench::Report) -> &serde_json::Value {
    rep.records
        .iter()
        .find(|r| r["record"] == "summary")
        .unwrap()
}

#[test]
fn bundled_corpus_passes() {
    let rep = selftest(&default_dir());
    assert_eq!(rep.exit, Exit::Holds, "{}", rep.canonical());
    let s = summary(&rep);
    assert!(s["goldens"].as_u64().unwrap() >= 10);
    assert_eq!(s["golden_failures"], 0);
    assert_eq!(s["suite_failures"], 0);
    for r in rep.records.iter().filter(|r| r["record"] == "suite") {
        assert!(r["cases"].as_u64().unwrap() > 0, "{r}");
    }
}

#[test]
fn one_corrupted_golden_is_one_failure() {
    let tmp = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(default_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, tmp.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = tmp.path().join("xcl_trace.golden");
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::write(&target, text.replace("K'(I)", "K'(K)")).unwrap();
    let rep = selftest(tmp.path());
    assert_eq!(rep.exit, Exit::Fails);
    assert_eq!(summary(&rep)["golden_failures"], 1);
    let failed: Vec<_> = rep
        .records
        .iter()
        .filter(|r| r["record"] == "golden" && r["status"] == "fail")
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "xcl_trace.golden");
}

#[test]
fn missing_directory_is_an_input_error() {
    let rep = selftest(Path::new("/nonexistent/goldens"));
    assert_eq!(rep.exit, Exit::InputError);
}
