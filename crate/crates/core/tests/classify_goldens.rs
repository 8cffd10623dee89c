//! `classify --json` against checked-in goldens. Each `golden/classify/*.toml`
//! names its expected table row as the file-name suffix. Set
//! `DOWNUP_BLESS=1` to rewrite the `.json` files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use downup::classify::{NOTE_H_AMBIGUITY, NOTE_P0, ROWS};
use downup::cli::run;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/classify")
}

fn instances() -> Vec<(String, PathBuf)> {
    let mut out: Vec<(String, PathBuf)> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    out
}

fn expected_row(name: &str) -> &'static str {
    ROWS.iter()
        .map(|r| r.id)
        .find(|id| name == *id || name.ends_with(&format!(".{id}")))
        .unwrap_or_else(|| panic!("{name} does not name a table row"))
}

fn classify_json(config: &Path) -> String {
    let out = run(["downup", "--config", config.to_str().unwrap(), "classify", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

#[test]
fn goldens_match() {
    let bless = std::env::var_os("DOWNUP_BLESS").is_some();
    for (name, cfg) in instances() {
        let got = classify_json(&cfg);
        let path = cfg.with_extension("json");
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        assert_eq!(got, want, "golden mismatch for {name}");
    }
}

#[test]
fn every_row_is_covered() {
    let mut seen = BTreeSet::new();
    for (name, cfg) in instances() {
        let v: serde_json::Value = serde_json::from_str(&classify_json(&cfg)).unwrap();
        let row = v["result"]["row"].as_str().unwrap().to_string();
        assert_eq!(row, expected_row(&name), "{name}");
        seen.insert(row);
    }
    let all: BTreeSet<String> = ROWS.iter().map(|r| r.id.to_string()).collect();
    assert_eq!(seen, all);
}

#[test]
fn ambiguity_notes_present() {
    let notes = |name: &str| {
        let v: serde_json::Value =
            serde_json::from_str(&classify_json(&golden_dir().join(format!("{name}.toml")))).unwrap();
        v["result"]["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap().to_string()).collect::<Vec<_>>()
    };
    assert!(notes("r1.3").iter().any(|n| n == NOTE_H_AMBIGUITY));
    for row in ["nonconformal.2", "nonconformal.3", "nonconformal.4"] {
        assert!(notes(row).iter().any(|n| n == NOTE_P0), "{row}");
    }
    assert!(!notes("r1.1").iter().any(|n| n == NOTE_H_AMBIGUITY));
}
