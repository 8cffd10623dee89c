use std::path::{Path, PathBuf};
use std::process::Command;

use downup::cli::{run, OUTPUT_SCHEMA};
use jsonschema::JSONSchema;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli(cfg: &str, args: &[&str]) -> downup::cli::Outcome {
    let path = fixture(cfg);
    let mut v = vec!["downup", "--config", path.to_str().unwrap()];
    v.extend_from_slice(args);
    run(v)
}

fn schema() -> JSONSchema {
    let s: Value = serde_json::from_str(OUTPUT_SCHEMA).unwrap();
    JSONSchema::compile(&s).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, out: &str) -> Value {
    let v: Value = serde_json::from_str(out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    if let Err(errs) = schema.validate(&v) {
        let msgs: Vec<String> = errs.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}\n{out}");
    }
    v
}

#[test]
fn normalize_defining_relation() {
    let out = cli("s2-phi-h.toml", &["normalize", "d*u"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "2*u*d + h\n"));
}

#[test]
fn classify_r1_row() {
    let out = cli("r1-gamma.toml", &["classify", "--json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let ideals: Vec<&str> =
        v["result"]["families"].as_array().unwrap().iter().map(|f| f["ideal"].as_str().unwrap()).collect();
    assert_eq!(ideals, ["{0}", "<u>", "<d>"]);
}

#[test]
fn not_conformal_is_a_domain_error() {
    let out = cli("nonconformal.toml", &["conformal"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("NotConformal"), "{}", out.stderr);
    assert!(out.stderr.contains("not conformal: s=r^1 and a_1≠0"), "{}", out.stderr);
}

#[test]
fn exit_codes_per_error_class() {
    assert_eq!(cli("s2-phi-h.toml", &["normalize", "u**2"]).code, 3);
    assert!(cli("s2-phi-h.toml", &["normalize", "u**2"]).stderr.contains("SyntaxError"));
    assert!(cli("s2-phi-h.toml", &["normalize", "x*u"]).stderr.contains("UnknownSymbol"));
    assert_eq!(cli("s2-phi-h.toml", &["frobnicate"]).code, 2);
    assert_eq!(cli("s2-phi-h.toml", &["mul", "u"]).code, 2);
    assert_eq!(cli("missing.toml", &["relgroup"]).code, 3);
    assert_eq!(cli("s2-phi-h.toml", &["orbit", "0", "1", "--window", "4..1"]).code, 3);
    // the same inputs give the same code every time
    for _ in 0..3 {
        assert_eq!(cli("nonconformal.toml", &["conformal"]).code, 3);
    }
}

#[test]
fn big_h_expands() {
    let out = cli("s2-phi-h.toml", &["normalize", "H - u*d"]);
    assert_eq!(out.code, 0);
    // psi solves 2*psi(x) - psi(x) = x
    assert_eq!(out.stdout, "h\n");
    let shifted = cli("shifted.toml", &["normalize", "H*u - 3*u*H"]);
    assert_eq!((shifted.code, shifted.stdout.as_str()), (0, "0\n"));
}

#[test]
fn decompose_reports_length() {
    let out = cli("s2-phi-h.toml", &["decompose", "u*d + u^2*h - d + 3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("length 3\n"), "{}", out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_downup");
    let cfg = fixture("nonconformal.toml");
    let status = |args: &[&str]| Command::new(bin).arg("--config").arg(&cfg).args(args).output().unwrap();
    let ok = status(&["normalize", "d*u"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2*u*d + h\n");
    assert_eq!(status(&["conformal"]).status.code(), Some(3));
    assert_eq!(status(&["bogus"]).status.code(), Some(2));
}

#[test]
fn json_validates_for_every_subcommand() {
    let schema = schema();
    let bogus = serde_json::json!({ "command": "normalize", "result": { "normal_form": 3 } });
    assert!(!schema.is_valid(&bogus));
    let cases: &[(&str, &[&str])] = &[
        ("s2-phi-h.toml", &["normalize", "-u*d + (h - 1)^2"]),
        ("s2-phi-h.toml", &["mul", "d^2", "u^2"]),
        ("s2-phi-h.toml", &["decompose", "u*d + u^2*h - d"]),
        ("s2-phi-h.toml", &["conformal"]),
        ("shifted.toml", &["conformal"]),
        ("nonconformal.toml", &["split"]),
        ("nonconformal.toml", &["conformal"]),
        ("r1-gamma.toml", &["classify"]),
        ("finite.toml", &["classify"]),
        ("s2-phi-h.toml", &["orbit", "1", "1/2", "--window", "-3..3"]),
        ("finite.toml", &["orbit", "1", "1"]),
        ("finite.toml", &["module", "fhw", "1", "1"]),
        ("finite.toml", &["module", "fc", "0", "1/2", "3"]),
        ("finite.toml", &["module", "fcbar", "0", "1/2", "3"]),
        ("finite.toml", &["annihilate", "fhw(1, 1)", "u^2"]),
        ("exotic-r1.toml", &["annihilate", "r1mirror(1, 2)", "u^2"]),
        ("exotic-r1.toml", &["exotic", "r1", "1", "2", "--window", "-12..12"]),
        ("exotic-r1.toml", &["exotic", "r1", "1", "2", "--mirror"]),
        ("exotic-conf.toml", &["exotic", "conf", "-1", "1", "2"]),
        ("exotic-conf.toml", &["exotic", "conf", "-1", "1", "2", "--mirror"]),
        ("r1-gamma.toml", &["relgroup"]),
        ("exotic-conf.toml", &["relgroup"]),
        ("undecidable.toml", &["relgroup", "--bound", "8"]),
        ("s2-phi-h.toml", &["normalize", "u h"]),
    ];
    for (cfg, args) in cases {
        let mut a = args.to_vec();
        a.push("--json");
        let out = cli(cfg, &a);
        assert!(out.code == 0 || out.code == 3, "{cfg} {args:?}: {}", out.stderr);
        let v = assert_valid(&schema, &out.stdout);
        assert_eq!(v.get("error").is_some(), out.code == 3, "{cfg} {args:?}");
    }
}

#[test]
fn exotic_modules_verify_from_cli() {
    let out = cli("exotic-conf.toml", &["exotic", "conf", "-1", "1", "2", "--mirror", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["relations_hold"], true);
    assert_eq!(v["result"]["u_power_kills"], true);
    let out = cli("exotic-r1.toml", &["exotic", "r1", "1", "2", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["relations_hold"], true);
}
