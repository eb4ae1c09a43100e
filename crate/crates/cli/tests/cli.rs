use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use f4wb::uea::{IwasawaElement, IwasawaJson, Workbench};
use f4wb_cli::golden::{emit, Target};
use f4wb_cli::suites::{run_suite, Suite};
use f4wb_cli::Config;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_f4wb"))
}

fn golden_path(t: Target) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(t.file_name())
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("f4wb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Checks `value` against the subset of JSON Schema used by the report schema:
/// `type`, `required`, `properties`, `items`, `enum` and local `$ref`.
fn validate(schema: &Value, root: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let target = r.trim_start_matches("#/").split('/').fold(root, |s, k| &s[k]);
        return validate(target, root, value, path);
    }
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            _ => true,
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {value}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
        let key = key.as_str().unwrap();
        if value.get(key).is_none() {
            return Err(format!("{path}: missing {key}"));
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        for (k, s) in props {
            if let Some(v) = value.get(k) {
                validate(s, root, v, &format!("{path}.{k}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(items, root, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema() -> Value {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("report.schema.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn golden_files_are_reproduced_byte_for_byte() {
    for t in Target::ALL {
        let first = emit(t).unwrap();
        assert_eq!(first, emit(t).unwrap(), "{t:?} is not deterministic");
        let stored = std::fs::read_to_string(golden_path(t)).unwrap();
        assert!(first == stored, "{t:?} differs from the stored golden file");
    }
}

#[test]
fn rootdata_lists_all_roots() {
    let v: Value = serde_json::from_str(&emit(Target::Rootdata).unwrap()).unwrap();
    assert_eq!(v["root_count"], 48);
    assert_eq!(v["roots"].as_array().unwrap().len(), 48);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 24);
    assert_eq!(v["cartan_type"], "F4");
}

#[test]
fn structure_constants_are_antisymmetric_tables() {
    let v: Value = serde_json::from_str(&emit(Target::StructureConstants).unwrap()).unwrap();
    assert_eq!(v["chevalley"]["dim"], 52);
    assert_eq!(v["iwasawa"]["dim"], 52);
    assert_eq!(v["k"]["dim"], 36);
    for b in v["chevalley"]["brackets"].as_array().unwrap() {
        assert_ne!(b["x"], b["y"]);
    }
}

#[test]
fn omega_golden_round_trips() {
    let text = std::fs::read_to_string(golden_path(Target::Omega)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["z_degree"], 2);
    let json: IwasawaJson = serde_json::from_str(&text).unwrap();
    let wb = Workbench::build().unwrap();
    let parsed = IwasawaElement::from_json(&json, wb.names()).unwrap();
    assert_eq!(parsed.degree(), Some(2));
    assert_eq!(parsed, wb.omega().unwrap().omega);
}

#[test]
fn suite_report_matches_schema_and_records_the_seed() {
    let out = tmp("model.json");
    let o = bin().args(["suite", "model", "--quiet", "--seed", "19", "--json"]).arg(&out).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let s = schema();
    validate(&s, &s, &report, "report").unwrap();
    assert_eq!(report["seed"], 19);
    assert_eq!(report["summary"]["fail"], 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("seed 19"));
}

#[test]
fn every_suite_passes_in_process() {
    let cfg = Config { parallelism: 2, ..Config::default() };
    let report = run_suite(Suite::All, &cfg);
    let names: Vec<&str> = report.sections.iter().map(|s| s.suite.as_str()).collect();
    assert_eq!(names, ["model", "transversality", "uea", "balg", "repth", "combin", "omega"]);
    let failures: Vec<_> = report.sections.iter().flat_map(|s| &s.checks).filter(|c| !c.passed()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    let s = schema();
    validate(&s, &s, &serde_json::to_value(&report).unwrap(), "report").unwrap();
}

#[test]
fn transversality_reports_both_ranks() {
    let r = run_suite(Suite::Transversality, &Config::default());
    let anchors: Vec<&str> = r.sections[0].checks.iter().map(|c| c.anchor.as_str()).collect();
    assert!(anchors.iter().any(|a| a.contains("33")));
    assert!(anchors.iter().any(|a| a.contains("36")));
    assert!(r.passed());
}

#[test]
fn parallel_and_serial_runs_agree() {
    let serial = run_suite(Suite::Omega, &Config { parallelism: 1, ..Config::default() });
    let parallel = run_suite(Suite::Omega, &Config { parallelism: 4, ..Config::default() });
    let ids = |r: &f4wb_cli::Report| r.sections.iter().flat_map(|s| s.checks.iter().map(|c| (c.id.clone(), c.status))).collect::<Vec<_>>();
    assert_eq!(ids(&serial), ids(&parallel));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&bin().args(["suite", "nonsense"]).output().unwrap()), 2);
    assert_eq!(code(&bin().output().unwrap()), 2);
    assert_eq!(code(&bin().args(["golden", "rootdata", "--out", "/nonexistent-dir/x.json"]).output().unwrap()), 3);
    assert_eq!(code(&bin().args(["suite", "model", "--config", "/nonexistent-dir/c.toml"]).output().unwrap()), 3);
    let bad = tmp("bad.toml");
    std::fs::write(&bad, "degreeCap = 0\n").unwrap();
    assert_eq!(code(&bin().args(["suite", "model", "--config"]).arg(&bad).output().unwrap()), 2);
    assert_eq!(code(&bin().args(["combin", "matrix", "--T", "9", "--n", "0", "--m", "1"]).output().unwrap()), 2);
}

#[test]
fn parallelism_can_come_from_the_environment() {
    let out = tmp("env.json");
    let o = bin().env("F4WB_PARALLELISM", "3").args(["suite", "transversality", "-q", "--json"]).arg(&out).output().unwrap();
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["config"]["parallelism"], 3);
    let cfg = tmp("cfg.toml");
    std::fs::write(&cfg, "parallelism = 2\nseed = 5\n").unwrap();
    let o = bin().args(["suite", "transversality", "-q", "--json"]).arg(&out).arg("--config").arg(&cfg).env_remove("F4WB_PARALLELISM").output().unwrap();
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((report["config"]["parallelism"].as_u64(), report["seed"].as_u64()), (Some(2), Some(5)));
}

#[test]
fn combin_subcommands() {
    let o = bin().args(["combin", "matrix", "--T", "3", "--n", "1", "--m", "2"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([0, 2]));
    assert_eq!(v["entries"], serde_json::json!([["1", "1"], ["1", "1"]]));

    let o = bin().args(["combin", "dets", "--kmax", "3", "--lmax", "6"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let dets: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(dets.len(), 2 * (7 + 21 + 35 + 35));
    assert!(dets.iter().all(|d| d["splits"] == true && d["identically_zero"] == false));

    let o = bin().args(["combin", "assemble", "--T", "2", "--n", "0", "--input"]).arg(golden_path(Target::Omega)).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("assemble.input.T2.l1.n0.direct"));
}

#[test]
fn repth_verify_small_label() {
    let out = tmp("repth.json");
    let o = bin().args(["repth", "verify", "--k", "1", "--l", "0", "-q", "--json"]).arg(&out).output().unwrap();
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let s = schema();
    validate(&s, &s, &report, "report").unwrap();
    assert!(report["summary"]["pass"].as_u64().unwrap() > 0);
}
