use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use itermon::cli::{product_file_name, run_check, run_deloop, Format, RunOptions, EXIT_BASE_MISMATCH, EXIT_FAIL, EXIT_PARSE};
use itermon::corpus::{self, fixture_documents};
use itermon::doc::{
    category_document, enriched_document, functor_document, kfold_document, symmetric_document, v2_document, Body, Loader,
    Reference, Structure, StructureDocument,
};
use itermon::report::{CheckOptions, Status};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

#[test]
fn fixture_files_match_constructors() {
    for (path, doc) in fixture_documents() {
        let on_disk = fs::read_to_string(fixture(&path)).unwrap_or_else(|e| panic!("{path}: {e}"));
        assert_eq!(on_disk, doc.to_json(), "{path} is stale; rerun the write_corpus example");
    }
}

/// Re-emits a loaded structure with the references of the original document.
fn reemit(doc: &StructureDocument, s: &Structure) -> StructureDocument {
    match (&doc.body, s) {
        (Body::Category(_), Structure::Category(c)) => category_document(c),
        (Body::Kfold(d), Structure::KFold(v)) => kfold_document(v, d.base.clone()),
        (Body::Symmetric(d), Structure::Symmetric(sym)) => symmetric_document(sym, d.base.clone()),
        (Body::Enriched(d), Structure::Enriched(c)) => enriched_document(c, d.base.clone()),
        (Body::EnrichedFunctor(d), Structure::EnrichedFunctor(t)) => functor_document(t, d.source.clone(), d.target.clone()),
        (Body::V2category(d), Structure::V2Category(w)) => v2_document(w, d.base.clone()),
        _ => panic!("kind changed while loading"),
    }
}

#[test]
fn every_fixture_round_trips_byte_for_byte() {
    for (path, _) in fixture_documents() {
        let full = fixture(&path);
        let text = fs::read_to_string(&full).unwrap();
        let doc = StructureDocument::parse(&text, &path).unwrap();
        let loaded = Loader::new().load(&full).unwrap();
        assert_eq!(loaded.kind(), doc.kind());
        assert_eq!(reemit(&doc, &loaded).to_json(), text, "{path}");
    }
}

#[test]
fn boolean_poset_passes() {
    let out = run_check(&fixture("boolean-poset.kfold.json"), &RunOptions::default());
    assert_eq!(out.exit_code, 0, "{}", out.text);
    assert!(out.reports.iter().all(|r| r.passed()));
}

#[test]
fn sign_kfold_giant_hexagon_is_exhaustive_over_256_tuples() {
    let out = run_check(&fixture("sign.kfold.json"), &RunOptions::default());
    assert_eq!(out.exit_code, 0, "{}", out.text);
    let kfold = out.reports.iter().find(|r| r.suite.starts_with("kfold")).unwrap();
    let hexagon = kfold.check("giant-hexagon(1,2,3)").unwrap();
    assert_eq!(hexagon.status, Status::Pass);
    assert_eq!(hexagon.instances, 256);
    assert!(hexagon.sampling.is_none());
}

#[test]
fn every_broken_fixture_fails_with_a_witness() {
    let broken: Vec<_> = fixture_documents().into_iter().filter(|(p, _)| p.starts_with("broken/")).collect();
    assert!(broken.len() >= 10);
    for (path, _) in broken {
        let out = run_check(&fixture(&path), &RunOptions::default());
        assert_eq!(out.exit_code, EXIT_FAIL, "{path}");
        let witnesses: usize = out.reports.iter().flat_map(|r| r.failing()).map(|c| c.witnesses.len()).sum();
        assert!(witnesses >= 1, "{path}");
        assert!(out.text.contains("witness:"), "{path}");
    }
}

#[test]
fn passing_fixtures_exit_zero() {
    for (path, _) in fixture_documents().into_iter().filter(|(p, _)| !p.starts_with("broken/")) {
        let out = run_check(&fixture(&path), &RunOptions::default());
        assert_eq!(out.exit_code, 0, "{path}\n{}", out.text);
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"format_version\": 1,\n  \"kind\": \"category\",\n  \"objects\": [\"a\",]\n}\n").unwrap();
    let out = run_check(&path, &RunOptions::default());
    assert_eq!(out.exit_code, EXIT_PARSE);
    assert!(out.text.contains("bad.json:4:"), "{}", out.text);
}

#[test]
fn dangling_reference_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let doc = kfold_document(&corpus::sign_kfold(2), Reference::path("missing.json"));
    doc.write(&path).unwrap();
    let out = run_check(&path, &RunOptions::default());
    assert_eq!(out.exit_code, EXIT_PARSE);
    assert!(out.text.contains("missing.json"));
}

#[test]
fn deloop_over_boolean_emits_product_preorders() {
    let dir = tempfile::tempdir().unwrap();
    let options = RunOptions {
        emit: Some(dir.path().to_path_buf()),
        ..RunOptions::default()
    };
    let base = fixture("boolean-poset.kfold.json");
    let out = run_deloop(&base, &[fixture("chain.enriched.json"), fixture("vee.enriched.json")], &options);
    assert_eq!(out.exit_code, 0, "{}", out.text);

    // Oracle: the product preorder, ordered componentwise, built directly.
    let (chain, vee) = (corpus::chain_preorder(), corpus::vee_preorder());
    let leq = |p: &itermon::enrich::EnrichedCategory, a: usize, b: usize| {
        p.base().base().object_name(p.hom(a, b)) == "1"
    };
    let names: Vec<String> = (0..6).map(|x| format!("({},{})", chain.object_name(x / 3), vee.object_name(x % 3))).collect();
    let mut relation = Vec::new();
    for x in 0..6 {
        for y in 0..6 {
            if leq(&chain, x / 3, y / 3) && leq(&vee, x % 3, y % 3) {
                relation.push((names[x].as_str(), names[y].as_str()));
            }
        }
    }
    let objects: Vec<&str> = names.iter().map(String::as_str).collect();
    let absolute = Reference::path(fs::canonicalize(&base).unwrap().display().to_string());
    for i in 1..=2 {
        let oracle = corpus::preorder(&format!("(chain⊗{i}vee)"), &objects, &relation).unwrap();
        let emitted = fs::read_to_string(dir.path().join(product_file_name("chain", i, "vee"))).unwrap();
        assert_eq!(emitted, enriched_document(&oracle, absolute.clone()).to_json());
    }
    let emitted = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(emitted, 8);
}

#[test]
fn deloop_over_sign_passes() {
    let out = run_deloop(
        &fixture("sign.kfold.json"),
        &[fixture("constant.enriched.json"), fixture("twisted.enriched.json")],
        &RunOptions::default(),
    );
    assert_eq!(out.exit_code, 0, "{}", out.text);
}

#[test]
fn deloop_with_k2_marks_interchange_not_applicable() {
    let out = run_deloop(
        &fixture("sign-k2.kfold.json"),
        &[fixture("constant-k2.enriched.json"), fixture("twisted-k2.enriched.json")],
        &RunOptions::default(),
    );
    assert_eq!(out.exit_code, 0, "{}", out.text);
    let deloop = out.reports.last().unwrap();
    let check = deloop.check("interchange").unwrap();
    assert_eq!(check.status, Status::NotApplicable);
    assert_eq!(check.note.as_deref(), Some("not applicable (k−1 < 2)"));
}

#[test]
fn deloop_base_mismatch_exits_3() {
    let out = run_deloop(&fixture("sign-k2.kfold.json"), &[fixture("constant.enriched.json")], &RunOptions::default());
    assert_eq!(out.exit_code, EXIT_BASE_MISMATCH);
}

#[test]
fn deloop_rejects_wrong_kinds() {
    let out = run_deloop(&fixture("sign.category.json"), &[fixture("constant.enriched.json")], &RunOptions::default());
    assert_eq!(out.exit_code, EXIT_PARSE);
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn sampled_reports_are_deterministic_and_record_the_seed() {
    let options = RunOptions {
        check: CheckOptions {
            exhaustive_budget: 100,
            sample: 40,
            seed: 7,
        },
        format: Format::Machine,
        ..RunOptions::default()
    };
    let run = || {
        let out = run_check(&fixture("sign.kfold.json"), &options);
        assert_eq!(out.exit_code, 0);
        let mut v: Value = serde_json::from_str(&out.machine).unwrap();
        strip_timing(&mut v);
        v
    };
    let (a, b) = (run(), run());
    assert_eq!(a, b);
    assert_eq!(a["tool"], "itermon");
    assert_eq!(a["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(a["seed"], 7);
    assert_eq!(a["passed"], true);
    let checks = a["suites"][1]["checks"].as_array().unwrap();
    let hexagon = checks.iter().find(|c| c["name"] == "giant-hexagon(1,2,3)").unwrap();
    assert_eq!(hexagon["status"], "sampled-pass");
    assert_eq!(hexagon["sampling"]["seed"], 7);
    assert_eq!(hexagon["sampling"]["size"], 40);
    assert!(a["coverage"].as_object().unwrap().keys().any(|k| k.contains("giant-hexagon")));
}

#[test]
fn machine_report_is_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let options = RunOptions {
        report: Some(report.clone()),
        ..RunOptions::default()
    };
    let out = run_check(&fixture("broken/giant-hexagon.kfold.json"), &options);
    assert_eq!(out.exit_code, EXIT_FAIL);
    let v: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["exit_code"], EXIT_FAIL);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_itermon"))
}

#[test]
fn binary_exit_codes() {
    let status = |args: &[&str]| binary().args(args).current_dir(fixtures()).output().unwrap().status.code();
    assert_eq!(status(&["check", "sign.kfold.json"]), Some(0));
    assert_eq!(status(&["check", "broken/external-unit.kfold.json"]), Some(1));
    assert_eq!(status(&["check", "no-such-file.json"]), Some(2));
    assert_eq!(status(&["deloop", "sign-k2.kfold.json", "twisted.enriched.json"]), Some(3));
    assert_eq!(status(&["deloop", "sign.kfold.json", "constant.enriched.json", "twisted.enriched.json"]), Some(0));
}

#[test]
fn binary_machine_format_prints_the_envelope() {
    let out = binary()
        .args(["check", "chain.enriched.json", "--format", "machine", "--seed", "3"])
        .current_dir(fixtures())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["suites"][0]["suite"], "enriched-category(chain)");
}
