//! Command-line behavior: exit codes, output formats, round trips.

mod common;

use common::{fixture, fixture_names, load, qavg, write_temp};
use serde_json::Value;

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn every_fixture_verifies() {
    for name in fixture_names() {
        let r = qavg(&["verify", &path(&name)]);
        assert_eq!(r.code, 0, "{name}\n{}{}", r.stdout, r.stderr);
        assert!(r.stdout.lines().last().unwrap().ends_with("checks passed"));
        assert!(!r.stdout.contains("FAIL"), "{name}");
    }
}

#[test]
fn json_reports_are_one_object_per_line() {
    let r = qavg(&["verify", "--json", &path("z2_swap")]);
    assert_eq!(r.code, 0);
    let reports: Vec<Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(reports.len() > 20);
    for rep in &reports {
        assert_eq!(rep["pass"], Value::Bool(true));
        assert!(rep["check_name"].is_string());
        assert!(rep["residual"].is_number());
    }
    let names: Vec<_> = reports.iter().map(|r| r["check_name"].as_str().unwrap()).collect();
    for expected in [
        "metric.equivariant",
        "metric.idempotent",
        "metric.definite",
        "psi.positive",
        "haar.matches_computed",
    ] {
        assert!(names.contains(&expected), "{expected}");
    }
}

#[test]
fn format_reproduces_fixtures_byte_for_byte() {
    for name in fixture_names() {
        let r = qavg(&["format", &path(&name)]);
        assert_eq!(r.code, 0);
        assert_eq!(r.stdout, std::fs::read_to_string(fixture(&name)).unwrap(), "{name}");
    }
}

#[test]
fn gallery_regenerates_the_shipped_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let r = qavg(&["gallery", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for name in qavg::gallery::GALLERY_NAMES {
        let fresh = std::fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap();
        assert_eq!(fresh, std::fs::read_to_string(fixture(name)).unwrap(), "{name}");
    }
}

#[test]
fn runs_are_deterministic() {
    for args in [
        ["verify", "s3_group_algebra"],
        ["average", "s3_points"],
        ["haar", "z3_group_algebra"],
    ] {
        let a = qavg(&[args[0], &path(args[1])]);
        let b = qavg(&[args[0], &path(args[1])]);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn average_writes_an_invariant_document() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("avg.json");
    let r = qavg(&["average", &path("z2_swap"), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        doc["metric"]["gram"],
        serde_json::json!([[[0, 0, 1], ["2", "0"]], [[1, 1, 0], ["2", "0"]]])
    );
    assert_eq!(qavg(&["verify", out.to_str().unwrap()]).code, 0);
    // averaging again changes nothing
    let again = qavg(&["average", out.to_str().unwrap()]);
    assert_eq!(again.stdout, std::fs::read_to_string(&out).unwrap());
}

#[test]
fn inverse_convention_reaches_the_same_average() {
    let forward: Value = serde_json::from_str(&qavg(&["average", &path("s3_points")]).stdout).unwrap();
    let inverse: Value = serde_json::from_str(&qavg(&["average", &path("s3_points_inverse")]).stdout).unwrap();
    assert_eq!(forward["metric"], inverse["metric"]);
    assert_eq!(qavg(&["oracle", &path("s3_points_inverse")]).code, 0);
}

#[test]
fn haar_prints_labels_and_values() {
    let r = qavg(&["haar", &path("z2_swap")]);
    assert_eq!(r.stdout, "0\t1/2\n1\t1/2\n");
    let r = qavg(&["haar", "--json", &path("z3_group_algebra")]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["haar"], serde_json::json!([["1", "0"], ["0", "0"], ["0", "0"]]));
}

#[test]
fn backend_override_runs_in_floats() {
    let r = qavg(&["--backend", "float", "verify", &path("s3_points")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = qavg(&["haar", "--backend", "float", &path("z2_swap")]);
    assert_eq!(r.stdout, "0\t0.5\n1\t0.5\n");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(qavg(&["verify", "/nonexistent/doc.json"]).code, 2);
    assert_eq!(qavg(&["verify"]).code, 2);
    assert_eq!(qavg(&["frobnicate"]).code, 2);
    assert_eq!(qavg(&["verify", "--suite", "everything", &path("z2_swap")]).code, 2);

    let garbage = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(garbage.path(), "{ not json").unwrap();
    let r = qavg(&["validate", garbage.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));

    let mut doc = load("z2_swap");
    doc["surprise"] = Value::Bool(true);
    assert_eq!(qavg(&["verify", write_temp(&doc).path().to_str().unwrap()]).code, 2);

    let mut doc = load("z2_swap");
    doc["version"] = Value::from("9");
    assert_eq!(qavg(&["verify", write_temp(&doc).path().to_str().unwrap()]).code, 2);

    let mut doc = load("z2_swap");
    doc["algebra"]["mult"][0][0] = serde_json::json!([0, 0, 7]);
    assert_eq!(qavg(&["verify", write_temp(&doc).path().to_str().unwrap()]).code, 2);

    let mut doc = load("s3_points_inverse");
    doc["group_provenance"]["group"]["table"][0][0] = Value::from(1);
    assert_eq!(qavg(&["verify", write_temp(&doc).path().to_str().unwrap()]).code, 2);

    // no provenance to compare against
    assert_eq!(qavg(&["oracle", &path("z3_group_algebra")]).code, 2);
}

#[test]
fn help_and_version_exit_cleanly() {
    let r = qavg(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verify"));
    assert_eq!(qavg(&["--version"]).code, 0);
}

#[test]
fn suites_run_individually() {
    for suite in ["hopf", "coaction", "calculus", "lemmas", "theorem"] {
        let r = qavg(&["verify", "--suite", suite, &path("z3_cycle")]);
        assert_eq!(r.code, 0, "{suite}: {}", r.stdout);
    }
    let r = qavg(&["verify", "--suite", "theorem", &path("s3_points_inverse"), "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 4);
}

#[test]
fn library_entry_point_matches_the_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qavg_cli::run(["qavg", "verify", &path("trivial")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(
        String::from_utf8(out).unwrap(),
        qavg(&["verify", &path("trivial")]).stdout
    );
}
