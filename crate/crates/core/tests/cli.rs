use std::path::{Path, PathBuf};

use hypar::cli::run;

fn hypar(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("hypar").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn generated(dir: &Path, kind: &str, dim: &str) -> PathBuf {
    let path = dir.join(format!("{kind}_{dim}.json"));
    let (code, _, err) = hypar(&["gen", "--kind", kind, "--dim", dim, "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    path
}

fn corpus_dir() -> String {
    format!("{}/data/corpus", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn charpoly_of_generated_b2() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(dir.path(), "type_B", "2");
    let (code, out, _) = hypar(&["charpoly", "-i", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("a: 3 4 1"), "{out}");
    let (code, out, _) = hypar(&["--json", "charpoly", "-i", f.to_str().unwrap(), "--level", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["level"], 1);
    assert_eq!(v["a"], serde_json::json!([4, 4]));
}

#[test]
fn chambers_faces_project_phi() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(dir.path(), "boolean", "2");
    let f = f.to_str().unwrap();
    let (_, out, _) = hypar(&["chambers", "-i", f]);
    assert!(out.starts_with("chambers: 4"), "{out}");
    let (_, out, _) = hypar(&["faces", "-i", f, "--chamber", "++"]);
    assert!(out.starts_with("faces by dimension: 1 2 1"), "{out}");
    let (code, out, _) = hypar(&["--json", "project", "-i", f, "--chamber", "++", "--point", "-1,3/2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["point"], serde_json::json!(["0", "3/2"]));
    assert_eq!(v["face"], "0+");
    assert_eq!(v["k"], 1);
    let (_, out, _) = hypar(&["--json", "phi", "-i", f, "--point", "0,4"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["phi"], serde_json::json!([2, 4, 2]));
    assert_eq!(v["projection_counts"], serde_json::json!([2, 2, 0]));
    assert_eq!(v["exceptional"], serde_json::json!([true, true, true]));
}

#[test]
fn verify_bundled_corpus() {
    let (code, out, err) = hypar(&["verify", "-i", &corpus_dir(), "--all", "--points", "20"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));
    assert_eq!(out.lines().filter(|l| l.ends_with(": pass")).count(), 11);
}

#[test]
fn verify_explicit_points() {
    let f = format!("{}/triangle.json", corpus_dir());
    let (code, out, _) = hypar(&["--json", "verify", "-i", &f, "--point", "0,0", "--point", "1/3,1/3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn intrinsic_volumes_of_quadrants() {
    let f = format!("{}/boolean_2.json", corpus_dir());
    let (code, out, err) = hypar(&["--json", "intrinsic", "-i", &f, "--samples", "4000", "--seed", "3"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["estimate"]["mismatched_samples"], 0);
    assert_eq!(v["estimate"]["aggregate"], serde_json::json!([1.0, 2.0, 1.0]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // statistical failure: a zero-width band cannot hold
    let f = format!("{}/boolean_2.json", corpus_dir());
    assert_eq!(hypar(&["intrinsic", "-i", &f, "--samples", "500", "--z", "0"]).0, 1);
    // affine arrangements have no conic intrinsic volumes
    let tri = format!("{}/triangle.json", corpus_dir());
    assert_eq!(hypar(&["intrinsic", "-i", &tri]).0, 2);
    assert_eq!(hypar(&["chambers", "-i", "/nonexistent.json"]).0, 2);
    assert_eq!(hypar(&["frobnicate"]).0, 2);
    assert_eq!(hypar(&["project", "-i", &f, "--chamber", "+0", "--point", "1,1"]).0, 2);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim": 2, "hyperplanes": [{"normal": ["0", "0"], "offset": "1"}]}"#).unwrap();
    assert_eq!(hypar(&["charpoly", "-i", bad.to_str().unwrap()]).0, 2);
    let (code, _, err) = hypar(&["gen", "--kind", "random", "--dim", "2", "-m", "30", "--seed", "1", "-o", dir.path().join("big.json").to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(hypar(&["chambers", "-i", dir.path().join("big.json").to_str().unwrap()]).0, 3);
}
