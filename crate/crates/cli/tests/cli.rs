use std::path::PathBuf;
use std::process::Command;

use topo_cli::run_cli_with;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("topo").chain(args.iter().copied());
    let code = run_cli_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn conditions_on_example() {
    let (code, out, _) = run(&["conditions", &fixture("example.json")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["sufficient"], false);
    assert_eq!(v["necessary"], true);
    assert_eq!(v["sufficient_failure"], 1);
    assert_eq!(v["e_closure"][1], serde_json::json!([]));
}

#[test]
fn extend_reports_the_failing_point() {
    let (code, out, err) = run(&["extend", &fixture("example.json")]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("ConditionFailed") && err.contains("point 1"), "{err}");
}

#[test]
fn extend_writes_map_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    let (code, _, _) = run(&["extend", &fixture("regular.json"), "--mode", "corollary", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let map = std::fs::read_to_string(&path).unwrap();
    let v = json(&map);
    assert_eq!(v["assignment"][0], 0);
    assert_eq!(v["assignment"][2], 1);
    let (code, out, _) = run(&["check-map", &fixture("regular.json"), "--map", path.to_str().unwrap(), "--criterion", "continuous"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn tie_breaks_agree_on_singleton_choices() {
    let (_, min, _) = run(&["extend", &fixture("regular.json"), "--tie-break", "min"]);
    let (_, max, _) = run(&["extend", &fixture("regular.json"), "--tie-break", "max"]);
    assert_eq!(json(&min)["assignment"][1], 0);
    assert_eq!(json(&max)["assignment"][1], 1);
}

#[test]
fn check_map_criteria() {
    let inst = fixture("example.json");
    let map = fixture("example_map.json");
    for (criterion, expected) in [
        ("definition", 0),
        ("definition-literal", 0),
        ("closure", 0),
        ("classical", 0),
        ("continuous", 1),
    ] {
        let (code, out, _) = run(&["check-map", &inst, "--map", &map, "--criterion", criterion]);
        assert_eq!(code, expected, "{criterion}: {out}");
    }
    let (_, out, _) = run(&["check-map", &inst, "--map", &map, "--criterion", "continuous"]);
    assert_eq!(json(&out)["witness"]["kind"], "preimage");
}

#[test]
fn check_map_needs_total_f() {
    let (code, _, err) = run(&["check-map", &fixture("example.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("not total"));
}

#[test]
fn brute_finds_witness() {
    let (code, out, _) = run(&["brute", &fixture("example.json"), "--alpha", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["exists"], true);
}

#[test]
fn counts() {
    assert_eq!(run(&["count", "topologies", "--n", "3"]).1, "29\n");
    assert_eq!(run(&["count", "topologies", "--n", "3", "--t0"]).1, "19\n");
    assert_eq!(run(&["count", "topologies", "--n", "5"]).0, 2);
}

#[test]
fn closure_and_hulls() {
    assert_eq!(run(&["closure", &fixture("x3.json"), "--set", "0"]).1, "[0, 1]\n");
    assert_eq!(run(&["closure", &fixture("ysp.json"), "--set", "0", "--theta", "0"]).1, "[0]\n");
    assert_eq!(run(&["closure", &fixture("ysp.json"), "--set", "0", "--theta", "1"]).1, "[0, 1, 2]\n");
    let (code, out, _) = run(&["hulls", &fixture("ysp.json"), "--set", "0", "--alpha", "1", "--minimal", "--chains"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)[0]["chain"][0], serde_json::json!([0, 2]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["closure", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["closure", &fixture("x3.json"), "--set", "7"]).0, 2);
    assert_eq!(run(&["closure", &fixture("example.json")]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn invalid_documents_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "opens": [[], [0], [1]]}"#).unwrap();
    let (code, _, err) = run(&["fmt", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("MissingEmptyOrFull"), "{err}");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["fmt", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn fixtures_round_trip() {
    for name in ["sierpinski.json", "ysp.json", "x3.json", "example.json", "regular.json", "example_map.json"] {
        let original = std::fs::read_to_string(fixture(name)).unwrap();
        let (code, once, _) = run(&["fmt", &fixture(name)]);
        assert_eq!(code, 0);
        assert_eq!(once, original, "{name} is not canonical");
    }
}

#[test]
fn dot_output() {
    let (code, out, _) = run(&["dot", &fixture("sierpinski.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("p1 -> p0;"));
    let (code, out, _) = run(&["dot", &fixture("example.json"), "--map", &fixture("example_map.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("x1 -> y1 [label=\"F\""));
}

#[test]
fn verify_output_is_independent_of_jobs() {
    let (c1, one, _) = run(&["verify", "theorem1", "--nx", "3", "--ny", "2", "--jobs", "1"]);
    let (c8, eight, _) = run(&["verify", "theorem1", "--nx", "3", "--ny", "2", "--jobs", "8"]);
    assert_eq!((c1, c8), (0, 0));
    assert_eq!(one, eight);
    assert_eq!(json(&one)["pass"], true);
}

#[test]
fn summary_goes_to_stderr() {
    let (code, out, err) = run(&["verify", "closure-chain", "--nx", "2", "--summary"]);
    assert_eq!(code, 0);
    assert!(err.contains("result") && err.contains("PASS") && err.contains("elapsed"));
    assert!(!out.contains("elapsed"));
}

#[test]
fn binary_honours_size_override() {
    let bin = env!("CARGO_BIN_EXE_topo");
    let plain = Command::new(bin).args(["count", "topologies", "--n", "5", "--t0"]).output().unwrap();
    assert_eq!(plain.status.code(), Some(2));
    let over = Command::new(bin)
        .args(["count", "topologies", "--n", "5", "--t0"])
        .env("TOPO_SIZE_OVERRIDE", "1")
        .output()
        .unwrap();
    assert_eq!(over.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&over.stdout), "4231\n");
}
