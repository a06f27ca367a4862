use std::process::{Command, Output};

use serde_json::Value;

fn ribbonry(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbonry"))
        .args(args)
        .env_remove("RIBBONRY_MEMO_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{value}");
}

#[test]
fn count_three_by_six() {
    let out = ribbonry(&["count", "--rect", "3x6", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("count", &v);
    assert_eq!(v["count"], "61");
    assert_eq!(v["tiles"], 6);
    let expected = 61f64.log2() / 6.0;
    assert!((v["entropy"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!((expected - 0.98850).abs() < 1e-4);
}

#[test]
fn count_aztec_diamond() {
    let v = json(&ribbonry(&["count", "--aztec", "N=2,n=3,k=1"]));
    assert_valid("count", &v);
    assert_eq!(v["count"], "8");
    assert_eq!(v["tiles"], 6);
    assert_eq!(v["entropy"], 0.5);
}

#[test]
fn untileable_count_succeeds_with_zero() {
    let out = ribbonry(&["count", "--rect", "2x3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("count", &v);
    assert_eq!(v["count"], "0");
    assert!(v["entropy"].is_null());
}

#[test]
fn counts_ignore_thread_count_and_memo_limit() {
    let base = stdout(&ribbonry(&["count", "--rect", "4x8", "--n", "4"]));
    for extra in [["--threads", "4"], ["--memo-limit", "100"]] {
        let mut args = vec!["count", "--rect", "4x8", "--n", "4"];
        args.extend(extra);
        assert_eq!(stdout(&ribbonry(&args)), base);
    }
    let with_env = Command::new(env!("CARGO_BIN_EXE_ribbonry"))
        .args(["count", "--rect", "4x8", "--n", "4"])
        .env("RIBBONRY_MEMO_LIMIT", "0")
        .output()
        .unwrap();
    assert_eq!(stdout(&with_env), base);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["count", "--rect", "3x6"],
        vec!["count", "--rect", "3by6", "--n", "3"],
        vec!["count", "--rect", "3x6", "--stair", "M=2,n=3", "--n", "3"],
        vec!["count", "--aztec", "N=2,n=3", "--n", "2"],
        vec!["count", "--stair", "M=2"],
        vec!["count", "--grid", "/nonexistent/region.txt", "--n", "2"],
        vec!["count", "--rect", "2x2", "--n", "2", "--format", "svg"],
        vec!["verify", "everything"],
        vec!["frobnicate"],
    ] {
        assert_eq!(ribbonry(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn enumerate_streams_json_lines() {
    let out = ribbonry(&["enumerate", "--rect", "2x2", "--n", "2"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        assert_valid("tiling", &serde_json::from_str(line).unwrap());
    }
    let limited = stdout(&ribbonry(&["enumerate", "--rect", "3x6", "--n", "3", "--limit", "5"]));
    assert_eq!(limited.lines().count(), 5);
    let all = stdout(&ribbonry(&["enumerate", "--rect", "3x6", "--n", "3"]));
    assert_eq!(all.lines().count(), 61);
}

#[test]
fn sampling_is_deterministic() {
    let args = ["sample", "--stair", "M=7,n=3", "--seed", "1"];
    let (a, b) = (ribbonry(&args), ribbonry(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_valid("tiling", &json(&a));
    let threaded = ribbonry(&["sample", "--stair", "M=7,n=3", "--seed", "1", "--threads", "3"]);
    assert_eq!(threaded.stdout, a.stdout);
}

#[test]
fn sampling_an_untileable_region_fails() {
    let out = ribbonry(&["sample", "--rect", "2x2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn render_svg_has_one_polygon_per_tile() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiling.json");
    let sampled = ribbonry(&["sample", "--aztec", "N=3,n=3,k=1", "--seed", "9"]);
    std::fs::write(&path, &sampled.stdout).unwrap();
    let tiles = json(&sampled)["tiles"].as_array().unwrap().len();
    assert_eq!(tiles, 12);

    let out = ribbonry(&["render", "--in", path.to_str().unwrap(), "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polygon").count(), tiles);
    assert_eq!(svg.matches("<circle").count(), tiles);
    assert_eq!(svg.matches('<').count(), svg.matches("/>").count() + 2);

    let text = stdout(&ribbonry(&["render", "--in", path.to_str().unwrap(), "--format", "text"]));
    let letters: std::collections::HashSet<char> = text.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    assert_eq!(letters.len(), tiles);
    assert_eq!(text.chars().filter(|c| c.is_ascii_alphanumeric()).count(), 36);
}

#[test]
fn render_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"tiles":[{"root":[0,0],"shape":"E"},{"root":[1,0],"shape":"N"}]}"#).unwrap();
    assert_eq!(ribbonry(&["render", "--in", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn graph_exports() {
    let dot = stdout(&ribbonry(&["graph", "--rect", "3x3", "--n", "3"]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=dashed").count(), 3);
    assert_eq!(dot.matches("style=solid").count(), 0);

    let dot = stdout(&ribbonry(&["graph", "--rect", "3x4", "--n", "3"]));
    assert_eq!(dot.matches("style=dashed").count(), 5);
    assert_eq!(dot.matches("style=solid").count(), 1);

    let v = json(&ribbonry(&["graph", "--stair", "M=9,n=5", "--format", "json"]));
    assert_valid("graph", &v);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
    let levels: Vec<i64> = v["vertices"].as_array().unwrap().iter().map(|x| x["level"].as_i64().unwrap()).collect();
    let mut pairs: Vec<(i64, i64)> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let (a, b) = (levels[e["from"].as_u64().unwrap() as usize], levels[e["to"].as_u64().unwrap() as usize]);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    let mut expected: Vec<(i64, i64)> =
        (0..9).flat_map(|k| (1..=2).filter(move |i| k + i < 9).map(move |i| (2 * k, 2 * (k + i)))).collect();
    expected.sort_unstable();
    assert_eq!(pairs, expected);
    assert_eq!(v["admissible_orientations"], json(&ribbonry(&["count", "--stair", "M=9,n=5"]))["count"]);

    assert_eq!(ribbonry(&["graph", "--rect", "2x2", "--n", "3"]).status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let out = ribbonry(&["verify", "formulas"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("verify", &v);
    assert_eq!(v["failed"], 0);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "3x6/n=3: expect 61" && c["status"] == "pass"));

    for suite in ["bijection", "stanley"] {
        let out = ribbonry(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_valid("verify", &json(&out));
    }

    let out = ribbonry(&["verify", "growth", "--rect", "3x6", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["actual"], "within bounds");
}

#[test]
fn verify_skips_checks_over_the_resource_limit() {
    let out = ribbonry(&["verify", "bijection", "--free-edge-limit", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid("verify", &v);
    assert!(v["skipped"].as_u64().unwrap() > 0);
    assert_eq!(v["failed"], 0);
}

#[test]
fn grid_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shape.txt");
    std::fs::write(&path, "..###\n.####\n####.\n###..\n").unwrap();
    let v = json(&ribbonry(&["count", "--grid", path.to_str().unwrap(), "--n", "2"]));
    assert_eq!(v["count"], "7");
    std::fs::write(&path, "#?#\n").unwrap();
    let out = ribbonry(&["count", "--grid", path.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}
