use qaffine::cli::run;
use qaffine_core::flagcomb::IntMatrix;
use qaffine_core::LaurentPoly;
use serde_json::Value;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["qaffine"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn compose_example() {
    assert_eq!(ok(&["compose", "--a", "[[1,1],[0,1]]", "--b", "[[1,0],[1,1]]"]), "[[1,1],[1,0]]\n");
}

#[test]
fn verify_example_passes_and_is_deterministic() {
    let args = ["verify", "--n", "2", "--d", "2", "--relations", "a,e,f", "--window", "2", "--samples", "8", "--seed", "42", "--format", "json"];
    let first = ok(&args);
    assert_eq!(first, ok(&args));
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        for key in ["relation", "n", "d", "window", "samples", "seed", "checks", "failures"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert!(r["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn drinfeld_example() {
    let v = json(&["drinfeld", "--lambda", "2,1", "--n", "3", "--alpha", "2,3", "--t", "5"]);
    assert_eq!(v["polys"], serde_json::json!([["-1/15", "1"], ["-1/2", "1"]]));
    assert_eq!(v["dual"], serde_json::json!([2, 1, 0]));
    assert_eq!(v["fundamental"][0]["weight"], 2);
}

#[test]
fn serialized_values_parse_back() {
    let c = json(&["compose", "--a", "[[1,1],[0,1]]", "--b", "[[1,0],[1,1]]"]);
    let m = IntMatrix::parse(c["result"].as_str().unwrap()).unwrap();
    assert_eq!(m.to_string(), "[[1,1],[1,0]]");
    let p = json(&["pushforward", "--a", "[[1,1],[0,0]]", "--f", "x1"]);
    let poly = LaurentPoly::parse(p["value"].as_str().unwrap(), 2).unwrap();
    assert_eq!(poly, &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1));
    let s = json(&["star", "grassmann", "--v", "0,0", "--a", "1", "--b", "1"]);
    let val = LaurentPoly::parse(s["value"].as_str().unwrap(), 2).unwrap();
    assert_eq!(val.pretty(), "(q^2 + 1)");
    let d = json(&["decompose", "--c", "[[1,1],[1,0]]"]);
    assert_eq!(d["recomposes"], Value::Bool(true));
    for f in d["factors"].as_array().unwrap() {
        IntMatrix::parse(f.as_str().unwrap()).unwrap();
    }
}

#[test]
fn other_subcommands() {
    assert_eq!(ok(&["dual", "--lambda", "2,1", "--n", "3"]), "2,1,0\n");
    let q = json(&["qid", "--max", "4", "--specialize", "2"]);
    assert_eq!(q["passed"], Value::Bool(true));
    assert_eq!(q["rows"][1]["value"], "5/2");
    let star = ok(&["star", "elem", "--a", "[[1,1],[0,1]]", "--f", "x2", "--b", "[[1,0],[1,1]]"]);
    assert!(star.contains("[[1,1],[1,0]]") && star.contains("x3"), "{star}");
    let diag = ok(&["star", "diag", "--v", "1,1", "--b", "[[1,0],[1,0]]"]);
    assert!(diag.starts_with("matrix: [[1,0],[1,0]]"));
}

#[test]
fn out_file_matches_json_stdout() {
    let path = std::env::temp_dir().join(format!("qaffine-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let stdout = ok(&["dual", "--lambda", "3", "--n", "4", "--format", "json", "--out", p]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["qaffine"],
        vec!["qaffine", "bogus"],
        vec!["qaffine", "verify", "--n", "2"],
        vec!["qaffine", "verify", "--n", "2", "--d", "1", "--relations", "z"],
        vec!["qaffine", "compose", "--a", "[[1,1]", "--b", "[[1]]"],
        vec!["qaffine", "drinfeld", "--lambda", "2,1", "--n", "3", "--alpha", "2", "--t", "5"],
        vec!["qaffine", "drinfeld", "--lambda", "1", "--n", "3", "--alpha", "2", "--t", "-1"],
        vec!["qaffine", "pushforward", "--a", "[[1,1],[0,0]]", "--f", "x1", "--side", "3"],
    ] {
        let out = run(args.clone());
        assert_eq!(out.code, 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
