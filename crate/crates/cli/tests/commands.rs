use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_derivring")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn variety(dir: &tempfile::TempDir, name: &str, vars: &[&str], gens: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{}.json", name));
    let body = serde_json::json!({ "name": name, "variables": vars, "generators": gens });
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

#[test]
fn info_on_an_exported_cusp_file() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["catalog", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let cusp = dir.path().join("cusp.json");
    let (code, out, _) = run(&["info", cusp.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "n=2 m=1 r=1 dim=1 smooth=false generators=1");
    let (_, json, _) = run(&["info", "cusp", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["r"], 1);
    assert_eq!(v["smooth"], false);
}

#[test]
fn smooth_verdict_is_the_exit_code() {
    assert_eq!(run(&["smooth", "circle"]).0, 0);
    assert_eq!(run(&["smooth", "twisted-cubic.json"]).0, 0);
    let (code, out, _) = run(&["smooth", "cusp"]);
    assert_eq!((code, out.trim()), (1, "singular"));
}

#[test]
fn reports_on_the_cusp() {
    assert_eq!(run(&["ideals", "cusp"]).1.trim(), "a_1: {x^2, y}");
    assert_eq!(run(&["derivations", "cusp"]).1.trim(), "d(1)(1,2) = (2*y)*d_x + (3*x^2)*d_y");
    let rank = run(&["rank", "cusp"]).1;
    assert!(rank.contains("r=1\n") && rank.contains("J_r={(1),(2)}") && rank.contains("J_r+1={(1,2)}"));
    let (_, member, _) = run(&["member", "cusp", "--derivation", "2*x, 3*y"]);
    assert_eq!(member.trim(), "derivation=true natural=false");
    let (_, member, _) = run(&["member", "cusp", "--derivation", "2*y,3*x^2"]);
    assert_eq!(member.trim(), "derivation=true natural=true");
    assert_eq!(run(&["point", "cusp", "--at", "0,0"]).1.trim(), "on_variety=true singular=true tangent_dim=2");
    assert_eq!(run(&["point", "cusp", "--at", "4,-8"]).1.trim(), "on_variety=true singular=false tangent_dim=1");
    assert_eq!(run(&["point", "cusp", "--at", "1,2"]).1.trim(), "on_variety=false");
    assert_eq!(run(&["point", "circle", "--at", "-1,0"]).1.trim(), "on_variety=true singular=false tangent_dim=1");
}

#[test]
fn apply_acts_right_to_left() {
    // d = 2y d_x + 3x^2 d_y; d(d(y)) = 12xy
    let (code, out, _) = run(&["apply", "cusp", "--op", "4*x*d(1)(1,2)*d(1)(1,2) - 2*d(1)(1,2)", "--to", "y"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "48*x^2*y - 6*x^2");
    // [d, x] is multiplication by d(x) = 2y
    let commutator = "d(1)(1,2)*x - x*d(1)(1,2)";
    assert_eq!(run(&["apply", "cusp", "--op", commutator, "--to", "1"]).1.trim(), "2*y");
    assert_eq!(run(&["apply", "cusp", "--op", commutator, "--to", "x^2 + y"]).1.trim(), "2*x^2*y + 2*y^2");
    assert_eq!(run(&["apply", "cusp", "--op", "-[x + 1]", "--to", "y"]).1.trim(), "-x*y - y");
}

#[test]
fn presentation_of_a_coordinate_subspace() {
    let (_, out, _) = run(&["presentation", "subspace-1-2"]);
    assert!(out.contains("generators: x1, x2, d(1)(1,2)"), "{}", out);
    assert!(out.contains("d(1)(1,2)*x2 = x2*d(1)(1,2) + 1"), "{}", out);
    let (_, json, _) = run(&["presentation", "subspace-1-2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["generators"]["d_symbols"][0]["j"], serde_json::json!([1, 2]));
}

#[test]
fn verify_reports_every_suite() {
    let (code, out, _) = run(&["verify", "cusp"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 10);
    assert!(out.contains("all 9 property suites passed"));
    let (code, out, _) = run(&["verify", "node", "--suite", "relations"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("relations: ok"));
    assert_eq!(run(&["verify", "cusp", "--suite", "bogus"]).0, 2);
}

#[test]
fn parse_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for (name, vars, gens) in [
        ("syntax", vec!["x", "y"], vec!["x**y"]),
        ("implicit", vec!["x", "y"], vec!["2x"]),
        ("unknown", vec!["x"], vec!["x - q"]),
        ("dup", vec!["x", "x"], vec!["x"]),
        ("ident", vec!["1x"], vec!["1"]),
    ] {
        let path = variety(&dir, name, &vars, &gens);
        let (code, _, err) = run(&["info", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{}: {}", name, err);
        assert!(!err.is_empty());
    }
    let bad = dir.path().join("broken.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["info", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["info", "no-such-variety"]).0, 2);
    assert_eq!(run(&["apply", "cusp", "--op", "d(1)(1", "--to", "x"]).0, 2);
    assert_eq!(run(&["member", "cusp", "--derivation", "x"]).0, 2);
}

#[test]
fn precondition_violations_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    for (name, vars, gens, needle) in [
        ("reducible", vec!["x", "y"], vec!["x*y"], "non-primality"),
        ("point", vec!["x", "y"], vec!["x", "y - 1"], "maximal"),
        ("unit", vec!["x"], vec!["x", "x - 1"], "unit"),
    ] {
        let path = variety(&dir, name, &vars, &gens);
        let (code, _, err) = run(&["info", path.to_str().unwrap()]);
        assert_eq!(code, 3, "{}: {}", name, err);
        assert!(err.contains(needle), "{}: {}", name, err);
    }
}
