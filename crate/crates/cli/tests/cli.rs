use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_postlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["--algebra", &fixture("gl2.json"), "validate"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS"));

    let bad = run(&["--algebra", &fixture("sl2_zero_r.json"), "validate"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL MCYBE"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"dim\": 2, \"bracket\": [").unwrap();
    let parse = run(&["--algebra", path.to_str().unwrap(), "validate"]);
    assert_eq!(parse.status.code(), Some(2));

    assert_eq!(run(&["validate"]).status.code(), Some(2));
    assert_eq!(
        run(&["--algebra", "/nonexistent.json", "validate"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn validate_json_lists_failures() {
    let o = run(&[
        "--algebra",
        &fixture("sl2_zero_r.json"),
        "--format",
        "json",
        "validate",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failures = v["failures"].as_array().unwrap();
    assert!(failures
        .iter()
        .any(|f| f["identity"] == "MCYBE" && f["basis"].as_array().unwrap().len() == 2));
}

#[test]
fn chi_matches_closed_forms_and_checks_pass() {
    let o = run(&[
        "--algebra",
        &fixture("gl2.json"),
        "--format",
        "json",
        "--check",
        "chi",
        "--x",
        "1,2,-1,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let chi = v["chi"].as_array().unwrap();
    assert_eq!(chi.len(), 6);
    // R₋x = E21 and [E21, x] = (−2, 0, −2, 2), so χ₂ = −½ x▷x = (1, 0, 1, −1)
    assert_eq!(chi[1]["coords"], serde_json::json!(["1", "0", "1", "-1"]));
    assert_eq!(
        chi[2]["coords"],
        serde_json::json!(["-2/3", "-2/3", "-4/3", "2/3"])
    );
    assert_eq!(v["checks"]["exp(x) = exp*(chi(x))"], true);
    assert_eq!(v["checks"]["ODE residual"], true);
}

#[test]
fn chi_on_trivial_product_vanishes_beyond_order_one() {
    let o = run(&[
        "--algebra",
        &fixture("gl2_trivial.json"),
        "chi",
        "--x",
        "1,1/2,0,-3",
        "--order",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for n in 2..=4 {
        assert!(text.contains(&format!("chi_{n} = [0, 0, 0, 0]")), "{text}");
    }
}

#[test]
fn chi_input_errors() {
    let o = run(&["--algebra", &fixture("gl2.json"), "chi", "--x", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--algebra", &fixture("gl2.json"), "chi", "--x", "1,2,a,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "--algebra",
        &fixture("sl2_zero_r.json"),
        "chi",
        "--x",
        "1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "--algebra",
        &fixture("gl2.json"),
        "--trunc",
        "0",
        "validate",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn factorize_tables() {
    let o = run(&[
        "--mode",
        "float",
        "--format",
        "json",
        "factorize",
        "--random",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        let q = r["ratio"].as_f64().unwrap();
        assert!((22.0..=45.0).contains(&q), "{q}");
    }

    let o = run(&[
        "--mode",
        "float",
        "--format",
        "json",
        "factorize",
        "--random",
        "3",
        "--strictly-upper",
        "--t",
        "0,0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(r["error"].as_f64().unwrap() <= 1e-12);
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, "[[0.1, 0.2], [0.3, -0.1]]").unwrap();
    let o = run(&[
        "--mode",
        "float",
        "factorize",
        "--matrix",
        path.to_str().unwrap(),
        "--t",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.000000e0"));

    assert_eq!(run(&["factorize", "--random", "2"]).status.code(), Some(2));
    let tight = run(&[
        "--mode",
        "float",
        "factorize",
        "--random",
        "2",
        "--band",
        "1,2",
    ]);
    assert_eq!(tight.status.code(), Some(1));
}

#[test]
fn partitions_order() {
    let o = run(&["partitions", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    let blocks: Vec<&str> = lines
        .iter()
        .take(5)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(
        blocks,
        [
            "{{1},{2},{3}}",
            "{{1},{2,3}}",
            "{{1,2},{3}}",
            "{{1,2,3}}",
            "{{2},{1,3}}"
        ]
    );
    assert_eq!(lines[5], "5 partitions");
    assert_eq!(run(&["partitions", "13"]).status.code(), Some(2));
}

#[test]
fn star_two_letters() {
    let o = run(&["--algebra", &fixture("gl2.json"), "star", "E21", "E12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("E21*E12 = E21E12 + E21▷E12\n"), "{text}");
    // E21 E12 = E12 E21 − E11 + E22 in PBW order, and E21▷E12 = E11 − E22
    assert!(text.contains("E21*E12 = 1·E12 E21"), "{text}");
    let unknown = run(&["--algebra", &fixture("gl2.json"), "star", "E21", "q"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn identities_on_gl2_pass_and_are_deterministic() {
    let args = [
        "--algebra",
        &fixture("gl2.json"),
        "--trunc",
        "4",
        "--seed",
        "3",
        "identities",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let seq: Vec<&str> = args.iter().copied().chain(["--sequential"]).collect();
    assert_eq!(run(&seq).stdout, a.stdout);
}

#[test]
fn identities_report_first_counterexample() {
    let o = run(&[
        "--algebra",
        &fixture("sl2_zero_r.json"),
        "--trunc",
        "3",
        "identities",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first counterexample [r-matrix]"));
}
