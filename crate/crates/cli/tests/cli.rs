//! End-to-end tests of the command-line interface.

use std::process::Command;

fn riordan() -> Command {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = riordan().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn build_edges_lists_the_pascal_edges() {
    let (code, stdout, _) = run(&[
        "build",
        "-g",
        "named:pascal_g",
        "-f",
        "named:pascal_f",
        "-n",
        "6",
        "--edges",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 11, "PG6 has 11 edges");
    assert!(stdout.lines().all(|l| l.split(',').count() == 2));
}

#[test]
fn build_default_prints_adjacency() {
    let (code, stdout, _) = run(&["build", "--family", "catalan", "-n", "6"]);
    assert_eq!(code, 0);
    let expect = "\
0 1 1 0 1 0
1 0 1 0 1 0
1 1 0 1 1 1
0 0 1 0 1 0
1 1 1 1 0 1
0 0 1 0 1 0
";
    assert_eq!(stdout, expect);
}

#[test]
fn build_dot_is_sorted() {
    let (code, stdout, _) = run(&["build", "--family", "path", "-n", "3", "--dot"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph riordan {"));
    assert!(stdout.contains("1 -- 2;"));
}

#[test]
fn build_json_is_valid_and_versioned() {
    let (code, stdout, _) = run(&[
        "build", "-g", "poly:1+t", "-f", "poly:t", "-n", "5", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["n"], 5);
}

#[test]
fn enumerate_counts() {
    let (code, stdout, _) = run(&["enumerate", "-n", "5"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("count=86"));
    let (code, stdout, _) = run(&["enumerate", "-n", "3", "--matrices"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("count=6"));
    assert!(stdout.contains("matrices_total=22 matrices_invertible=8"));
}

#[test]
fn check_reports_classifications() {
    let (code, stdout, _) = run(&["check", "--family", "catalan", "-n", "8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("io-decomposable: yes"));
    assert!(stdout.contains("subgroups: bell"));
    let (code, stdout, _) = run(&["check", "--family", "catalan", "-n", "8", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["decomposition"]["io_decomposable"]["holds"], true);
}

#[test]
fn verify_figures_suite_passes() {
    let (code, stdout, _) = run(&["verify", "--suite", "figures"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("criterion 01"));
    assert!(stdout.contains("PASS"));
    assert!(stdout.contains("seed="));
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    // wall-clock runtimes vary between runs; everything else must not
    fn strip_timing(s: &str) -> String {
        s.lines()
            .map(|l| match l.find(" (") {
                Some(i) if l.ends_with("ms)") => &l[..i],
                _ => l,
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
    for args in [
        vec!["verify", "--suite", "figures", "--seed", "7"],
        vec!["verify", "--criterion", "5", "--seed", "7"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.0, 0);
        assert_eq!(a.0, b.0);
        assert_eq!(strip_timing(&a.1), strip_timing(&b.1));
        assert_eq!(a.2, b.2);
    }
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, stderr) = run(&["build", "-g", "nope:1", "-f", "poly:t", "-n", "4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("grammar"), "grammar help shown: {stderr}");
    // missing spec entirely
    let (code, _, _) = run(&["build", "-n", "4"]);
    assert_eq!(code, 2);
    // clap-level parse failure
    let (code, _, _) = run(&["build", "--family", "pascal"]);
    assert_eq!(code, 2);
}

#[test]
fn domain_errors_exit_1() {
    // f(0) != 0 is a domain error, not a usage error
    let (code, _, stderr) = run(&["enumerate", "-n", "12"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("budget") || stderr.contains("limited"));
}

#[test]
fn decompose_prints_blocks() {
    let (code, stdout, _) = run(&[
        "decompose",
        "-g",
        "rat:(1)/(1+t^2)",
        "-f",
        "rat:(t)/(1+t)",
        "-n",
        "9",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("odd-first permutation: [1, 3, 5, 7, 9, 2, 4, 6, 8]"));
    assert!(stdout.contains("0 0 0 0 0 | 1 1 1 1"));
    let (code, stdout, _) = run(&[
        "decompose",
        "-g",
        "rat:(1)/(1+t^2)",
        "-f",
        "rat:(t)/(1+t)",
        "-n",
        "9",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["odd_order"], 5);
    assert_eq!(v["x_edges"].as_array().unwrap().len(), 0);
}

#[test]
fn export_writes_files() {
    let dir = std::env::temp_dir().join(format!("riordan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g.dot");
    let csv = dir.join("g.csv");
    let json = dir.join("g.json");
    let mtxt = dir.join("m.txt");
    let mjson = dir.join("m.json");
    let golden = dir.join("golden");
    let (code, _, _) = run(&[
        "export",
        "--family",
        "pascal",
        "-n",
        "6",
        "--dot",
        dot.to_str().unwrap(),
        "--edges",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
        "--matrix-text",
        mtxt.to_str().unwrap(),
        "--matrix-json",
        mjson.to_str().unwrap(),
        "--golden",
        golden.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 11);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["edge_count"], 11);
    let mtext = std::fs::read_to_string(&mtxt).unwrap();
    assert_eq!(mtext.lines().next(), Some("1"));
    let mv: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&mjson).unwrap()).unwrap();
    assert_eq!(mv["order"], 6);
    for name in ["fig1.txt", "fig2.txt", "fig3.txt", "fig5.txt"] {
        let text = std::fs::read_to_string(golden.join(name)).unwrap();
        assert_eq!(text.lines().count(), 6, "{name} holds a 6x6 matrix");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_env_vars_are_honored() {
    let out = riordan()
        .args(["verify", "--criterion", "14"])
        .env("RIORDAN_BUDGET_UNLABELED", "1")
        .output()
        .unwrap();
    // with the unlabeled budget forced to 1, criterion 14 must refuse
    assert_eq!(out.status.code(), Some(3));
}
