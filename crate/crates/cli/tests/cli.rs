use std::path::Path;
use std::process::{Command, Output};

fn cawords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cawords"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_examples() {
    let o = cawords(&["gen", "--word", "fibonacci", "--len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "abaababa\n");
    let o = cawords(&["gen", "--word", "periodic", "--seed", "ab", "--len", "5"]);
    assert_eq!(stdout(&o), "ababa\n");
    let o = cawords(&[
        "gen",
        "--word",
        "asturmian",
        "--l0",
        "1",
        "--l",
        "1",
        "--eps",
        "periodic:1011",
        "--len",
        "13",
    ]);
    assert_eq!(stdout(&o), "abaababaabaab\n");
    let o = cawords(&[
        "gen",
        "--word",
        "sturmian",
        "--directive",
        "2,(1)",
        "--len",
        "10",
    ]);
    assert_eq!(stdout(&o), "aabaaabaab\n");
}

#[test]
fn gen_bad_spec_names_the_field() {
    let o = cawords(&[
        "gen",
        "--word",
        "asturmian",
        "--l",
        "1",
        "--eps",
        "nonsense",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--eps"), "{}", stderr(&o));
    let o = cawords(&["gen", "--word", "periodic", "--len", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--seed"));
    let o = cawords(&["gen", "--word-text", "abz"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--word-text"));
}

#[test]
fn apply_examples() {
    let o = cawords(&[
        "apply",
        "--rule",
        "runlength",
        "--l",
        "1",
        "--word-text",
        "aabaa",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "abba\n");

    let o = cawords(&[
        "apply",
        "--rule",
        "invariant",
        "--r",
        "3",
        "--word-text",
        "ab",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "\n");
    assert!(stderr(&o).contains("warning"));

    let o = cawords(&[
        "apply",
        "--rule",
        "exchange",
        "--r",
        "1",
        "--alphabet",
        "ab",
        "--word-text",
        "aab",
    ]);
    assert_eq!(stdout(&o), "bba\n");
}

#[test]
fn apply_rule_files() {
    let dir = tempfile::tempdir().unwrap();
    let total = dir.path().join("rules.txt");
    std::fs::write(&total, "# run-length, l = 1\naa a\nab b\nba b\nbb b\n").unwrap();
    let o = cawords(&[
        "apply",
        "--rule-file",
        total.to_str().unwrap(),
        "--word-text",
        "aabaa",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "abba\n");

    let partial = dir.path().join("partial.txt");
    std::fs::write(&partial, "aa a\nbb b\n").unwrap();
    let o = cawords(&[
        "apply",
        "--rule-file",
        partial.to_str().unwrap(),
        "--word-text",
        "aabaa",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ab, ba"), "{}", stderr(&o));

    let ternary = dir.path().join("ternary.txt");
    std::fs::write(&ternary, "a 0\nb 1\nc 1\n").unwrap();
    let o = cawords(&[
        "apply",
        "--rule-file",
        ternary.to_str().unwrap(),
        "--alphabet",
        "abc",
        "--out-alphabet",
        "01",
        "--word-text",
        "abcab",
    ]);
    assert_eq!(stdout(&o), "01101\n");
}

#[test]
fn analyze_fibonacci_table() {
    let o = cawords(&[
        "analyze",
        "--word",
        "fibonacci",
        "--len",
        "2000",
        "--n-max",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,pf,pal,rho_ab,converged"));
    for (n, line) in (1..).zip(lines) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], n.to_string());
        assert_eq!(fields[1], (n + 1).to_string());
        // modulo-recurrent: window complexity equals factor complexity
        assert_eq!(fields[2], fields[1]);
        assert_eq!(fields[4], "2");
        assert_eq!(fields[5], "true");
    }
}

#[test]
fn analyze_image_matches_formulas() {
    // l = 1, e = fibonacci10 gives n0 = 4
    let o = cawords(&[
        "analyze",
        "--word",
        "asturmian",
        "--l",
        "1",
        "--eps",
        "fibonacci10",
        "--rule",
        "runlength",
        "--len",
        "20000",
        "--n-max",
        "12",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["p"].as_u64().unwrap())
        .collect();
    assert_eq!(p, [2, 3, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14]);
    let rho: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["rho_ab"].as_u64().unwrap())
        .collect();
    assert_eq!(&rho[..4], [2, 2, 2, 3]);
}

#[test]
fn analyze_guard_and_force() {
    let o = cawords(&[
        "analyze",
        "--word",
        "fibonacci",
        "--len",
        "500",
        "--n-max",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = cawords(&[
        "analyze",
        "--word",
        "fibonacci",
        "--len",
        "500",
        "--n-max",
        "10",
        "--force",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_single_and_unknown() {
    let o = cawords(&[
        "verify",
        "--theorem",
        "cc",
        "--l",
        "1",
        "--eps",
        "fibonacci01",
        "--len",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["theorem_id"], "cc");
    assert_eq!(v["pass"], true);

    let o = cawords(&[
        "verify",
        "--theorem",
        "cp",
        "--l",
        "2",
        "--eps",
        "fibonacci10",
        "--len",
        "20000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vacuous"));

    let o = cawords(&["verify", "--theorem", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("stability-richness"));
}

#[test]
fn verify_failure_and_inconclusive_codes() {
    // a periodic word is not Sturmian
    let o = cawords(&[
        "verify",
        "--theorem",
        "sturmian",
        "--word",
        "periodic",
        "--seed",
        "ab",
        "--len",
        "5000",
        "--n-max",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(1));
    // too short to locate n0
    let o = cawords(&[
        "verify",
        "--theorem",
        "cc",
        "--l",
        "1",
        "--eps",
        "fibonacci10",
        "--len",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    // too short for any conclusive horizon
    let o = cawords(&[
        "verify",
        "--theorem",
        "mod",
        "--word",
        "champernowne",
        "--rule",
        "invariant",
        "--len",
        "60",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

fn deterministic_run(path: &Path) -> Vec<u8> {
    let o = cawords(&[
        "verify",
        "--theorem",
        "all",
        "--l",
        "1",
        "--eps",
        "fibonacci10",
        "--len",
        "8000",
        "--n-max",
        "60",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    std::fs::read(path).unwrap()
}

#[test]
fn verify_all_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = deterministic_run(&dir.path().join("a.json"));
    let second = deterministic_run(&dir.path().join("b.json"));
    assert_eq!(first, second);
    let verdicts: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(verdicts.as_array().unwrap().len(), 14);
}
