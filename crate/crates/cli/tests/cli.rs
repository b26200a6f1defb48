use std::path::Path;
use std::process::{Command, Output};

fn ramsey(args: &[&str]) -> Output {
    ramsey_env(args, None)
}

fn ramsey_env(args: &[&str], kb_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ramsey"));
    cmd.args(args).env_remove("RAMSEY_KB");
    if let Some(path) = kb_env {
        cmd.env("RAMSEY_KB", path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn query_examples() {
    let o = ramsey(&["query", "r(K4-e,K7-K1,3)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(first_line(&o), "r(K4-e,K7-K1,3) in [21,22]");
    let o = ramsey(&["query", "r(K2,K2)"]);
    assert_eq!(first_line(&o), "r(K2,K2) = 2");
    let o = ramsey(&["query", "r(K3,K6-P3)"]);
    assert_eq!(first_line(&o), "r(K3,K6-P3) = 14");
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("why: "));
}

#[test]
fn query_keeps_argument_order() {
    let o = ramsey(&["query", "r(K5-K1,3,K5-e)"]);
    assert_eq!(first_line(&o), "r(K5-K1,3,K5-e) = 19");
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(code(&ramsey(&["query", "r(K3,"])), 2);
    assert_eq!(code(&ramsey(&["query", "r(K3,K4-K1,4)"])), 2);
    assert_eq!(code(&ramsey(&["query", "r(K3,K3)", "--disable", "NOPE"])), 2);
    assert_eq!(code(&ramsey(&["frobnicate"])), 2);
}

#[test]
fn no_information_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.kb");
    std::fs::write(&empty, "").unwrap();
    let kb = empty.to_str().unwrap();
    let o = ramsey(&["--kb", kb, "query", "r(C5,C6)", "--disable", "BASE"]);
    assert_eq!(code(&o), 3);
    assert_eq!(first_line(&o), "r(C5,C6) in [6,inf)");
    let o = ramsey(&["--kb", kb, "explain", "r(K3,K3)", "--disable", "BASE"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn contradiction_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.kb");
    std::fs::write(&bad, "K3 K3 = 6 src=Rad\nK3 K3-e = 7 src=injected\n").unwrap();
    let o = ramsey(&["--kb", bad.to_str().unwrap(), "query", "r(K3,K3)"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("contradiction"));
    let o = ramsey(&["kb", "import", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "direct seed lines do not overlap");
    std::fs::write(&bad, "K3 K3 = 6 src=Rad\nK3 K3 <= 5 src=injected\n").unwrap();
    assert_eq!(code(&ramsey(&["kb", "import", bad.to_str().unwrap()])), 4);
}

#[test]
fn seed_path_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let env_kb = dir.path().join("env.kb");
    let flag_kb = dir.path().join("flag.kb");
    std::fs::write(&env_kb, "K3 K4 in [8,9] src=env\n").unwrap();
    std::fs::write(&flag_kb, "K3 K4 in [7,9] src=flag\n").unwrap();
    let q = ["query", "r(K3,K4)", "--disable", "THEOREM1,RECURSION,PARITY,MONOTONE,BASE,BE89,BBH98"];
    assert_eq!(first_line(&ramsey(&q)), "r(K3,K4) = 9");
    assert_eq!(first_line(&ramsey_env(&q, Some(&env_kb))), "r(K3,K4) in [8,9]");
    let mut with_flag = vec!["--kb", flag_kb.to_str().unwrap()];
    with_flag.extend(q);
    assert_eq!(first_line(&ramsey_env(&with_flag, Some(&env_kb))), "r(K3,K4) in [7,9]");
    let missing = dir.path().join("missing.kb");
    assert_eq!(code(&ramsey_env(&["reproduce", "--claim", "k4e.1"], Some(&missing))), 2);
    assert_eq!(code(&ramsey(&["--kb", missing.to_str().unwrap(), "reproduce"])), 2);
}

#[test]
fn reproduce_selected_claims() {
    for id in ["k5p3.k6", "k7k13.k4", "cond.k6k4", "cond.k6k4.absent", "chain"] {
        let o = ramsey(&["reproduce", "--claim", id]);
        assert_eq!(code(&o), 0, "{id}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ") || l.starts_with("summary ")));
    }
    let o = ramsey(&["reproduce", "--claim", "k5p3.k6"]);
    assert!(stdout(&o).starts_with("PASS id=k5p3.k6 pair=r(K6,K5-P3) expect=\"<= 41\" got=[36,41] depth="));
    assert_eq!(code(&ramsey(&["reproduce", "--claim", "no-such-claim"])), 2);
}

#[test]
fn reproduce_overlay_flag() {
    let dir = tempfile::tempdir().unwrap();
    let overlay = dir.path().join("overlay.kb");
    std::fs::write(&overlay, "K4 K6 = 37 src=hypothesis\n").unwrap();
    // the hypothesis makes the negative claim fail
    let o = ramsey(&["reproduce", "--claim", "cond.k6k4.absent", "--overlay", overlay.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL id=cond.k6k4.absent"));
}

#[test]
fn reproduce_is_deterministic_and_reports_failures() {
    let a = ramsey(&["reproduce"]);
    let b = ramsey(&["reproduce"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let failures: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL ")).collect();
    assert_eq!(code(&a), if failures.is_empty() { 0 } else { 1 });
    assert!(text.lines().last().unwrap().starts_with("summary total="));
}

#[test]
fn query_agrees_with_passed_claims() {
    let cases = [
        ("r(K4-e,K5-K1,3)", "= 11"),
        ("r(K5-e,K5-K1,3)", "= 19"),
        ("r(W5,K6-K1,5)", "= 27"),
        ("r(K3-e,K9-K1,4)", "= 15"),
        ("r(K4,K7-K1,3)", "in [36,41]"),
        ("r(K10,K5-P3)", "in [92,159]"),
    ];
    for (expr, tail) in cases {
        let o = ramsey(&["query", expr]);
        assert_eq!(first_line(&o), format!("{expr} {tail}"));
    }
}

#[test]
fn explain_shows_the_theorem_step() {
    let o = ramsey(&["explain", "r(K5-e,K5-K1,3)"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("r(K5-e,K5-K1,3) in [19,19]\n"));
    assert!(text.contains("[hi] THEOREM1{N=19,n=4,s=3} r(K5-K1,3,K5-e) [7,19]"));
    assert!(text.contains("SEED r(K4,K5-e) [19,19] src=Rad"));
    assert!(text.contains("THEOREM1{N=11,n=4,s=3} r(K4-e,K5-K1,3) [6,11]"));
}

#[test]
fn explain_seed_is_a_leaf() {
    let o = ramsey(&["explain", "r(K3,K3)", "--disable", "MONOTONE,RECURSION,PARITY,THEOREM1,BE89,BBH98,BASE"]);
    let text = stdout(&o);
    let nodes: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with('[')).collect();
    assert_eq!(nodes, ["  [lo+hi] SEED r(K3,K3) [6,6] src=Rad"]);
}

#[test]
fn explain_log_is_deterministic() {
    let a = ramsey(&["explain", "--log", "r(W5,K6-K1,4)"]);
    let b = ramsey(&["explain", "--log", "r(W5,K6-K1,4)"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().all(|l| l.starts_with("depth=") && l.contains(" rule=") && l.contains(" pair=")));
    let hi: Vec<&str> = text.lines().filter(|l| l.contains("role=hi")).collect();
    assert_eq!(hi.len(), 1);
}

#[test]
fn verify_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.txt");
    std::fs::write(&c5, "N=5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let o = ramsey(&["verify", c5.to_str().unwrap(), "K3", "K3"]);
    assert_eq!((code(&o), first_line(&o).as_str()), (0, "good N=5"));

    let mut k6 = String::from("N=6\n");
    for u in 0..6 {
        for v in u + 1..6 {
            k6.push_str(&format!("{u} {v}\n"));
        }
    }
    let red = dir.path().join("k6.txt");
    std::fs::write(&red, k6).unwrap();
    let o = ramsey(&["verify", red.to_str().unwrap(), "K3", "K3"]);
    assert_eq!((code(&o), first_line(&o).as_str()), (1, "bad colour=red graph=K3 vertices=0,1,2"));

    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "N=3\n0 3\n").unwrap();
    assert_eq!(code(&ramsey(&["verify", broken.to_str().unwrap(), "K3", "K3"])), 2);
}

#[test]
fn search_harvests_a_checkable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let wdir = dir.path().join("witnesses");
    let o = ramsey(&["search", "K3-e", "K4", "--witness-dir", wdir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("r(K3-e,K4) = 7 complete=true"));
    let witness = wdir.join("K3-e__K4__N6.txt");
    let o = ramsey(&["verify", witness.to_str().unwrap(), "K3-e", "K4"]);
    assert_eq!(first_line(&o), "good N=6");
}

#[test]
fn search_small_values() {
    let o = ramsey(&["search", "K3-e", "K4-e"]);
    assert!(stdout(&o).starts_with("r(K3-e,K4-e) = 5 "));
    let o = ramsey(&["search", "K2", "K5", "--threads", "2"]);
    assert!(stdout(&o).starts_with("r(K2,K5) = 5 "));
    let o = ramsey(&["search", "K3", "K5", "--cap", "8"]);
    assert!(stdout(&o).starts_with("r(K3,K5) in [9,inf) complete=false"));
    let o = ramsey(&["search", "K3", "K4", "--budget", "10"]);
    assert!(stdout(&o).contains("complete=false"));
}

#[test]
fn kb_export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.kb");
    let second = dir.path().join("second.kb");
    assert_eq!(code(&ramsey(&["kb", "export", "--out", first.to_str().unwrap()])), 0);
    let o = ramsey(&["kb", "import", first.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let (a, b) = (std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
    assert_eq!(a, b);

    let derived = dir.path().join("derived.kb");
    let o = ramsey(&["kb", "export", "--propagate", "--out", derived.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = ramsey(&["--kb", derived.to_str().unwrap(), "query", "r(K4-e,K7-K1,3)"]);
    assert_eq!(first_line(&o), "r(K4-e,K7-K1,3) in [21,22]");
}
