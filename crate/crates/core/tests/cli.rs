use std::path::Path;
use std::process::{Command, Output};

fn portexplore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_portexplore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_advise_explore_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let advice = dir.path().join("a.txt");
    let report = dir.path().join("r.csv");

    let out = portexplore(&["gen", "--family", "random", "--n", "20", "--seed", "4", "--out", path(&graph)]);
    assert!(out.status.success());

    let out = portexplore(&[
        "advise", "--graph", path(&graph), "--algo", "tree", "--oracle", "map", "--out", path(&advice),
    ]);
    assert!(out.status.success());

    let out = portexplore(&[
        "explore", "--graph", path(&graph), "--advice", path(&advice), "--algo", "tree",
        "--oracle", "map", "--start", "all", "--out", path(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&report).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,start,advice_bits,steps_used,completed,bound_checked,bound_value")
    );
    assert_eq!(lines.filter(|l| l.contains(",true,true,")).count(), 20);
}

#[test]
fn hamiltonian_with_cycle_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let cycle = dir.path().join("c.txt");
    let advice = dir.path().join("a.txt");
    let out = portexplore(&[
        "gen", "--family", "gxprime", "--n", "12", "--seed", "1", "--out", path(&graph),
        "--cycle-out", path(&cycle),
    ]);
    assert!(out.status.success());
    let out = portexplore(&[
        "advise", "--graph", path(&graph), "--algo", "ham", "--cycle", path(&cycle), "--start", "5",
        "--out", path(&advice),
    ]);
    assert!(out.status.success());
    let out = portexplore(&[
        "explore", "--graph", path(&graph), "--advice", path(&advice), "--algo", "ham", "--start", "5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("file,12,5,76,11,true,true,11"));
}

#[test]
fn experiment_on_main_cycle() {
    let out = portexplore(&[
        "experiment", "--family", "ghat", "--m", "4", "--algo", "tree", "--start", "cycle",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn roles_sidecar_selects_cycle_starts() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let roles = dir.path().join("roles.txt");
    let advice = dir.path().join("a.txt");
    assert!(portexplore(&[
        "gen", "--family", "ghatz", "--m", "4", "--p", "3", "--out", path(&graph), "--roles", path(&roles),
    ])
    .status
    .success());
    assert!(portexplore(&[
        "advise", "--graph", path(&graph), "--algo", "tree", "--oracle", "map", "--out", path(&advice),
    ])
    .status
    .success());
    let out = portexplore(&[
        "explore", "--graph", path(&graph), "--advice", path(&advice), "--algo", "tree",
        "--oracle", "map", "--start", "cycle", "--roles", path(&roles),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn poly_needs_clamp_beyond_cap() {
    let strict = portexplore(&["experiment", "--family", "ring", "--n", "4", "--algo", "poly"]);
    assert_eq!(strict.status.code(), Some(2));
    let clamped = portexplore(&[
        "experiment", "--family", "ring", "--n", "4", "--algo", "poly", "--cap", "4", "--clamp",
    ]);
    assert!(clamped.status.success());
}

#[test]
fn wrong_advice_is_an_assertion_failure() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let other = dir.path().join("h.txt");
    let advice = dir.path().join("a.txt");
    portexplore(&["gen", "--family", "ring", "--n", "9", "--out", path(&graph)]);
    portexplore(&["gen", "--family", "ring", "--n", "5", "--out", path(&other)]);
    let cycle = dir.path().join("c.txt");
    std::fs::write(&cycle, "0 1 2 3 4\n").unwrap();
    let out = portexplore(&[
        "advise", "--graph", path(&other), "--algo", "ham", "--cycle", path(&cycle), "--out", path(&advice),
    ]);
    assert!(out.status.success());
    let out = portexplore(&[
        "explore", "--graph", path(&graph), "--advice", path(&advice), "--algo", "ham",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn adversary_and_collide() {
    let out = portexplore(&["adversary", "--m", "4", "--sequence", "0,2,2,0"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("witness found\nstart 3\n"));

    let out = portexplore(&["collide", "--bits", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pair 3 4"));
    assert!(text.contains("larger steps 31 visited 32 completed false"));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(portexplore(&["gen", "--family", "ring"]).status.code(), Some(2));
    assert_eq!(portexplore(&["gen", "--family", "gx", "--n", "6"]).status.code(), Some(2));
    assert_eq!(
        portexplore(&["explore", "--graph", "/nonexistent", "--advice", "/x", "--algo", "tree"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(portexplore(&["bogus"]).status.code(), Some(2));
}
