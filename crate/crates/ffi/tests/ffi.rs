use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use portexplore_ffi::*;

fn last_error() -> String {
    let p = px_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn tree_advice_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(px_graph_random(30, 0.2, 5, &mut g), PxStatus::Ok);
        assert_eq!(px_graph_node_count(g), 30);
        assert!(px_last_error_message().is_null());

        let mut advice = ptr::null_mut();
        assert_eq!(px_advice_tree(g, PX_ORACLE_INSTANCE, 7, &mut advice), PxStatus::Ok);
        assert_eq!(px_advice_len(advice), 32 + 2 * 29 + 4 * 29 * 5);
        assert_eq!(px_advice_bit(advice, 1_000_000), -1);

        let mut out = PxOutcome::default();
        let status = px_explore(g, advice, PX_ALGO_TREE, PX_ORACLE_INSTANCE, 7, 0, 5, false, 0, &mut out);
        assert_eq!(status, PxStatus::Ok);
        assert_eq!(out, PxOutcome { steps_used: 58, visited_count: 30, completed: true });

        px_advice_free(advice);
        px_graph_free(g);
    }
}

#[test]
fn hamiltonian_on_bipartite() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(px_graph_complete_bipartite(3, &mut g), PxStatus::Ok);
        let cycle: Vec<usize> = (0..6).collect();
        let mut advice = ptr::null_mut();
        assert_eq!(px_advice_hamiltonian(g, cycle.as_ptr(), 6, 2, &mut advice), PxStatus::Ok);
        let mut out = PxOutcome::default();
        let status = px_explore(g, advice, PX_ALGO_HAMILTONIAN, PX_ORACLE_INSTANCE, 2, 0, 5, false, 0, &mut out);
        assert_eq!(status, PxStatus::Ok);
        assert_eq!(out.steps_used, 5);
        assert!(out.completed);
        px_advice_free(advice);
        px_graph_free(g);
    }
}

#[test]
fn poly_cap_is_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(px_graph_ring(4, &mut g), PxStatus::Ok);
        let mut advice = ptr::null_mut();
        assert_eq!(px_advice_size(4, 0, &mut advice), PxStatus::Ok);
        let mut out = PxOutcome::default();
        let strict = px_explore(g, advice, PX_ALGO_POLY, PX_ORACLE_INSTANCE, 0, 0, 4, false, 0, &mut out);
        assert_eq!(strict, PxStatus::CapExceeded);
        assert!(last_error().contains("cap"));
        let clamped = px_explore(g, advice, PX_ALGO_POLY, PX_ORACLE_INSTANCE, 0, 0, 4, true, 0, &mut out);
        assert_eq!(clamped, PxStatus::Ok);
        assert!(out.completed);
        px_advice_free(advice);
        px_graph_free(g);
    }
}

#[test]
fn text_round_trip_and_errors() {
    unsafe {
        let text = CString::new("pg 1\nn 2\ne 0 0 1 0\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(px_graph_parse(text.as_ptr(), &mut g), PxStatus::Ok);
        assert_eq!(px_graph_edge_count(g), 1);
        let mut s = ptr::null_mut();
        assert_eq!(px_graph_to_text(g, &mut s), PxStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "pg 1\nn 2\ne 0 0 1 0\n");
        px_string_free(s);
        px_graph_free(g);

        let bad = CString::new("pg 1\nn 2\ne 0 0 1 1\n").unwrap();
        assert_eq!(px_graph_parse(bad.as_ptr(), &mut g), PxStatus::Graph);
        assert!(!last_error().is_empty());
        assert_eq!(px_graph_parse(ptr::null(), &mut g), PxStatus::NullPointer);
        assert_eq!(px_graph_ring(2, &mut g), PxStatus::Graph);
        assert_eq!(px_graph_ring(5, ptr::null_mut()), PxStatus::NullPointer);

        let mut out = PxOutcome::default();
        assert_eq!(
            px_explore(ptr::null(), ptr::null(), 9, 0, 0, 0, 5, false, 0, &mut out),
            PxStatus::NullPointer
        );
        px_graph_free(ptr::null_mut());
        px_advice_free(ptr::null_mut());
    }
}

#[test]
fn unknown_algorithm_is_invalid() {
    unsafe {
        let mut g = ptr::null_mut();
        px_graph_ring(5, &mut g);
        let mut advice = ptr::null_mut();
        px_advice_size(5, 0, &mut advice);
        let mut out = PxOutcome::default();
        assert_eq!(
            px_explore(g, advice, 42, PX_ORACLE_MAP, 0, 0, 5, false, 0, &mut out),
            PxStatus::InvalidArgument
        );
        assert!(last_error().contains("42"));
        px_advice_free(advice);
        px_graph_free(g);
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/portexplore.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct PxGraph PxGraph;",
        "typedef struct PxAdvice PxAdvice;",
        "PX_STATUS_CAP_EXCEEDED = 5",
        "const char *px_last_error_message(void);",
        "enum PxStatus px_explore(",
        "void px_graph_free(struct PxGraph *graph);",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"portexplore.h\"\nint main(void) { PxOutcome o = {0}; return (int)o.completed; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
