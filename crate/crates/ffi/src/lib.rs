//! C interface to `portexplore`.
//!
//! Graphs and advice strings are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`PxStatus`]; on failure, [`px_last_error_message`] describes the error
//! for the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use portexplore::advice::{
    encode_hamiltonian_advice, encode_size_advice, encode_spanning_tree, AdviceError, BitString,
    OracleKind, SizeAdviceParams,
};
use portexplore::explore::{dfs_spanning_tree, CapPolicy, ExploreError, UxsStore};
use portexplore::graph::{
    deserialize, gen_complete_bipartite, gen_oriented_ring, gen_random_connected, serialize,
    GraphError, PortGraph,
};
use portexplore::harness::{make_strategy, Algo, HarnessError};
use portexplore::sim::{run_strategy, RunOptions, SimError};

pub const PX_ALGO_TREE: u32 = 0;
pub const PX_ALGO_HAMILTONIAN: u32 = 1;
pub const PX_ALGO_POLY: u32 = 2;

pub const PX_ORACLE_INSTANCE: u32 = 0;
pub const PX_ORACLE_MAP: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Graph = 3,
    Advice = 4,
    CapExceeded = 5,
    Explore = 6,
    Panic = 7,
}

/// Result of one exploration run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PxOutcome {
    pub steps_used: usize,
    pub visited_count: usize,
    pub completed: bool,
}

pub struct PxGraph {
    graph: PortGraph,
}

pub struct PxAdvice {
    bits: BitString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PxStatus, String);

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure(PxStatus::Graph, e.to_string())
    }
}

impl From<AdviceError> for Failure {
    fn from(e: AdviceError) -> Self {
        Failure(PxStatus::Advice, e.to_string())
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        Failure(PxStatus::Explore, e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let status = match &e {
            HarnessError::Graph(_) => PxStatus::Graph,
            HarnessError::Advice(_) | HarnessError::Explore(ExploreError::Advice(_)) => {
                PxStatus::Advice
            }
            HarnessError::Explore(ExploreError::FeasibilityCapExceeded { .. }) => {
                PxStatus::CapExceeded
            }
            HarnessError::Config(_) => PxStatus::InvalidArgument,
            _ => PxStatus::Explore,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(PxStatus::InvalidArgument, msg.into())
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            PxStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PxStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(PxStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PxStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Message for the last failed call on this thread, or null after a
/// successful one. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn px_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a graph in the text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_parse(text: *const c_char, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| {
        let text = deref(text, "text")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| invalid(format!("text is not UTF-8: {e}")))?;
        store(out, PxGraph { graph: deserialize(text)? })
    })
}

/// Oriented ring on `n >= 3` nodes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_ring(n: usize, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| store(out, PxGraph { graph: gen_oriented_ring(n)? }))
}

/// Complete bipartite graph `K_{k,k}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_complete_bipartite(k: usize, out: *mut *mut PxGraph) -> PxStatus {
    guard(|| store(out, PxGraph { graph: gen_complete_bipartite(k)? }))
}

/// Seeded random connected graph.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_random(
    n: usize,
    density: f64,
    seed: u64,
    out: *mut *mut PxGraph,
) -> PxStatus {
    guard(|| store(out, PxGraph { graph: gen_random_connected(n, density, seed)? }))
}

/// # Safety
/// `graph` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn px_graph_node_count(graph: *const PxGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.node_count())
}

/// # Safety
/// `graph` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn px_graph_edge_count(graph: *const PxGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Serializes `graph` as nul-terminated text. Free the result with
/// [`px_string_free`].
///
/// # Safety
/// `graph` must be a handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_graph_to_text(graph: *const PxGraph, out: *mut *mut c_char) -> PxStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        if out.is_null() {
            return Err(Failure(PxStatus::NullPointer, "output pointer is null".into()));
        }
        *out = CString::new(serialize(&g.graph)).expect("ascii").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn px_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `graph` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_graph_free(graph: *mut PxGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

fn oracle_kind(oracle: u32) -> Result<OracleKind, Failure> {
    match oracle {
        PX_ORACLE_INSTANCE => Ok(OracleKind::Instance),
        PX_ORACLE_MAP => Ok(OracleKind::Map),
        other => Err(invalid(format!("unknown oracle {other}"))),
    }
}

fn algo(algo: u32) -> Result<Algo, Failure> {
    match algo {
        PX_ALGO_TREE => Ok(Algo::Tree),
        PX_ALGO_HAMILTONIAN => Ok(Algo::Ham),
        PX_ALGO_POLY => Ok(Algo::Poly),
        other => Err(invalid(format!("unknown algorithm {other}"))),
    }
}

/// Spanning-tree advice. Instance advice is rooted at `start`; map advice
/// ignores `start` and is rooted at node 0.
///
/// # Safety
/// `graph` must be a handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_advice_tree(
    graph: *const PxGraph,
    oracle: u32,
    start: usize,
    out: *mut *mut PxAdvice,
) -> PxStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.graph;
        let kind = oracle_kind(oracle)?;
        let root = if kind == OracleKind::Map { 0 } else { start };
        if root >= g.node_count() {
            return Err(invalid(format!("start {root} is not a node")));
        }
        let tree = dfs_spanning_tree(g, root);
        let bits = encode_spanning_tree(g, &tree, root, kind)?.to_bits();
        store(out, PxAdvice { bits })
    })
}

/// Hamiltonian-cycle advice for the agent at `start`. `cycle` lists all
/// `cycle_len` nodes in cycle order.
///
/// # Safety
/// `graph` must be a handle from this library; `cycle` must point to
/// `cycle_len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_advice_hamiltonian(
    graph: *const PxGraph,
    cycle: *const usize,
    cycle_len: usize,
    start: usize,
    out: *mut *mut PxAdvice,
) -> PxStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.graph;
        let cycle = std::slice::from_raw_parts(deref(cycle, "cycle")?, cycle_len);
        let bits = encode_hamiltonian_advice(g, cycle, start)?.to_bits();
        store(out, PxAdvice { bits })
    })
}

/// Size advice for an `n`-node graph with precision parameter `c`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn px_advice_size(n: u64, c: u32, out: *mut *mut PxAdvice) -> PxStatus {
    guard(|| {
        let bits = if n < 2 {
            BitString::new()
        } else {
            encode_size_advice(n, SizeAdviceParams { c })?
        };
        store(out, PxAdvice { bits })
    })
}

/// Length in bits.
///
/// # Safety
/// `advice` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn px_advice_len(advice: *const PxAdvice) -> usize {
    advice.as_ref().map_or(0, |a| a.bits.len())
}

/// Bit `index` (0 or 1), or -1 if out of range.
///
/// # Safety
/// `advice` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn px_advice_bit(advice: *const PxAdvice, index: usize) -> i32 {
    advice
        .as_ref()
        .and_then(|a| a.bits.bits().get(index))
        .map_or(-1, |&b| i32::from(b))
}

/// # Safety
/// `advice` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn px_advice_free(advice: *mut PxAdvice) {
    if !advice.is_null() {
        drop(Box::from_raw(advice));
    }
}

/// Runs an explorer with the given advice from `start`. `c` is the size
/// advice parameter and `uxs_cap` the largest certified UXS bound (poly
/// only); with `clamp` set, larger decoded bounds use the cap's sequence.
/// A budget of 0 means unbounded.
///
/// # Safety
/// `graph` and `advice` must be handles from this library; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn px_explore(
    graph: *const PxGraph,
    advice: *const PxAdvice,
    algorithm: u32,
    oracle: u32,
    start: usize,
    c: u32,
    uxs_cap: usize,
    clamp: bool,
    budget: usize,
    out: *mut PxOutcome,
) -> PxStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.graph;
        let bits = &deref(advice, "advice")?.bits;
        if out.is_null() {
            return Err(Failure(PxStatus::NullPointer, "output pointer is null".into()));
        }
        let policy = if clamp {
            CapPolicy::ClampToCap
        } else {
            CapPolicy::Strict
        };
        let mut strategy = make_strategy(
            algo(algorithm)?,
            oracle_kind(oracle)?,
            bits,
            SizeAdviceParams { c },
            &UxsStore::new(uxs_cap),
            policy,
        )?;
        let options = RunOptions {
            budget: (budget > 0).then_some(budget),
            keep_trace: false,
        };
        let outcome = run_strategy(g, start, strategy.as_mut(), options)?;
        *out = PxOutcome {
            steps_used: outcome.steps_used,
            visited_count: outcome.visited_count,
            completed: outcome.completed,
        };
        Ok(())
    })
}
