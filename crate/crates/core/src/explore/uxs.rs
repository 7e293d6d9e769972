//! Certified universal exploration sequences for small graphs.
//!
//! A UXS is a list of offsets. At each step the agent takes port
//! `(entry port + offset) mod degree`, treating the entry port as 0 at the
//! start node. A sequence is certified for a bound `n'` when it visits every
//! node of every connected port-numbered simple graph with at most `n'`
//! nodes, from every start node.
//!
//! The search is an iterative-deepening A* over offset sequences in
//! length-then-lexicographic order, so the certificate is the first such
//! sequence in that order. Offsets range over `0..lcm(1..=n'-1)`: offsets
//! congruent modulo that lcm behave identically on every node of degree
//! below `n'`. Verification is separate from the search: it re-enumerates
//! every labeled graph and replays the sequence through the simulator.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use crate::graph::{NodeId, Port, PortGraph};
use crate::sim::{run_strategy, Move, Observation, RunOptions, Strategy};

use super::ExploreError;

pub const DEFAULT_FEASIBILITY_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UxsCertificate {
    pub bound: usize,
    pub offsets: Vec<usize>,
    pub verified_graph_count: u64,
}

impl UxsCertificate {
    /// The cache line `uxs <n'> <length> <offsets...> <verified_graph_count>`.
    pub fn to_line(&self) -> String {
        let mut fields = vec![
            "uxs".to_string(),
            self.bound.to_string(),
            self.offsets.len().to_string(),
        ];
        fields.extend(self.offsets.iter().map(usize::to_string));
        fields.push(self.verified_graph_count.to_string());
        fields.join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.first() != Some(&"uxs") {
            return Err("missing `uxs` tag".into());
        }
        let num = |i: usize| -> Result<u64, String> {
            fields
                .get(i)
                .ok_or_else(|| format!("missing field {i}"))?
                .parse::<u64>()
                .map_err(|e| format!("field {i}: {e}"))
        };
        let bound = num(1)? as usize;
        let len = num(2)? as usize;
        if fields.len() != len + 4 {
            return Err(format!(
                "expected {} fields for length {len}, found {}",
                len + 4,
                fields.len()
            ));
        }
        let offsets = (0..len)
            .map(|i| num(3 + i).map(|v| v as usize))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            bound,
            offsets,
            verified_graph_count: num(3 + len)?,
        })
    }
}

/// Replays a UXS, then stops.
#[derive(Debug, Clone)]
pub struct UxsReplay {
    offsets: Vec<usize>,
    next: usize,
}

impl UxsReplay {
    pub fn new(offsets: &[usize]) -> Self {
        Self {
            offsets: offsets.to_vec(),
            next: 0,
        }
    }
}

impl Strategy for UxsReplay {
    fn next_move(&mut self, observation: Observation) -> Move {
        let Some(&offset) = self.offsets.get(self.next) else {
            return Move::Stop;
        };
        if observation.degree == 0 {
            return Move::Stop;
        }
        self.next += 1;
        let entry = observation.entry_port.unwrap_or(0);
        Move::Take((entry + offset) % observation.degree)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of behaviorally distinct offsets for graphs with at most `bound` nodes.
pub fn offset_alphabet(bound: usize) -> usize {
    (1..bound.max(2)).fold(1, |acc, d| acc / gcd(acc, d) * d)
}

/// Calls `visit` with every connected port-numbered simple graph on exactly
/// `n` labeled nodes, once per distinct port assignment.
pub fn for_each_port_graph(n: usize, mut visit: impl FnMut(&[Vec<(NodeId, Port)>])) {
    if n == 0 {
        return;
    }
    if n == 1 {
        visit(&[Vec::new()]);
        return;
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for mask in 0u32..(1 << pairs.len()) {
        let mut neighbors: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                neighbors[u].push(v);
                neighbors[v].push(u);
            }
        }
        if !connected(&neighbors) {
            continue;
        }
        let orders: Vec<Vec<Vec<NodeId>>> = neighbors.iter().map(|ns| permutations(ns)).collect();
        let mut choice = vec![0usize; n];
        loop {
            let port_of = |u: NodeId, v: NodeId| -> Port {
                orders[u][choice[u]]
                    .iter()
                    .position(|&w| w == v)
                    .expect("adjacent")
            };
            let adjacency: Vec<Vec<(NodeId, Port)>> = (0..n)
                .map(|u| {
                    orders[u][choice[u]]
                        .iter()
                        .map(|&v| (v, port_of(v, u)))
                        .collect()
                })
                .collect();
            visit(&adjacency);
            // odometer over per-node port orders
            let mut i = 0;
            while i < n {
                choice[i] += 1;
                if choice[i] < orders[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
}

fn connected(neighbors: &[Vec<NodeId>]) -> bool {
    let mut seen = vec![false; neighbors.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &neighbors[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(items: &[NodeId]) -> Vec<Vec<NodeId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A start configuration, relabeled by BFS from the start in port order.
/// Two (graph, start) pairs are indistinguishable to any agent exactly when
/// their relabeled tables coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct RootedGraph {
    adjacency: Vec<Vec<(u8, u8)>>,
}

fn rooted_canonical(adjacency: &[Vec<(NodeId, Port)>], start: NodeId) -> RootedGraph {
    let n = adjacency.len();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![start];
    label[start] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &(v, _) in &adjacency[u] {
            if label[v] == usize::MAX {
                label[v] = order.len();
                order.push(v);
            }
        }
    }
    RootedGraph {
        adjacency: order
            .iter()
            .map(|&u| {
                adjacency[u]
                    .iter()
                    .map(|&(v, q)| (label[v] as u8, q as u8))
                    .collect()
            })
            .collect(),
    }
}

/// Per-configuration search data: the graph and the exact number of steps
/// still needed to finish from every `(node, entry, visited)` state.
struct Config {
    graph: RootedGraph,
    full: u32,
    remaining: Vec<u8>,
}

impl Config {
    fn new(graph: RootedGraph, alphabet: usize) -> Self {
        let n = graph.adjacency.len();
        let full = (1u32 << n) - 1;
        let mut cfg = Self {
            graph,
            full,
            remaining: Vec::new(),
        };
        cfg.remaining = cfg.remaining_table(alphabet);
        cfg
    }

    fn entries(&self) -> usize {
        self.graph.adjacency.iter().map(Vec::len).max().unwrap_or(0).max(1)
    }

    fn index(&self, node: usize, entry: usize, mask: u32) -> usize {
        (node * self.entries() + entry) * (self.full as usize + 1) + mask as usize
    }

    fn step(&self, node: usize, entry: usize, offset: usize) -> (usize, usize) {
        let row = &self.graph.adjacency[node];
        let (v, q) = row[(entry + offset) % row.len()];
        (v as usize, q as usize)
    }

    fn remaining_table(&self, alphabet: usize) -> Vec<u8> {
        let n = self.graph.adjacency.len();
        let size = n * self.entries() * (self.full as usize + 1);
        let mut table = vec![u8::MAX; size];
        if n == 1 {
            table[self.index(0, 0, 1)] = 0;
            return table;
        }
        let states: Vec<(usize, usize, u32)> = (0..n)
            .flat_map(|u| (0..self.graph.adjacency[u].len()).map(move |e| (u, e)))
            .flat_map(|(u, e)| (0..=self.full).map(move |m| (u, e, m)))
            .filter(|&(u, _, m)| m >> u & 1 == 1)
            .collect();
        for &(u, e, m) in &states {
            if m == self.full {
                table[self.index(u, e, m)] = 0;
            }
        }
        loop {
            let mut changed = false;
            for &(u, e, m) in &states {
                let here = self.index(u, e, m);
                if table[here] == 0 {
                    continue;
                }
                let best = (0..alphabet)
                    .map(|o| {
                        let (v, q) = self.step(u, e, o);
                        table[self.index(v, q, m | 1 << v)]
                    })
                    .min()
                    .unwrap_or(u8::MAX);
                if best < u8::MAX && best + 1 < table[here] {
                    table[here] = best + 1;
                    changed = true;
                }
            }
            if !changed {
                return table;
            }
        }
    }
}

// Packed per-configuration state: config id, node, entry port, visited mask.
fn pack(cfg: usize, node: usize, entry: usize, mask: u32) -> u64 {
    (cfg as u64) << 32 | (node as u64) << 24 | (entry as u64) << 16 | u64::from(mask)
}

fn unpack(s: u64) -> (usize, usize, usize, u32) {
    (
        (s >> 32) as usize,
        (s >> 24 & 0xff) as usize,
        (s >> 16 & 0xff) as usize,
        (s & 0xffff) as u32,
    )
}

struct Search {
    configs: Vec<Config>,
    alphabet: usize,
    failed: HashMap<Vec<u64>, usize>,
}

impl Search {
    fn heuristic(&self, state: &[u64]) -> usize {
        state
            .iter()
            .map(|&s| {
                let (c, u, e, m) = unpack(s);
                let cfg = &self.configs[c];
                cfg.remaining[cfg.index(u, e, m)] as usize
            })
            .max()
            .unwrap_or(0)
    }

    fn advance(&self, state: &[u64], offset: usize) -> Vec<u64> {
        let mut next: Vec<u64> = state
            .iter()
            .filter_map(|&s| {
                let (c, u, e, m) = unpack(s);
                let cfg = &self.configs[c];
                let (v, q) = cfg.step(u, e, offset);
                let m = m | 1 << v;
                (m != cfg.full).then(|| pack(c, v, q, m))
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    fn dfs(&mut self, state: Vec<u64>, budget: usize, path: &mut Vec<usize>) -> bool {
        if state.is_empty() {
            return true;
        }
        if self.heuristic(&state) > budget {
            return false;
        }
        if self.failed.get(&state).is_some_and(|&b| b >= budget) {
            return false;
        }
        for offset in 0..self.alphabet {
            let next = self.advance(&state, offset);
            path.push(offset);
            if self.dfs(next, budget - 1, path) {
                return true;
            }
            path.pop();
        }
        self.failed.insert(state, budget);
        false
    }
}

/// Shortest, then lexicographically first, offset sequence exploring every
/// graph with at most `bound` nodes. Exponential; callers enforce a cap.
pub fn search_uxs(bound: usize) -> Vec<usize> {
    if bound <= 1 {
        return Vec::new();
    }
    let alphabet = offset_alphabet(bound);
    let mut seen = HashSet::new();
    let mut configs = Vec::new();
    for n in 2..=bound {
        for_each_port_graph(n, |adjacency| {
            for start in 0..n {
                let rooted = rooted_canonical(adjacency, start);
                if seen.insert(rooted.clone()) {
                    configs.push(Config::new(rooted, alphabet));
                }
            }
        });
    }
    let initial: Vec<u64> = (0..configs.len()).map(|c| pack(c, 0, 0, 1)).collect();
    let mut search = Search {
        configs,
        alphabet,
        failed: HashMap::new(),
    };
    let mut budget = search.heuristic(&initial);
    loop {
        let mut path = Vec::with_capacity(budget);
        if search.dfs(initial.clone(), budget, &mut path) {
            return path;
        }
        budget += 1;
    }
}

/// Replays `offsets` on every labeled graph with at most `bound` nodes from
/// every start. Returns the number of graphs checked.
pub fn verify_uxs(bound: usize, offsets: &[usize]) -> Result<u64, ExploreError> {
    let mut count = 0u64;
    let mut failure = None;
    for n in 1..=bound {
        for_each_port_graph(n, |adjacency| {
            if failure.is_some() {
                return;
            }
            count += 1;
            let g = PortGraph::from_adjacency(adjacency.to_vec()).expect("enumerated graph is valid");
            for start in 0..n {
                let out = run_strategy(&g, start, &mut UxsReplay::new(offsets), RunOptions::default())
                    .expect("replay only takes existing ports");
                if !out.completed {
                    failure = Some((g.clone(), start));
                    return;
                }
            }
        });
    }
    match failure {
        Some((graph, start)) => Err(ExploreError::CertificateInvalid {
            bound,
            graph: Box::new(graph),
            start,
        }),
        None => Ok(count),
    }
}

/// Computes (or loads) certificates up to a feasibility cap, optionally
/// caching them on disk as `uxs-<bound>.txt`. Certificates are also kept
/// in memory, shared between clones of the store.
#[derive(Debug, Clone)]
pub struct UxsStore {
    cap: usize,
    cache_dir: Option<PathBuf>,
    reverify_cached: bool,
    memo: Arc<Mutex<HashMap<usize, UxsCertificate>>>,
}

impl Default for UxsStore {
    fn default() -> Self {
        Self::new(DEFAULT_FEASIBILITY_CAP)
    }
}

impl UxsStore {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            cache_dir: None,
            reverify_cached: true,
            memo: Arc::default(),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Skip re-running the verifier on certificates read from the cache.
    pub fn trust_cache(mut self) -> Self {
        self.reverify_cached = false;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn cache_path(&self, bound: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("uxs-{bound}.txt")))
    }

    /// Like [`certified_uxs`], but each bound is certified once per store.
    pub fn certificate(&self, bound: usize) -> Result<UxsCertificate, ExploreError> {
        if let Some(cert) = self.memo.lock().expect("memo lock").get(&bound) {
            return Ok(cert.clone());
        }
        let cert = certified_uxs(bound, self)?;
        self.memo
            .lock()
            .expect("memo lock")
            .insert(bound, cert.clone());
        Ok(cert)
    }
}

fn read_cached(path: &Path, bound: usize) -> Result<Option<UxsCertificate>, ExploreError> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(ExploreError::Io(e.to_string())),
    };
    let cert = UxsCertificate::parse_line(text.trim()).map_err(|message| ExploreError::Cache {
        path: path.display().to_string(),
        message,
    })?;
    if cert.bound != bound {
        return Err(ExploreError::Cache {
            path: path.display().to_string(),
            message: format!("holds bound {}, expected {bound}", cert.bound),
        });
    }
    Ok(Some(cert))
}

fn write_atomically(path: &Path, contents: &str) -> Result<(), ExploreError> {
    let io = |e: std::io::Error| ExploreError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn certified_uxs(bound: usize, store: &UxsStore) -> Result<UxsCertificate, ExploreError> {
    if bound > store.cap {
        return Err(ExploreError::FeasibilityCapExceeded {
            requested: bound,
            cap: store.cap,
        });
    }
    let path = store.cache_path(bound);
    if let Some(path) = &path {
        if let Some(cert) = read_cached(path, bound)? {
            if store.reverify_cached {
                let count = verify_uxs(bound, &cert.offsets)?;
                if count != cert.verified_graph_count {
                    return Err(ExploreError::Cache {
                        path: path.display().to_string(),
                        message: format!(
                            "records {} verified graphs, enumeration has {count}",
                            cert.verified_graph_count
                        ),
                    });
                }
            }
            return Ok(cert);
        }
    }
    let offsets = search_uxs(bound);
    let verified_graph_count = verify_uxs(bound, &offsets)?;
    let cert = UxsCertificate {
        bound,
        offsets,
        verified_graph_count,
    };
    if let Some(path) = &path {
        write_atomically(path, &(cert.to_line() + "\n"))?;
    }
    Ok(cert)
}
