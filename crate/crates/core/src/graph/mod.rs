//! Port-numbered anonymous graphs.
//!
//! Node ids exist only for construction, serialization and test oracles.
//! Agents never see them: the simulator hands strategies degrees and entry
//! ports, nothing else.

mod generate;
mod io;

pub use generate::{
    bipartite_hamiltonian_order, gen_complete_bipartite, gen_oriented_ring, gen_random_connected,
};
pub use io::{deserialize, serialize};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

pub type NodeId = usize;
pub type Port = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("edge {edge} references node {node}, but the graph has {node_count} nodes")]
    NodeOutOfRange {
        edge: usize,
        node: NodeId,
        node_count: usize,
    },
    #[error("node {node}: port {port} is assigned twice")]
    PortDuplicate { node: NodeId, port: Port },
    #[error("node {node}: ports are not contiguous, port {missing} is missing (degree {degree})")]
    PortGap {
        node: NodeId,
        missing: Port,
        degree: usize,
    },
    #[error("edge ({u}, {pu}) -> ({v}, {pv}) has no matching reverse entry")]
    AsymmetricEdge {
        u: NodeId,
        pu: Port,
        v: NodeId,
        pv: Port,
    },
    #[error("self-loop at node {node}")]
    SelfLoop { node: NodeId },
    #[error("parallel edges between nodes {u} and {v}")]
    ParallelEdge { u: NodeId, v: NodeId },
    #[error("graph is disconnected: node {unreachable} is unreachable from node 0")]
    Disconnected { unreachable: NodeId },
    #[error("node {node} has degree {degree}, port {port} is out of range")]
    PortOutOfRange {
        node: NodeId,
        port: Port,
        degree: usize,
    },
    #[error("node {node} does not exist (graph has {node_count} nodes)")]
    NoSuchNode { node: NodeId, node_count: usize },
    #[error("{0}")]
    Generator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One undirected edge with the port number at each endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRecord {
    pub u: NodeId,
    pub pu: Port,
    pub v: NodeId,
    pub pv: Port,
}

impl EdgeRecord {
    pub fn new(u: NodeId, pu: Port, v: NodeId, pv: Port) -> Self {
        Self { u, pu, v, pv }
    }

    /// Orients the record so that `u < v`.
    pub fn canonical(self) -> Self {
        if self.u <= self.v {
            self
        } else {
            Self::new(self.v, self.pv, self.u, self.pu)
        }
    }
}

/// Immutable simple connected graph with a port numbering at every node.
///
/// `adjacency[u][p] = (v, q)` means port `p` at `u` leads to `v`, entering
/// it through port `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PortGraph {
    adjacency: Vec<Vec<(NodeId, Port)>>,
}

impl fmt::Debug for PortGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PortGraph")
            .field("node_count", &self.node_count())
            .field("edge_count", &self.edge_count())
            .finish()
    }
}

/// Builds a [`PortGraph`] from an edge list, checking every invariant.
pub fn validate_graph(edges: &[EdgeRecord], node_count: usize) -> Result<PortGraph, GraphError> {
    if node_count == 0 {
        return Err(GraphError::Empty);
    }
    let mut slots: Vec<Vec<Option<(NodeId, Port)>>> = vec![Vec::new(); node_count];
    for (index, e) in edges.iter().enumerate() {
        for node in [e.u, e.v] {
            if node >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    edge: index,
                    node,
                    node_count,
                });
            }
        }
        if e.u == e.v {
            return Err(GraphError::SelfLoop { node: e.u });
        }
        for (node, port, other, other_port) in [(e.u, e.pu, e.v, e.pv), (e.v, e.pv, e.u, e.pu)] {
            let row = &mut slots[node];
            if row.len() <= port {
                row.resize(port + 1, None);
            }
            if row[port].is_some() {
                return Err(GraphError::PortDuplicate { node, port });
            }
            row[port] = Some((other, other_port));
        }
    }
    let mut adjacency = Vec::with_capacity(node_count);
    for (node, row) in slots.into_iter().enumerate() {
        let degree = row.len();
        let mut full = Vec::with_capacity(degree);
        for (port, slot) in row.into_iter().enumerate() {
            match slot {
                Some(entry) => full.push(entry),
                None => {
                    return Err(GraphError::PortGap {
                        node,
                        missing: port,
                        degree,
                    })
                }
            }
        }
        adjacency.push(full);
    }
    PortGraph::from_adjacency(adjacency)
}

impl PortGraph {
    /// Builds a graph from per-node port tables, checking every invariant.
    pub fn from_adjacency(adjacency: Vec<Vec<(NodeId, Port)>>) -> Result<Self, GraphError> {
        let node_count = adjacency.len();
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        for (u, row) in adjacency.iter().enumerate() {
            let mut seen = HashSet::with_capacity(row.len());
            for (pu, &(v, pv)) in row.iter().enumerate() {
                if v >= node_count {
                    return Err(GraphError::NoSuchNode { node: v, node_count });
                }
                if v == u {
                    return Err(GraphError::SelfLoop { node: u });
                }
                if adjacency[v].get(pv) != Some(&(u, pu)) {
                    return Err(GraphError::AsymmetricEdge { u, pu, v, pv });
                }
                if !seen.insert(v) {
                    return Err(GraphError::ParallelEdge {
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
            }
        }
        let graph = Self { adjacency };
        if let Some(unreachable) = graph.first_unreachable() {
            return Err(GraphError::Disconnected { unreachable });
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<NodeId> {
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Degree of `u`. Panics if `u` is not a node.
    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The other endpoint of port `p` at `u`, and the port it is entered by.
    pub fn neighbor(&self, u: NodeId, p: Port) -> Result<(NodeId, Port), GraphError> {
        let row = self.adjacency.get(u).ok_or(GraphError::NoSuchNode {
            node: u,
            node_count: self.node_count(),
        })?;
        row.get(p).copied().ok_or(GraphError::PortOutOfRange {
            node: u,
            port: p,
            degree: row.len(),
        })
    }

    /// Port table of `u`, indexed by port number.
    pub fn ports(&self, u: NodeId) -> &[(NodeId, Port)] {
        &self.adjacency[u]
    }

    /// Port at `u` leading to `v`, if they are adjacent.
    pub fn port_to(&self, u: NodeId, v: NodeId) -> Option<Port> {
        self.adjacency[u].iter().position(|&(w, _)| w == v)
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.port_to(u, v).is_some()
    }

    /// Every edge once, oriented `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<EdgeRecord> {
        let mut edges: Vec<EdgeRecord> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| {
                row.iter()
                    .enumerate()
                    .filter(move |&(_, &(v, _))| u < v)
                    .map(move |(pu, &(v, pv))| EdgeRecord::new(u, pu, v, pv))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Renames node `u` to `perm[u]`, keeping all port numbers.
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Self, GraphError> {
        let n = self.node_count();
        let mut adjacency = vec![Vec::new(); n];
        for (u, row) in self.adjacency.iter().enumerate() {
            adjacency[perm[u]] = row.iter().map(|&(v, q)| (perm[v], q)).collect();
        }
        Self::from_adjacency(adjacency)
    }
}
