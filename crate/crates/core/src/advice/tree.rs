//! Port-numbered spanning tree advice.
//!
//! The oracle runs a DFS of the tree from its root, children in increasing
//! port order. The shape records one bit per tour step (`0` down, `1` up);
//! every step also records its outgoing and incoming port.
//!
//! Wire layout, all fields big-endian:
//!
//! | field | bits |
//! |-------|------|
//! | node count `t` | 32 |
//! | shape | `2(t-1)` |
//! | per step: outgoing port, incoming port | `2 * ceil(log2 t)` each |

use std::collections::HashSet;

use super::{port_width, AdviceError, BitString, OracleKind, HEADER_BITS};
use crate::graph::{NodeId, Port, PortGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TourStep {
    pub out_port: Port,
    pub entry_port: Port,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeAdvice {
    pub node_count: usize,
    pub shape: BitString,
    pub steps: Vec<TourStep>,
    /// Instance advice is rooted at the agent's start; map advice is not.
    /// Travels out of band: the wire form does not carry it.
    pub oracle: OracleKind,
}

/// Exact wire length of tree advice for a `t`-node tree.
pub fn tree_wire_len(t: usize) -> usize {
    HEADER_BITS + 2 * (t - 1) + 4 * (t - 1) * port_width(t)
}

impl SpanningTreeAdvice {
    pub fn to_bits(&self) -> BitString {
        let width = port_width(self.node_count);
        let mut bits = BitString::new();
        bits.push_uint(self.node_count as u64, HEADER_BITS);
        for &b in self.shape.bits() {
            bits.push(b);
        }
        for step in &self.steps {
            bits.push_uint(step.out_port as u64, width);
            bits.push_uint(step.entry_port as u64, width);
        }
        bits
    }
}

fn check_spanning_tree(g: &PortGraph, tree: &[(NodeId, NodeId)]) -> Result<(), AdviceError> {
    let n = g.node_count();
    if tree.len() + 1 != n {
        return Err(AdviceError::NotSpanningTree(format!(
            "{} edges for {n} nodes",
            tree.len()
        )));
    }
    let mut parent: Vec<NodeId> = (0..n).collect();
    fn find(parent: &mut [NodeId], mut x: NodeId) -> NodeId {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in tree {
        if u >= n || v >= n || !g.is_adjacent(u, v) {
            return Err(AdviceError::NotSpanningTree(format!(
                "({u}, {v}) is not an edge of the graph"
            )));
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(AdviceError::NotSpanningTree(format!(
                "({u}, {v}) closes a cycle"
            )));
        }
        parent[ru] = rv;
    }
    Ok(())
}

/// DFS tour of `tree` from `root`: shape bits, per-step ports, and node ids
/// in discovery order.
pub(crate) fn tree_tour(
    g: &PortGraph,
    tree: &[(NodeId, NodeId)],
    root: NodeId,
) -> (BitString, Vec<TourStep>, Vec<NodeId>) {
    let n = g.node_count();
    let mut tree_ports: Vec<Vec<Port>> = vec![Vec::new(); n];
    for &(u, v) in tree {
        tree_ports[u].push(g.port_to(u, v).expect("tree edge"));
        tree_ports[v].push(g.port_to(v, u).expect("tree edge"));
    }
    for ports in &mut tree_ports {
        ports.sort_unstable();
    }
    let mut shape = BitString::new();
    let mut steps = Vec::with_capacity(2 * n.saturating_sub(1));
    let mut discovery = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    // (node, port used to come back to the parent, next index into tree_ports)
    let mut stack: Vec<(NodeId, Option<Port>, usize)> = vec![(root, None, 0)];
    while let Some(top) = stack.last_mut() {
        let (u, up_port, next) = *top;
        if let Some(&p) = tree_ports[u].get(next) {
            top.2 += 1;
            let (v, q) = g.ports(u)[p];
            if seen[v] {
                continue;
            }
            seen[v] = true;
            discovery.push(v);
            shape.push(false);
            steps.push(TourStep {
                out_port: p,
                entry_port: q,
            });
            stack.push((v, Some(q), 0));
        } else {
            stack.pop();
            if let Some(q) = up_port {
                let (_, p) = g.ports(u)[q];
                shape.push(true);
                steps.push(TourStep {
                    out_port: q,
                    entry_port: p,
                });
            }
        }
    }
    (shape, steps, discovery)
}

/// Encodes a spanning tree of `g` rooted at `root`.
pub fn encode_spanning_tree(
    g: &PortGraph,
    tree: &[(NodeId, NodeId)],
    root: NodeId,
    oracle: OracleKind,
) -> Result<SpanningTreeAdvice, AdviceError> {
    check_spanning_tree(g, tree)?;
    if root >= g.node_count() {
        return Err(AdviceError::NotSpanningTree(format!(
            "root {root} is not a node"
        )));
    }
    let (shape, steps, _) = tree_tour(g, tree, root);
    Ok(SpanningTreeAdvice {
        node_count: g.node_count(),
        shape,
        steps,
        oracle,
    })
}

/// Inverse of [`SpanningTreeAdvice::to_bits`]. `oracle` is not on the wire.
pub fn decode_spanning_tree(
    bits: &BitString,
    oracle: OracleKind,
) -> Result<SpanningTreeAdvice, AdviceError> {
    let mut reader = bits.reader();
    let t = reader
        .read_uint(HEADER_BITS)
        .ok_or(AdviceError::TruncatedHeader)? as usize;
    if t == 0 {
        return Err(AdviceError::MalformedShape(0));
    }
    let tour_len = 2 * (t - 1);
    let width = port_width(t);
    let needed = HEADER_BITS + tour_len + 2 * tour_len * width;
    if bits.len() < HEADER_BITS + tour_len {
        return Err(AdviceError::MalformedShape(bits.len()));
    }
    let mut shape = BitString::new();
    let mut depth: usize = 0;
    for i in 0..tour_len {
        let up = reader.read_bit().expect("length checked");
        if up {
            depth = depth
                .checked_sub(1)
                .ok_or(AdviceError::MalformedShape(HEADER_BITS + i))?;
        } else {
            depth += 1;
        }
        shape.push(up);
    }
    if depth != 0 {
        return Err(AdviceError::MalformedShape(HEADER_BITS + tour_len));
    }
    if bits.len() < needed {
        return Err(AdviceError::TruncatedPorts {
            needed,
            available: bits.len(),
        });
    }
    let mut steps = Vec::with_capacity(tour_len);
    for _ in 0..tour_len {
        let out_port = reader.read_uint(width).expect("length checked") as Port;
        let entry_port = reader.read_uint(width).expect("length checked") as Port;
        steps.push(TourStep {
            out_port,
            entry_port,
        });
    }
    if reader.remaining() > 0 {
        return Err(AdviceError::TrailingBits(reader.remaining()));
    }
    check_tour_ports(&shape, &steps)?;
    Ok(SpanningTreeAdvice {
        node_count: t,
        shape,
        steps,
        oracle,
    })
}

/// Each up step must retrace its down step, and no node may use a port twice.
fn check_tour_ports(shape: &BitString, steps: &[TourStep]) -> Result<(), AdviceError> {
    let mut used: Vec<HashSet<Port>> = vec![HashSet::new()];
    let mut stack: Vec<(usize, TourStep)> = vec![];
    let mut current = 0usize;
    for (i, (&up, step)) in shape.bits().iter().zip(steps).enumerate() {
        if up {
            let (parent, down) = stack.pop().ok_or(AdviceError::MalformedShape(i))?;
            if step.out_port != down.entry_port || step.entry_port != down.out_port {
                return Err(AdviceError::InconsistentPorts(i));
            }
            current = parent;
        } else {
            let child = used.len();
            used.push(HashSet::new());
            if !used[current].insert(step.out_port) || !used[child].insert(step.entry_port) {
                return Err(AdviceError::InconsistentPorts(i));
            }
            stack.push((current, *step));
            current = child;
        }
    }
    Ok(())
}
