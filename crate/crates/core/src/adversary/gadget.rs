use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::graph::{NodeId, Port, PortGraph};

use super::{AdversaryError, CopyTag, CrossingVector};

/// Hamiltonian path `(0, 1), (1, 2), ..., (m-2, m-1)`: the default spanning
/// tree of H, whose node ids already follow a hamiltonian order.
pub fn hamiltonian_path_tree(m: usize) -> Vec<(NodeId, NodeId)> {
    (1..m).map(|v| (v - 1, v)).collect()
}

/// Edges of `h` outside `tree`, as `(min, max)` pairs in lexicographic order.
pub fn canonical_nontree_edges(h: &PortGraph, tree: &[(NodeId, NodeId)]) -> Vec<(NodeId, NodeId)> {
    let tree: BTreeSet<(NodeId, NodeId)> = tree.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    h.edges()
        .into_iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .filter(|e| !tree.contains(e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    Cycle(usize),
    Gadget {
        gadget: usize,
        copy: CopyTag,
        original: NodeId,
    },
}

/// A graph assembled from crossing gadgets, with its node layout: main-cycle
/// nodes first, then `2m` nodes per gadget (copy ′ then copy ″, each in the
/// node order of H).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: PortGraph,
    pub m: usize,
    pub cycle_len: usize,
    pub gadget_count: usize,
}

impl GadgetGraph {
    pub fn gadget_node(&self, gadget: usize, copy: CopyTag, original: NodeId) -> NodeId {
        self.cycle_len + 2 * self.m * gadget + copy.index() * self.m + original
    }

    /// `v'_1` of the given gadget.
    pub fn gateway(&self, gadget: usize) -> NodeId {
        self.gadget_node(gadget, CopyTag::Prime, 0)
    }

    pub fn locate(&self, node: NodeId) -> NodeRole {
        if node < self.cycle_len {
            return NodeRole::Cycle(node);
        }
        let rel = node - self.cycle_len;
        NodeRole::Gadget {
            gadget: rel / (2 * self.m),
            copy: CopyTag::from_index(rel % (2 * self.m) / self.m).expect("two copies"),
            original: rel % self.m,
        }
    }

    pub fn roles(&self) -> GadgetRoles {
        let gateways = if self.cycle_len > 0 {
            (0..self.gadget_count).map(|g| (self.gateway(g), g)).collect()
        } else {
            Vec::new()
        };
        GadgetRoles {
            main_cycle: (0..self.cycle_len).collect(),
            gateways,
            copies: (self.cycle_len..self.graph.node_count())
                .map(|v| match self.locate(v) {
                    NodeRole::Gadget { copy, .. } => (v, copy),
                    NodeRole::Cycle(_) => unreachable!(),
                })
                .collect(),
        }
    }
}

/// The role sidecar: `y <node>`, `gw <node> <gadget>`, `copy <node> <0|1>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetRoles {
    pub main_cycle: Vec<NodeId>,
    pub gateways: Vec<(NodeId, usize)>,
    pub copies: Vec<(NodeId, CopyTag)>,
}

impl GadgetRoles {
    pub fn to_sidecar(&self) -> String {
        let mut out = String::new();
        for v in &self.main_cycle {
            writeln!(out, "y {v}").unwrap();
        }
        for (v, g) in &self.gateways {
            writeln!(out, "gw {v} {g}").unwrap();
        }
        for (v, c) in &self.copies {
            writeln!(out, "copy {v} {}", c.index()).unwrap();
        }
        out
    }

    pub fn parse_sidecar(text: &str) -> Result<Self, AdversaryError> {
        let mut roles = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| AdversaryError::Sidecar {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |k: usize| -> Result<usize, AdversaryError> {
                fields
                    .get(k)
                    .ok_or_else(|| err(format!("missing field {k}")))?
                    .parse()
                    .map_err(|e| err(format!("field {k}: {e}")))
            };
            let arity = match fields[0] {
                "y" => {
                    roles.main_cycle.push(num(1)?);
                    2
                }
                "gw" => {
                    roles.gateways.push((num(1)?, num(2)?));
                    3
                }
                "copy" => {
                    let tag = CopyTag::from_index(num(2)?)
                        .ok_or_else(|| err("copy tag must be 0 or 1".into()))?;
                    roles.copies.push((num(1)?, tag));
                    3
                }
                other => return Err(err(format!("unknown role `{other}`"))),
            };
            if fields.len() != arity {
                return Err(err(format!("expected {arity} fields")));
            }
        }
        Ok(roles)
    }
}

fn check_vector(x: &CrossingVector, s: usize) -> Result<(), AdversaryError> {
    if x.len() != s {
        return Err(AdversaryError::VectorLength {
            expected: s,
            got: x.len(),
        });
    }
    if x.is_zero() {
        return Err(AdversaryError::ZeroVector);
    }
    Ok(())
}

/// Adjacency rows of `H_x`, with node `copy * m + v`, offset by `base`.
fn hx_rows(
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
    x: &CrossingVector,
    base: NodeId,
) -> Result<Vec<Vec<(NodeId, Port)>>, AdversaryError> {
    let s_edges = canonical_nontree_edges(h, tree);
    check_vector(x, s_edges.len())?;
    let crossed: HashMap<(NodeId, NodeId), bool> =
        s_edges.iter().copied().zip(x.0.iter().copied()).collect();
    let m = h.node_count();
    let mut rows = Vec::with_capacity(2 * m);
    for copy in 0..2 {
        for u in 0..m {
            rows.push(
                h.ports(u)
                    .iter()
                    .map(|&(v, q)| {
                        let cross = crossed.get(&(u.min(v), u.max(v))).copied().unwrap_or(false);
                        let target_copy = if cross { 1 - copy } else { copy };
                        (base + target_copy * m + v, q)
                    })
                    .collect(),
            );
        }
    }
    Ok(rows)
}

/// Two copies of H; each non-tree edge whose bit is set is crossed between
/// the copies. All nodes keep the ports of their original.
pub fn build_hx(
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
    x: &CrossingVector,
) -> Result<GadgetGraph, AdversaryError> {
    let rows = hx_rows(h, tree, x, 0)?;
    Ok(GadgetGraph {
        graph: PortGraph::from_adjacency(rows)?,
        m: h.node_count(),
        cycle_len: 0,
        gadget_count: 1,
    })
}

/// Main cycle `y_0..y_{m-1}` with gadget `H_{x(v_i)}` hanging off `y_i`.
pub fn build_ghat(
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
    xmap: &[CrossingVector],
) -> Result<GadgetGraph, AdversaryError> {
    let z: Vec<usize> = (0..h.node_count()).collect();
    build_ghat_z(h, tree, &z, xmap)
}

/// Main cycle of `p = |z|` nodes; `y_i` carries the gadget `H_{x(v_{z_i})}`.
///
/// For `p >= 3` the cycle is oriented (port 0 clockwise, 1 counterclockwise)
/// and the gateway edge has port 2 at `y_i`. A 1-node cycle has no cycle
/// edges, so its gateway port is 0; a 2-node cycle is a single edge with
/// port 0 at both ends and gateway port 1.
pub fn build_ghat_z(
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
    z: &[usize],
    xmap: &[CrossingVector],
) -> Result<GadgetGraph, AdversaryError> {
    let m = h.node_count();
    if xmap.len() != m {
        return Err(AdversaryError::XmapLength(xmap.len(), m));
    }
    if z.is_empty() {
        return Err(AdversaryError::EmptyZ);
    }
    if let Some(&index) = z.iter().find(|&&i| i >= m) {
        return Err(AdversaryError::ZIndexOutOfRange { index, m });
    }
    let p = z.len();
    let gateway_port = m / 2;
    let mut rows: Vec<Vec<(NodeId, Port)>> = (0..p)
        .map(|i| match p {
            1 => vec![],
            2 => vec![(1 - i, 0)],
            _ => vec![((i + 1) % p, 1), ((i + p - 1) % p, 0)],
        })
        .collect();
    for (i, &zi) in z.iter().enumerate() {
        let base = p + 2 * m * i;
        let mut gadget = hx_rows(h, tree, &xmap[zi], base)?;
        let y_port = rows[i].len();
        rows[i].push((base, gateway_port));
        gadget[0].push((i, y_port));
        rows.extend(gadget);
    }
    Ok(GadgetGraph {
        graph: PortGraph::from_adjacency(rows)?,
        m,
        cycle_len: p,
        gadget_count: p,
    })
}
