use std::collections::HashMap;

use crate::graph::{NodeId, Port, PortGraph};
use crate::sim::node_walk;

use super::gf2::{kernel_vector, solve};
use super::{
    build_ghat, canonical_nontree_edges, decompose_blocks, gadget_indices, AdversaryError, CopyTag,
    CrossingVector,
};

/// Replays `w` on `h` from `v_1` (node 0). Returns, for every arrival at a
/// node (the initial presence at `v_1` included), the node and the parity
/// vector of non-tree edge traversals so far.
fn walk_forms(
    w: &[Port],
    h: &PortGraph,
    index: &HashMap<(NodeId, NodeId), usize>,
) -> Result<Vec<(NodeId, Vec<bool>)>, AdversaryError> {
    let mut form = vec![false; index.len()];
    let mut at = 0;
    let mut arrivals = vec![(at, form.clone())];
    for (step, &port) in w.iter().enumerate() {
        let &(next, _) = h
            .ports(at)
            .get(port)
            .ok_or(AdversaryError::InfeasibleW { step, port })?;
        if let Some(&k) = index.get(&(at.min(next), at.max(next))) {
            form[k] ^= true;
        }
        at = next;
        arrivals.push((at, form.clone()));
    }
    Ok(arrivals)
}

fn edge_index(h: &PortGraph, tree: &[(NodeId, NodeId)]) -> HashMap<(NodeId, NodeId), usize> {
    canonical_nontree_edges(h, tree)
        .into_iter()
        .enumerate()
        .map(|(k, e)| (e, k))
        .collect()
}

/// Visits per node of `h` when replaying `w` from `v_1`, the start included.
pub fn visit_counts(w: &[Port], h: &PortGraph) -> Result<Vec<usize>, AdversaryError> {
    let mut counts = vec![0; h.node_count()];
    let mut at = 0;
    counts[at] += 1;
    for (step, &port) in w.iter().enumerate() {
        at = h
            .ports(at)
            .get(port)
            .ok_or(AdversaryError::InfeasibleW { step, port })?
            .0;
        counts[at] += 1;
    }
    Ok(counts)
}

/// Finds `x` such that replaying `w` on `H_x` from `v'_1` never visits one
/// of the copies of `v`.
///
/// In `H_x` the walk is in copy ″ exactly when it has crossed an odd number
/// of times, i.e. when `a·x = 1` for the parity vector `a` of its non-tree
/// traversals. Copy ′ of `v` is avoided if `a·x = 1` at every arrival at
/// `v`; copy ″ is avoided if `a·x = 0` at every arrival, for nonzero `x`.
pub fn solve_crossing_vector(
    w: &[Port],
    v: NodeId,
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
) -> Result<Option<(CrossingVector, CopyTag)>, AdversaryError> {
    let index = edge_index(h, tree);
    let s = index.len();
    let forms: Vec<Vec<bool>> = walk_forms(w, h, &index)?
        .into_iter()
        .filter(|(at, _)| *at == v)
        .map(|(_, a)| a)
        .collect();

    if let Some(mut x) = solve(&forms, &vec![true; forms.len()], s) {
        if !x.iter().any(|&b| b) {
            // only possible with no arrivals: any nonzero x works
            if s == 0 {
                return Ok(None);
            }
            x[0] = true;
        }
        return Ok(Some((CrossingVector(x), CopyTag::Prime)));
    }
    Ok(kernel_vector(&forms, s).map(|x| (CrossingVector(x), CopyTag::DoublePrime)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// One crossing vector per gadget of `Ĝ`.
    pub xmap: Vec<CrossingVector>,
    /// Main-cycle index of the failing start.
    pub start: usize,
    /// A node of `Ĝ` the sequence never visits from `start`.
    pub unvisited: NodeId,
    /// Gadget block that was defeated, if the witness came from one.
    pub block: Option<usize>,
    /// Step at which `u` names a port the current node lacks. The gateway
    /// `v'_1` has one port more than `v''_1`, so a block that ends in copy ″
    /// cannot take the exit port.
    pub stuck_at: Option<usize>,
}

/// Replays `u` on the witness graph; fills in `stuck_at` and reports whether
/// the claimed node stays unvisited.
fn verify(
    u: &[Port],
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
    w: &mut Witness,
) -> Result<bool, AdversaryError> {
    let ghat = build_ghat(h, tree, &w.xmap)?;
    let walk = node_walk(&ghat.graph, w.start, u);
    w.stuck_at = (walk.len() <= u.len()).then(|| walk.len() - 1);
    Ok(!walk.contains(&w.unvisited))
}

/// Searches for a main-cycle start and crossing vectors on which `u` fails
/// to explore `Ĝ`: replaying `u` never reaches `unvisited`, either because
/// the walk misses it or because it gets stuck first. Every returned
/// witness has been checked by simulation.
///
/// Blocks are tried in order; for block `i` and each node `v_j` of H that
/// the block visits at most `s` times, the gadget `j` gets the vector that
/// hides a copy of `v_j` from that block, and the start is chosen so block
/// `i` is the one entering gadget `j`. If no block qualifies and some gadget
/// is never entered, its gateway is the unvisited node. Returns `None` only
/// when every gadget is entered and every block visits every node more than
/// `s` times, in which case `|u| >= (s+1) m²` is checked.
pub fn lower_bound_witness(
    u: &[Port],
    m: usize,
    h: &PortGraph,
    tree: &[(NodeId, NodeId)],
) -> Result<Option<Witness>, AdversaryError> {
    if h.node_count() != m {
        return Err(AdversaryError::XmapLength(m, h.node_count()));
    }
    let s = canonical_nontree_edges(h, tree).len();
    let d = decompose_blocks(u, m)?;
    let offsets = gadget_indices(&d, 0);
    let default_x = CrossingVector::ones(s);
    let ghat_layout = build_ghat(h, tree, &vec![default_x.clone(); m])?;

    for (i, block) in d.gadget_blocks.iter().enumerate() {
        let counts = visit_counts(block, h)?;
        for (j, &count) in counts.iter().enumerate() {
            if count > s {
                continue;
            }
            let Some((x, copy)) = solve_crossing_vector(block, j, h, tree)? else {
                continue;
            };
            let mut xmap = vec![default_x.clone(); m];
            xmap[j] = x;
            let mut witness = Witness {
                xmap,
                start: (j + m - offsets[i]) % m,
                unvisited: ghat_layout.gadget_node(j, copy, j),
                block: Some(i),
                stuck_at: None,
            };
            if verify(u, h, tree, &mut witness)? {
                return Ok(Some(witness));
            }
        }
    }

    let mut entered = vec![false; m];
    for &g in &offsets {
        entered[g] = true;
    }
    if let Some(g) = entered.iter().position(|&e| !e) {
        let mut witness = Witness {
            xmap: vec![default_x; m],
            start: 0,
            unvisited: ghat_layout.gateway(g),
            block: None,
            stuck_at: None,
        };
        if verify(u, h, tree, &mut witness)? {
            return Ok(Some(witness));
        }
        return Err(AdversaryError::Accounting(format!(
            "gadget {g} is never entered but its gateway is reached"
        )));
    }

    let all_heavy = d.gadget_blocks.iter().all(|b| {
        visit_counts(b, h).is_ok_and(|c| c.iter().all(|&k| k > s))
    });
    if all_heavy && u.len() < (s + 1) * m * m {
        return Err(AdversaryError::Accounting(format!(
            "|U| = {} < (s+1)m² = {} although every block is heavy",
            u.len(),
            (s + 1) * m * m
        )));
    }
    Ok(None)
}
