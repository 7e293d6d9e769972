use crate::graph::{NodeId, Port, PortGraph};

use super::{AdversaryError, CopyTag, GadgetGraph};

fn check_secret(g: &PortGraph, x: &[Port]) -> Result<usize, AdversaryError> {
    let m = g.node_count();
    let half = m / 2;
    if !m.is_multiple_of(2) || (0..m).any(|v| g.degree(v) != half) {
        return Err(AdversaryError::NotRegular { degree: half });
    }
    if x.len() != m {
        return Err(AdversaryError::SecretLength {
            expected: m,
            got: x.len(),
        });
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, &v)| v >= half) {
        return Err(AdversaryError::SecretOutOfRange {
            index,
            value,
            max: half.saturating_sub(1),
        });
    }
    Ok(m)
}

fn gx_rows(g: &PortGraph, x: &[Port]) -> Result<Vec<Vec<(NodeId, Port)>>, AdversaryError> {
    let m = check_secret(g, x)?;
    let half = m / 2;
    let mut rows: Vec<Vec<(NodeId, Port)>> = (0..m).map(|v| g.ports(v).to_vec()).collect();
    for (v, &xv) in x.iter().enumerate() {
        // the edge at port x_v moves to the new port m/2
        let (w, q) = rows[v][xv];
        rows[v].push((w, q));
        rows[w][q] = (v, half);
        rows[v][xv] = (m + v, 0);
    }
    rows.extend(x.iter().enumerate().map(|(v, &xv)| vec![(v, xv)]));
    Ok(rows)
}

/// `G_x`: node `v_i` (id `i`) gets a pendant `v'_i` (id `m + i`) on port
/// `x_i`; the edge formerly on port `x_i` moves to port `m/2`.
pub fn build_gx(g: &PortGraph, x: &[Port]) -> Result<PortGraph, AdversaryError> {
    Ok(PortGraph::from_adjacency(gx_rows(g, x)?)?)
}

/// `G'_x`: `G_x` plus edges `(v'_{2i-1}, v'_{2i})` with port 1 at both ends.
pub fn build_gx_prime(g: &PortGraph, x: &[Port]) -> Result<PortGraph, AdversaryError> {
    let mut rows = gx_rows(g, x)?;
    let m = g.node_count();
    for i in (0..m).step_by(2) {
        rows[m + i].push((m + i + 1, 1));
        rows[m + i + 1].push((m + i, 1));
    }
    Ok(PortGraph::from_adjacency(rows)?)
}

/// `(v_1, v'_1, v'_2, v_2, v_3, v'_3, v'_4, v_4, ...)` for `G'_x` built from
/// a base graph whose ids follow a hamiltonian cycle.
pub fn gx_prime_hamiltonian_cycle(m: usize) -> Vec<NodeId> {
    (0..m)
        .step_by(2)
        .flat_map(|i| [i, m + i, m + i + 1, i + 1])
        .collect()
}

/// Node `v` becomes the triangle `3v, 3v+1, 3v+2`.
pub fn build_gtilde(ghat: &PortGraph) -> Result<PortGraph, AdversaryError> {
    let n = ghat.node_count();
    let mut rows: Vec<Vec<(NodeId, Port)>> = Vec::with_capacity(3 * n);
    for v in 0..n {
        let d = ghat.degree(v);
        for j in 0..3 {
            let mut row = vec![(0, 0); 3 * d + 2];
            for (p, &(u, q)) in ghat.ports(v).iter().enumerate() {
                let du = ghat.degree(u);
                for i in 0..3 {
                    row[p + i * d] = (3 * u + i, q + j * du);
                }
            }
            row[3 * d] = (3 * v + (j + 1) % 3, 3 * d + 1);
            row[3 * d + 1] = (3 * v + (j + 2) % 3, 3 * d);
            rows.push(row);
        }
    }
    Ok(PortGraph::from_adjacency(rows)?)
}

/// Spanning tree of a gadget graph with maximum degree 3: both copies of
/// `h_tree` in every gadget, the first crossing edge of each gadget, a path
/// along the main cycle, and the gateway edges.
pub fn ghat_spanning_tree(
    ghat: &GadgetGraph,
    h_tree: &[(NodeId, NodeId)],
) -> Vec<(NodeId, NodeId)> {
    let mut tree = Vec::with_capacity(ghat.graph.node_count().saturating_sub(1));
    let edges = ghat.graph.edges();
    for gadget in 0..ghat.gadget_count {
        for copy in [CopyTag::Prime, CopyTag::DoublePrime] {
            tree.extend(h_tree.iter().map(|&(u, v)| {
                (
                    ghat.gadget_node(gadget, copy, u),
                    ghat.gadget_node(gadget, copy, v),
                )
            }));
        }
        let crossing = edges.iter().find(|e| {
            match (ghat.locate(e.u), ghat.locate(e.v)) {
                (
                    super::NodeRole::Gadget { gadget: a, copy: ca, .. },
                    super::NodeRole::Gadget { gadget: b, copy: cb, .. },
                ) => a == gadget && b == gadget && ca != cb,
                _ => false,
            }
        });
        if let Some(e) = crossing {
            tree.push((e.u, e.v));
        }
    }
    for i in 1..ghat.cycle_len {
        tree.push((i - 1, i));
    }
    if ghat.cycle_len > 0 {
        tree.extend((0..ghat.gadget_count).map(|g| (g, ghat.gateway(g))));
    }
    tree
}

/// A hamiltonian cycle of `gtilde` (the tripling of some `Ĝ`) from a spanning
/// tree of `Ĝ` with maximum degree 3. The closed Euler tour of the tree
/// visits each node once per tree edge at it; visit `k` of `v` is assigned a
/// slice of the triangle of `v`, and consecutive slices are joined through
/// the complete bipartite connections between adjacent triangles.
pub fn hamiltonian_cycle_from_tree(
    gtilde: &PortGraph,
    that: &[(NodeId, NodeId)],
) -> Result<Vec<NodeId>, AdversaryError> {
    let n = gtilde.node_count() / 3;
    if that.len() + 1 != n {
        return Err(AdversaryError::NotSpanningTree(format!(
            "{} edges for {n} nodes",
            that.len()
        )));
    }
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(u, v) in that {
        if u >= n || v >= n || !gtilde.is_adjacent(3 * u, 3 * v) {
            return Err(AdversaryError::NotSpanningTree(format!(
                "({u}, {v}) is not an edge"
            )));
        }
        children[u].push(v);
        children[v].push(u);
    }
    if let Some((node, adj)) = children.iter().enumerate().find(|(_, a)| a.len() > 3) {
        return Err(AdversaryError::DegreeExceedsThree {
            node,
            degree: adj.len(),
        });
    }
    for adj in &mut children {
        adj.sort_unstable();
    }

    // closed tour positions, the final return to the root excluded
    let mut tour = Vec::with_capacity(2 * n);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack: Vec<(NodeId, usize)> = vec![(0, 0)];
    tour.push(0);
    while let Some(top) = stack.last_mut() {
        let (u, next) = *top;
        if let Some(&v) = children[u].get(next) {
            top.1 += 1;
            if !seen[v] {
                seen[v] = true;
                tour.push(v);
                stack.push((v, 0));
            }
        } else {
            stack.pop();
            if let Some(&(parent, _)) = stack.last() {
                tour.push(parent);
            }
        }
    }
    if tour.len() > 1 {
        tour.pop();
    }
    if seen.iter().any(|&s| !s) {
        return Err(AdversaryError::NotSpanningTree("not connected".into()));
    }

    let visits: Vec<usize> = {
        let mut c = vec![0; n];
        for &v in &tour {
            c[v] += 1;
        }
        c.into_iter().map(|k| k.max(1)).collect()
    };
    let mut used = vec![0usize; n];
    let mut cycle = Vec::with_capacity(3 * n);
    for &v in &tour {
        let k = used[v];
        used[v] += 1;
        let slice: &[usize] = match (visits[v], k) {
            (1, _) => &[0, 1, 2],
            (2, 0) => &[0],
            (2, _) => &[1, 2],
            (_, k) => &[[0], [1], [2]][k],
        };
        cycle.extend(slice.iter().map(|&j| 3 * v + j));
    }

    let ok = cycle.len() == 3 * n
        && (0..cycle.len()).all(|i| gtilde.is_adjacent(cycle[i], cycle[(i + 1) % cycle.len()]));
    if !ok {
        return Err(AdversaryError::NotSpanningTree(
            "tour does not lift to a hamiltonian cycle".into(),
        ));
    }
    Ok(cycle)
}
