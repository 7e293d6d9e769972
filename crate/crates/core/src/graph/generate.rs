use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GraphError, NodeId, Port, PortGraph};

/// Complete bipartite graph `K_{k,k}` with the rotation port scheme.
///
/// Side-A node `a_i` has id `2i`, side-B node `b_j` has id `2j + 1`, so node
/// ids enumerate the alternating hamiltonian cycle `a_0, b_0, a_1, b_1, ...`.
/// Port `j` at `a_i` leads to `b_{(i+j) mod k}` and the edge carries the same
/// port number `j` at the `b` end.
pub fn gen_complete_bipartite(k: usize) -> Result<PortGraph, GraphError> {
    if k < 2 {
        return Err(GraphError::Generator(format!(
            "complete bipartite graph needs k >= 2, got {k}"
        )));
    }
    let a = |i: usize| 2 * i;
    let b = |j: usize| 2 * j + 1;
    let mut adjacency = vec![vec![(0, 0); k]; 2 * k];
    for i in 0..k {
        for j in 0..k {
            let l = (i + j) % k;
            adjacency[a(i)][j] = (b(l), j);
            adjacency[b(l)][j] = (a(i), j);
        }
    }
    PortGraph::from_adjacency(adjacency)
}

/// The alternating hamiltonian ordering `v_1..v_{2k}` of [`gen_complete_bipartite`].
pub fn bipartite_hamiltonian_order(k: usize) -> Vec<NodeId> {
    (0..2 * k).collect()
}

/// Oriented ring: port 0 leads clockwise (`i -> i+1`), port 1 counter-clockwise.
pub fn gen_oriented_ring(n: usize) -> Result<PortGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::Generator(format!(
            "oriented ring needs n >= 3, got {n}"
        )));
    }
    let adjacency = (0..n)
        .map(|i| vec![((i + 1) % n, 1), ((i + n - 1) % n, 0)])
        .collect();
    PortGraph::from_adjacency(adjacency)
}

/// Seeded random connected graph.
///
/// The edge target is `round(density * n(n-1)/2)`, raised to `n - 1` when
/// smaller. A random spanning tree is laid down first, then random extra
/// edges, then every node's incident edges are shuffled onto its ports.
pub fn gen_random_connected(n: usize, density: f64, seed: u64) -> Result<PortGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::Generator(format!(
            "random graph needs n >= 2, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(GraphError::Generator(format!(
            "edge density must lie in [0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = n * (n - 1) / 2;
    let target = ((density * pairs as f64).round() as usize).clamp(n - 1, pairs);

    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![vec![false; n]; n];
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(target);
    for i in 1..n {
        let u = order[i];
        let v = order[rng.gen_range(0..i)];
        present[u][v] = true;
        present[v][u] = true;
        edges.push((u, v));
    }
    if target > edges.len() {
        let mut rest: Vec<(NodeId, NodeId)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !present[u][v])
            .collect();
        rest.shuffle(&mut rng);
        edges.extend(rest.into_iter().take(target - edges.len()));
    }

    let mut incident: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        incident[u].push(v);
        incident[v].push(u);
    }
    for row in &mut incident {
        row.sort_unstable();
        row.shuffle(&mut rng);
    }
    let port_of = |u: NodeId, v: NodeId| -> Port {
        incident[u]
            .iter()
            .position(|&w| w == v)
            .expect("edge is incident")
    };
    let adjacency = (0..n)
        .map(|u| incident[u].iter().map(|&v| (v, port_of(v, u))).collect())
        .collect();
    PortGraph::from_adjacency(adjacency)
}
