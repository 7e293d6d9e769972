//! Exploration along a port-numbered spanning tree.

use crate::advice::{decode_spanning_tree, BitString, OracleKind, SpanningTreeAdvice, TourStep};
use crate::graph::{NodeId, Port, PortGraph};
use crate::sim::{Move, Observation, Strategy};

use super::ExploreError;

/// DFS spanning tree of `g` from `root`, neighbors in increasing port order.
/// Edges come out as `(parent, child)` in discovery order.
pub fn dfs_spanning_tree(g: &PortGraph, root: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut seen = vec![false; g.node_count()];
    seen[root] = true;
    let mut edges = Vec::with_capacity(g.node_count().saturating_sub(1));
    let mut stack: Vec<(NodeId, Port)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (u, p) = *top;
        if p == g.degree(u) {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let (v, _) = g.ports(u)[p];
        if !seen[v] {
            seen[v] = true;
            edges.push((u, v));
            stack.push((v, 0));
        }
    }
    edges
}

/// A tree whose edges carry port numbers at both ends; node ids are local.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortTree {
    /// Per node: `(port, neighbor, port at neighbor)`, sorted by port.
    adjacency: Vec<Vec<(Port, usize, Port)>>,
}

impl PortTree {
    /// Rebuilds the tree encoded by advice; node `i` is the `i`-th node
    /// discovered by the oracle's DFS, so node 0 is the root.
    pub fn from_advice(advice: &SpanningTreeAdvice) -> Self {
        let mut adjacency: Vec<Vec<(Port, usize, Port)>> = vec![Vec::new(); advice.node_count];
        let mut path = vec![0usize];
        let mut next_id = 1;
        for (&up, step) in advice.shape.bits().iter().zip(&advice.steps) {
            let here = *path.last().expect("root stays on the path");
            if up {
                path.pop();
            } else {
                let child = next_id;
                next_id += 1;
                adjacency[here].push((step.out_port, child, step.entry_port));
                adjacency[child].push((step.entry_port, here, step.out_port));
                path.push(child);
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Self { adjacency }
    }

    /// The subtree of `g` formed by `edges`, keeping the graph's node ids.
    pub fn from_graph(g: &PortGraph, edges: &[(NodeId, NodeId)]) -> Self {
        let mut adjacency: Vec<Vec<(Port, usize, Port)>> = vec![Vec::new(); g.node_count()];
        for &(u, v) in edges {
            let p = g.port_to(u, v).expect("tree edge must be a graph edge");
            let q = g.port_to(v, u).expect("tree edge must be a graph edge");
            adjacency[u].push((p, v, q));
            adjacency[v].push((q, u, p));
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        Self { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }
}

/// Euler tour `E(start)`: every tree edge twice, neighbors in increasing
/// port order, each step with its expected incoming port.
pub fn euler_tour(tree: &PortTree, start: usize) -> Vec<TourStep> {
    let mut tour = Vec::with_capacity(2 * tree.node_count().saturating_sub(1));
    // (node, port leading back to the parent, next neighbor index)
    let mut stack: Vec<(usize, Option<(Port, Port)>, usize)> = vec![(start, None, 0)];
    while let Some(top) = stack.last_mut() {
        let (u, back, next) = *top;
        if let Some(&(p, v, q)) = tree.adjacency[u].get(next) {
            top.2 += 1;
            if back.is_some_and(|(bp, _)| bp == p) {
                continue;
            }
            tour.push(TourStep {
                out_port: p,
                entry_port: q,
            });
            stack.push((v, Some((q, p)), 0));
        } else {
            stack.pop();
            if let Some((bp, bq)) = back {
                tour.push(TourStep {
                    out_port: bp,
                    entry_port: bq,
                });
            }
        }
    }
    tour
}

/// `Ē`: the tour walked backwards.
pub fn reverse_tour(tour: &[TourStep]) -> Vec<TourStep> {
    tour.iter()
        .rev()
        .map(|s| TourStep {
            out_port: s.entry_port,
            entry_port: s.out_port,
        })
        .collect()
}

/// Linear-time exploration with instance advice: follow the Euler tour of
/// the tree rooted at the start node, then stop.
#[derive(Debug, Clone)]
pub struct InstanceTreeExplorer {
    tour: Vec<TourStep>,
    next: usize,
}

impl InstanceTreeExplorer {
    pub fn new(advice: &BitString) -> Result<Self, ExploreError> {
        let decoded = decode_spanning_tree(advice, OracleKind::Instance)?;
        Ok(Self::from_tree(&PortTree::from_advice(&decoded)))
    }

    pub fn from_tree(tree: &PortTree) -> Self {
        Self {
            tour: euler_tour(tree, 0),
            next: 0,
        }
    }

    pub fn tour_len(&self) -> usize {
        self.tour.len()
    }
}

impl Strategy for InstanceTreeExplorer {
    fn next_move(&mut self, observation: Observation) -> Move {
        if let (Some(prev), Some(entry)) = (
            self.next.checked_sub(1).map(|i| self.tour[i]),
            observation.entry_port,
        ) {
            if prev.entry_port != entry {
                return Move::Abort;
            }
        }
        match self.tour.get(self.next) {
            None => Move::Stop,
            Some(step) if step.out_port >= observation.degree => Move::Abort,
            Some(step) => {
                self.next += 1;
                Move::Take(step.out_port)
            }
        }
    }
}

/// One attempted hypothesis of [`MapTreeExplorer`]: steps
/// `first_step..end_step` of the run, including any backtracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TourRecord {
    pub hypothesis: usize,
    pub first_step: usize,
    pub end_step: usize,
    pub aborted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Touring,
    Backtracking,
}

/// Quadratic-time exploration with map advice.
///
/// The agent does not know which tree node it stands on, so it tries every
/// hypothesis `u` in the oracle's DFS order and walks `F(u) = E(u) · Ē(u)`.
/// A tour that asks for a missing port, or enters a node by an unexpected
/// port, is abandoned and the agent retraces its actual steps to the start.
/// The tour for the true start always succeeds, so every node is visited.
#[derive(Debug, Clone)]
pub struct MapTreeExplorer {
    tree: PortTree,
    hypothesis: usize,
    tour: Vec<TourStep>,
    next: usize,
    /// Steps actually taken in the current tour: `(out port, observed entry)`.
    performed: Vec<(Port, Port)>,
    phase: Phase,
    awaiting_entry: bool,
    steps: usize,
    tour_start: usize,
    log: Vec<TourRecord>,
    done: bool,
}

impl MapTreeExplorer {
    pub fn new(advice: &BitString) -> Result<Self, ExploreError> {
        let decoded = decode_spanning_tree(advice, OracleKind::Map)?;
        Ok(Self::from_tree(PortTree::from_advice(&decoded)))
    }

    pub fn from_tree(tree: PortTree) -> Self {
        let mut explorer = Self {
            tree,
            hypothesis: 0,
            tour: Vec::new(),
            next: 0,
            performed: Vec::new(),
            phase: Phase::Touring,
            awaiting_entry: false,
            steps: 0,
            tour_start: 0,
            log: Vec::new(),
            done: false,
        };
        explorer.load_tour();
        explorer
    }

    fn load_tour(&mut self) {
        let forward = euler_tour(&self.tree, self.hypothesis);
        self.tour = [forward.clone(), reverse_tour(&forward)].concat();
        self.next = 0;
        self.performed.clear();
        self.phase = Phase::Touring;
        self.tour_start = self.steps;
    }

    fn finish_tour(&mut self, aborted: bool) {
        self.log.push(TourRecord {
            hypothesis: self.hypothesis,
            first_step: self.tour_start,
            end_step: self.steps,
            aborted,
        });
        self.hypothesis += 1;
        if self.hypothesis >= self.tree.node_count() {
            self.done = true;
        } else {
            self.load_tour();
        }
    }

    /// Tours attempted so far, in order.
    pub fn tour_log(&self) -> &[TourRecord] {
        &self.log
    }

    fn take(&mut self, port: Port) -> Move {
        self.steps += 1;
        Move::Take(port)
    }
}

impl Strategy for MapTreeExplorer {
    fn next_move(&mut self, observation: Observation) -> Move {
        if self.awaiting_entry {
            self.awaiting_entry = false;
            let expected = self.tour[self.next - 1];
            let entry = observation.entry_port.expect("agent has moved");
            self.performed.push((expected.out_port, entry));
            if entry != expected.entry_port {
                self.phase = Phase::Backtracking;
            }
        }
        loop {
            if self.done {
                return Move::Stop;
            }
            match self.phase {
                Phase::Backtracking => match self.performed.pop() {
                    Some((_, entry)) => return self.take(entry),
                    None => self.finish_tour(true),
                },
                Phase::Touring => match self.tour.get(self.next) {
                    None => self.finish_tour(false),
                    Some(step) if step.out_port >= observation.degree => {
                        self.phase = Phase::Backtracking;
                    }
                    Some(step) => {
                        let port = step.out_port;
                        self.next += 1;
                        self.awaiting_entry = true;
                        return self.take(port);
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::advice::encode_spanning_tree;
    use crate::graph::{
        gen_complete_bipartite, gen_oriented_ring, gen_random_connected, validate_graph,
        EdgeRecord,
    };
    use crate::sim::{node_walk, run_strategy, RunOptions};

    fn advice(g: &PortGraph, root: NodeId, oracle: OracleKind) -> BitString {
        encode_spanning_tree(g, &dfs_spanning_tree(g, root), root, oracle)
            .unwrap()
            .to_bits()
    }

    #[test]
    fn dfs_tree_examples() {
        let g = gen_complete_bipartite(2).unwrap();
        let t = dfs_spanning_tree(&g, 0);
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], (0, g.neighbor(0, 0).unwrap().0));
        let ring = gen_oriented_ring(5).unwrap();
        assert_eq!(dfs_spanning_tree(&ring, 0), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        let path = validate_graph(
            &[EdgeRecord::new(0, 0, 1, 0), EdgeRecord::new(1, 1, 2, 0)],
            3,
        )
        .unwrap();
        assert_eq!(dfs_spanning_tree(&path, 0), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn euler_tour_lengths() {
        let single = validate_graph(&[EdgeRecord::new(0, 0, 1, 0)], 2).unwrap();
        let tree = PortTree::from_graph(&single, &[(0, 1)]);
        assert_eq!(euler_tour(&tree, 0).len(), 2);
        assert_eq!(euler_tour(&tree, 1).len(), 2);
        let path = validate_graph(
            &[EdgeRecord::new(0, 0, 1, 0), EdgeRecord::new(1, 1, 2, 0)],
            3,
        )
        .unwrap();
        let tree = PortTree::from_graph(&path, &[(0, 1), (1, 2)]);
        assert_eq!(euler_tour(&tree, 1).len(), 4);
    }

    #[test]
    fn euler_tour_on_random_tree_returns_home() {
        let g = gen_random_connected(16, 0.2, 11).unwrap();
        let edges = dfs_spanning_tree(&g, 5);
        let tree = PortTree::from_graph(&g, &edges);
        for start in [0, 5, 15] {
            let tour = euler_tour(&tree, start);
            let ports: Vec<Port> = tour.iter().map(|s| s.out_port).collect();
            let walk = node_walk(&g, start, &ports);
            assert_eq!(walk.len(), 31);
            assert_eq!(*walk.last().unwrap(), start);
            let mut seen = walk.clone();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), 16);
            for (i, step) in tour.iter().enumerate() {
                assert_eq!(g.neighbor(walk[i], step.out_port).unwrap().1, step.entry_port);
            }
        }
    }

    #[test]
    fn advice_tree_matches_graph_tree() {
        let g = gen_random_connected(16, 0.25, 3).unwrap();
        let adv = encode_spanning_tree(&g, &dfs_spanning_tree(&g, 4), 4, OracleKind::Map).unwrap();
        let tree = PortTree::from_advice(&adv);
        let ports: Vec<Port> = euler_tour(&tree, 0).iter().map(|s| s.out_port).collect();
        let from_graph = PortTree::from_graph(&g, &dfs_spanning_tree(&g, 4));
        let direct: Vec<Port> = euler_tour(&from_graph, 4).iter().map(|s| s.out_port).collect();
        assert_eq!(ports, direct);
    }

    #[test]
    fn instance_explorer_examples() {
        let single = validate_graph(&[EdgeRecord::new(0, 0, 1, 0)], 2).unwrap();
        let out = run_strategy(
            &single,
            1,
            &mut InstanceTreeExplorer::new(&advice(&single, 1, OracleKind::Instance)).unwrap(),
            RunOptions::default(),
        )
        .unwrap();
        assert!(out.completed);
        assert_eq!(out.steps_used, 2);

        let ring = gen_oriented_ring(6).unwrap();
        for start in 0..6 {
            let mut s = InstanceTreeExplorer::new(&advice(&ring, start, OracleKind::Instance))
                .unwrap();
            let out = run_strategy(&ring, start, &mut s, RunOptions::default()).unwrap();
            assert!(out.completed);
            assert_eq!(out.steps_used, 10);
        }

        let g = gen_random_connected(32, 0.1, 21).unwrap();
        let mut s = InstanceTreeExplorer::new(&advice(&g, 7, OracleKind::Instance)).unwrap();
        let out = run_strategy(&g, 7, &mut s, RunOptions::default()).unwrap();
        assert!(out.completed);
        assert_eq!(out.steps_used, 62);
    }

    #[test]
    fn instance_explorer_flags_wrong_start() {
        let g = gen_random_connected(12, 0.3, 2).unwrap();
        let mut s = InstanceTreeExplorer::new(&advice(&g, 0, OracleKind::Instance)).unwrap();
        let out = run_strategy(&g, 3, &mut s, RunOptions::default()).unwrap();
        assert!(out.aborted_at.is_some() || out.completed);
    }

    #[test]
    fn map_explorer_two_nodes() {
        let single = validate_graph(&[EdgeRecord::new(0, 0, 1, 0)], 2).unwrap();
        let adv = advice(&single, 0, OracleKind::Map);
        for start in 0..2 {
            let mut s = MapTreeExplorer::new(&adv).unwrap();
            let out = run_strategy(&single, start, &mut s, RunOptions::default()).unwrap();
            assert!(out.completed);
            assert!(out.steps_used <= 8);
            assert_eq!(s.tour_log().len(), 2);
        }
    }

    #[test]
    fn map_explorer_ring_all_starts() {
        let ring = gen_oriented_ring(8).unwrap();
        let adv = advice(&ring, 0, OracleKind::Map);
        for start in 0..8 {
            let mut s = MapTreeExplorer::new(&adv).unwrap();
            let out = run_strategy(&ring, start, &mut s, RunOptions::traced()).unwrap();
            assert!(out.completed);
            assert!(out.steps_used <= 8 * 8 * 7);
            let ports: Vec<Port> = out.trace.unwrap().iter().map(|t| t.out_port).collect();
            let walk = node_walk(&ring, start, &ports);
            for record in s.tour_log() {
                assert_eq!(walk[record.end_step], start, "{record:?}");
            }
        }
    }

    #[test]
    fn reverse_tour_swaps_ports() {
        let t = vec![
            TourStep {
                out_port: 1,
                entry_port: 2,
            },
            TourStep {
                out_port: 0,
                entry_port: 3,
            },
        ];
        let r = reverse_tour(&t);
        assert_eq!(r[0].out_port, 3);
        assert_eq!(r[1].entry_port, 1);
    }
}
