//! Agent execution under the anonymous observation model.
//!
//! At every node the agent sees the node's degree and the port it entered
//! by (none at the start node). A move is a port number; the run ends when
//! the strategy stops, the step budget runs out, or the requested port does
//! not exist at the current node.

use thiserror::Error;

use crate::graph::{NodeId, Port, PortGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Observation {
    pub degree: usize,
    pub entry_port: Option<Port>,
}

/// An oblivious exploration script: a plain list of ports to take.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PortSequence(pub Vec<Port>);

impl PortSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Port] {
        &self.0
    }
}

impl From<Vec<Port>> for PortSequence {
    fn from(ports: Vec<Port>) -> Self {
        Self(ports)
    }
}

impl FromIterator<Port> for PortSequence {
    fn from_iter<I: IntoIterator<Item = Port>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// One traversal: the port taken, the port entered by, the degree found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub out_port: Port,
    pub entry_port: Port,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationOutcome {
    pub steps_used: usize,
    pub visited_count: usize,
    pub completed: bool,
    /// Step index at which the requested port did not exist.
    pub aborted_at: Option<usize>,
    pub budget_exhausted: bool,
    pub trace: Option<Vec<TraceStep>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub budget: Option<usize>,
    pub keep_trace: bool,
}

impl RunOptions {
    pub fn traced() -> Self {
        Self {
            budget: None,
            keep_trace: true,
        }
    }

    pub fn with_budget(budget: usize) -> Self {
        Self {
            budget: Some(budget),
            keep_trace: false,
        }
    }
}

/// What a strategy does next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Take(Port),
    Stop,
    /// The strategy found its advice inconsistent with what it observes.
    Abort,
}

/// A deterministic exploration algorithm. Advice is bound at construction;
/// afterwards the strategy only ever sees observations.
pub trait Strategy {
    fn next_move(&mut self, observation: Observation) -> Move;
}

impl<F: FnMut(Observation) -> Move> Strategy for F {
    fn next_move(&mut self, observation: Observation) -> Move {
        self(observation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("start node {start} does not exist (graph has {node_count} nodes)")]
    BadStart { start: NodeId, node_count: usize },
    #[error("strategy chose port {port} at step {step}, but the node has degree {degree}")]
    StrategyPortOutOfRange {
        step: usize,
        port: Port,
        degree: usize,
    },
}

struct Walk<'g> {
    graph: &'g PortGraph,
    at: NodeId,
    visited: Vec<bool>,
    visited_count: usize,
    steps: usize,
    trace: Option<Vec<TraceStep>>,
    last_entry: Option<Port>,
}

impl<'g> Walk<'g> {
    fn new(graph: &'g PortGraph, start: NodeId, keep_trace: bool) -> Result<Self, SimError> {
        if start >= graph.node_count() {
            return Err(SimError::BadStart {
                start,
                node_count: graph.node_count(),
            });
        }
        let mut visited = vec![false; graph.node_count()];
        visited[start] = true;
        Ok(Self {
            graph,
            at: start,
            visited,
            visited_count: 1,
            steps: 0,
            trace: keep_trace.then(Vec::new),
            last_entry: None,
        })
    }

    fn observation(&self) -> Observation {
        Observation {
            degree: self.graph.degree(self.at),
            entry_port: self.last_entry,
        }
    }

    /// Takes `port` if it exists; returns false otherwise.
    fn take(&mut self, port: Port) -> bool {
        let Some(&(next, entry)) = self.graph.ports(self.at).get(port) else {
            return false;
        };
        self.at = next;
        self.last_entry = Some(entry);
        self.steps += 1;
        if !self.visited[next] {
            self.visited[next] = true;
            self.visited_count += 1;
        }
        if let Some(trace) = &mut self.trace {
            trace.push(TraceStep {
                out_port: port,
                entry_port: entry,
                degree: self.graph.degree(next),
            });
        }
        true
    }

    fn finish(self, aborted_at: Option<usize>, budget_exhausted: bool) -> ExplorationOutcome {
        ExplorationOutcome {
            steps_used: self.steps,
            visited_count: self.visited_count,
            completed: self.visited_count == self.graph.node_count(),
            aborted_at,
            budget_exhausted,
            trace: self.trace,
        }
    }
}

/// Replays `seq` from `start`. Infeasible ports end the run and are reported
/// in `aborted_at`, never as an error.
pub fn run_port_sequence(
    g: &PortGraph,
    start: NodeId,
    seq: &PortSequence,
    options: RunOptions,
) -> Result<ExplorationOutcome, SimError> {
    let mut walk = Walk::new(g, start, options.keep_trace)?;
    for (step, &port) in seq.0.iter().enumerate() {
        if options.budget.is_some_and(|b| walk.steps >= b) {
            return Ok(walk.finish(None, true));
        }
        if !walk.take(port) {
            return Ok(walk.finish(Some(step), false));
        }
    }
    Ok(walk.finish(None, false))
}

/// Runs a strategy from `start`.
///
/// A strategy that picks a port the current node does not have is a bug in
/// the strategy and yields [`SimError::StrategyPortOutOfRange`]; a strategy
/// that detects bad advice returns [`Move::Abort`] instead.
pub fn run_strategy<S: Strategy + ?Sized>(
    g: &PortGraph,
    start: NodeId,
    strategy: &mut S,
    options: RunOptions,
) -> Result<ExplorationOutcome, SimError> {
    let mut walk = Walk::new(g, start, options.keep_trace)?;
    loop {
        if options.budget.is_some_and(|b| walk.steps >= b) {
            return Ok(walk.finish(None, true));
        }
        let observation = walk.observation();
        match strategy.next_move(observation) {
            Move::Stop => return Ok(walk.finish(None, false)),
            Move::Abort => {
                let step = walk.steps;
                return Ok(walk.finish(Some(step), false));
            }
            Move::Take(port) => {
                if !walk.take(port) {
                    return Err(SimError::StrategyPortOutOfRange {
                        step: walk.steps,
                        port,
                        degree: observation.degree,
                    });
                }
            }
        }
    }
}

/// Strategy replaying a fixed port list, aborting where a port is missing.
#[derive(Debug, Clone)]
pub struct SequenceReplay {
    ports: Vec<Port>,
    next: usize,
}

impl SequenceReplay {
    pub fn new(seq: &PortSequence) -> Self {
        Self {
            ports: seq.0.clone(),
            next: 0,
        }
    }
}

impl Strategy for SequenceReplay {
    fn next_move(&mut self, observation: Observation) -> Move {
        let Some(&port) = self.ports.get(self.next) else {
            return Move::Stop;
        };
        self.next += 1;
        if port >= observation.degree {
            Move::Abort
        } else {
            Move::Take(port)
        }
    }
}

/// Node ids visited by replaying `ports` from `start`, including `start`.
/// Stops early at the first missing port. Test and adversary helper: it
/// sees node ids, which strategies never do.
pub fn node_walk(g: &PortGraph, start: NodeId, ports: &[Port]) -> Vec<NodeId> {
    let mut walk = Vec::with_capacity(ports.len() + 1);
    let mut at = start;
    walk.push(at);
    for &p in ports {
        match g.ports(at).get(p) {
            Some(&(next, _)) => {
                at = next;
                walk.push(at);
            }
            None => break,
        }
    }
    walk
}
