use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::advice::{
    encode_hamiltonian_advice, encode_size_advice, encode_spanning_tree, BitString, OracleKind,
    SizeAdviceParams,
};
use crate::adversary::{
    build_ghat, build_ghat_z, build_gtilde, build_gx, build_gx_prime, canonical_nontree_edges,
    ghat_spanning_tree,
    gx_prime_hamiltonian_cycle, hamiltonian_cycle_from_tree, hamiltonian_path_tree,
    CrossingVector, GadgetGraph, GadgetRoles,
};
use crate::explore::{
    dfs_spanning_tree, CapPolicy, HamiltonianExplorer, InstanceTreeExplorer, MapTreeExplorer,
    PolyExplorer, UxsStore,
};
use crate::graph::{
    bipartite_hamiltonian_order, gen_complete_bipartite, gen_oriented_ring, gen_random_connected,
    NodeId, Port, PortGraph,
};
use crate::sim::{run_strategy, RunOptions, Strategy};

use super::{HarnessError, ReportRow};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Ring { n: usize },
    Bipartite { k: usize },
    Ghat { m: usize },
    GhatZ { m: usize, p: usize },
    Gx { n: usize, x_seed: u64 },
    GxPrime { n: usize, x_seed: u64 },
    Gtilde { m: usize },
    Random { n: usize, density: f64, seed: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Ring { .. } => "ring",
            Family::Bipartite { .. } => "bipartite",
            Family::Ghat { .. } => "ghat",
            Family::GhatZ { .. } => "ghatz",
            Family::Gx { .. } => "gx",
            Family::GxPrime { .. } => "gxprime",
            Family::Gtilde { .. } => "gtilde",
            Family::Random { .. } => "random",
        }
    }
}

/// A built graph with the extra structure some algorithms and start
/// selections need.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: String,
    pub graph: PortGraph,
    pub main_cycle: Vec<NodeId>,
    pub hamiltonian_cycle: Option<Vec<NodeId>>,
    pub roles: Option<GadgetRoles>,
}

impl Instance {
    pub fn plain(family: &str, graph: PortGraph) -> Self {
        Self {
            family: family.to_string(),
            graph,
            main_cycle: Vec::new(),
            hamiltonian_cycle: None,
            roles: None,
        }
    }
}

fn lower_bound_base(m: usize) -> Result<(PortGraph, Vec<(NodeId, NodeId)>), HarnessError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(HarnessError::Config(format!(
            "m must be even and at least 4, got {m}"
        )));
    }
    Ok((gen_complete_bipartite(m / 2)?, hamiltonian_path_tree(m)))
}

fn default_xmap(h: &PortGraph, tree: &[(NodeId, NodeId)]) -> Vec<CrossingVector> {
    let s = canonical_nontree_edges(h, tree).len();
    vec![CrossingVector::ones(s); h.node_count()]
}

fn secret_ports(n: usize, seed: u64) -> Result<(PortGraph, Vec<Port>), HarnessError> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(HarnessError::Config(format!(
            "n must be a multiple of 4 and at least 8, got {n}"
        )));
    }
    let m = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..m).map(|_| rng.gen_range(0..m / 2)).collect();
    Ok((gen_complete_bipartite(m / 2)?, x))
}

fn gadget_instance(family: &str, g: GadgetGraph) -> Instance {
    Instance {
        family: family.to_string(),
        main_cycle: (0..g.cycle_len).collect(),
        roles: Some(g.roles()),
        hamiltonian_cycle: None,
        graph: g.graph,
    }
}

/// Builds the family's graph. Gadget families use `H = K_{m/2,m/2}`, its
/// hamiltonian path as tree, all-ones crossing vectors, and for `ghatz` the
/// first `p` indices. `gx`/`gxprime` draw the secret ports from `x_seed`.
pub fn build_instance(family: &Family) -> Result<Instance, HarnessError> {
    let name = family.name();
    Ok(match *family {
        Family::Ring { n } => Instance {
            hamiltonian_cycle: Some((0..n).collect()),
            ..Instance::plain(name, gen_oriented_ring(n)?)
        },
        Family::Bipartite { k } => Instance {
            hamiltonian_cycle: Some(bipartite_hamiltonian_order(k)),
            ..Instance::plain(name, gen_complete_bipartite(k)?)
        },
        Family::Random { n, density, seed } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(HarnessError::Config(format!(
                    "density must lie in [0, 1], got {density}"
                )));
            }
            Instance::plain(name, gen_random_connected(n, density, seed)?)
        }
        Family::Ghat { m } => {
            let (h, t) = lower_bound_base(m)?;
            gadget_instance(name, build_ghat(&h, &t, &default_xmap(&h, &t))?)
        }
        Family::GhatZ { m, p } => {
            let (h, t) = lower_bound_base(m)?;
            if p == 0 || p > m {
                return Err(HarnessError::Config(format!("p must lie in 1..={m}, got {p}")));
            }
            let z: Vec<usize> = (0..p).collect();
            gadget_instance(name, build_ghat_z(&h, &t, &z, &default_xmap(&h, &t))?)
        }
        Family::Gx { n, x_seed } => {
            let (g, x) = secret_ports(n, x_seed)?;
            Instance::plain(name, build_gx(&g, &x)?)
        }
        Family::GxPrime { n, x_seed } => {
            let (g, x) = secret_ports(n, x_seed)?;
            Instance {
                hamiltonian_cycle: Some(gx_prime_hamiltonian_cycle(n / 2)),
                ..Instance::plain(name, build_gx_prime(&g, &x)?)
            }
        }
        Family::Gtilde { m } => {
            let (h, t) = lower_bound_base(m)?;
            let ghat = build_ghat(&h, &t, &default_xmap(&h, &t))?;
            let gtilde = build_gtilde(&ghat.graph)?;
            let cycle = hamiltonian_cycle_from_tree(&gtilde, &ghat_spanning_tree(&ghat, &t))?;
            Instance {
                family: name.to_string(),
                main_cycle: (0..ghat.cycle_len).map(|y| 3 * y).collect(),
                hamiltonian_cycle: Some(cycle),
                roles: None,
                graph: gtilde,
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Tree,
    Ham,
    Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartSelection {
    All,
    Cycle,
    Nodes(Vec<NodeId>),
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub family: Family,
    pub oracle: OracleKind,
    pub algo: Algo,
    pub starts: StartSelection,
    pub budget: Option<usize>,
    pub size_params: SizeAdviceParams,
    pub uxs: UxsStore,
    pub cap_policy: CapPolicy,
}

impl ExperimentSpec {
    pub fn new(family: Family, oracle: OracleKind, algo: Algo) -> Self {
        Self {
            family,
            oracle,
            algo,
            starts: StartSelection::All,
            budget: None,
            size_params: SizeAdviceParams::default(),
            uxs: UxsStore::default(),
            cap_policy: CapPolicy::Strict,
        }
    }
}

/// Advice for `algo` as the given oracle would produce it. Map advice for
/// the tree algorithm is rooted at node 0 whatever the start.
pub fn make_advice(
    instance: &Instance,
    algo: Algo,
    oracle: OracleKind,
    start: NodeId,
    size_params: SizeAdviceParams,
) -> Result<BitString, HarnessError> {
    let g = &instance.graph;
    Ok(match algo {
        Algo::Tree => {
            let root = match oracle {
                OracleKind::Instance => start,
                OracleKind::Map => 0,
            };
            encode_spanning_tree(g, &dfs_spanning_tree(g, root), root, oracle)?.to_bits()
        }
        Algo::Ham => {
            if oracle != OracleKind::Instance {
                return Err(HarnessError::Config(
                    "hamiltonian advice depends on the start: use the instance oracle".into(),
                ));
            }
            let cycle = instance.hamiltonian_cycle.as_ref().ok_or_else(|| {
                HarnessError::Config(format!("no hamiltonian cycle known for {}", instance.family))
            })?;
            encode_hamiltonian_advice(g, cycle, start)?.to_bits()
        }
        Algo::Poly => encode_size_advice(g.node_count() as u64, size_params)?,
    })
}

pub fn make_strategy(
    algo: Algo,
    oracle: OracleKind,
    advice: &BitString,
    size_params: SizeAdviceParams,
    uxs: &UxsStore,
    cap_policy: CapPolicy,
) -> Result<Box<dyn Strategy>, HarnessError> {
    Ok(match (algo, oracle) {
        (Algo::Tree, OracleKind::Instance) => Box::new(InstanceTreeExplorer::new(advice)?),
        (Algo::Tree, OracleKind::Map) => Box::new(MapTreeExplorer::new(advice)?),
        (Algo::Ham, _) => Box::new(HamiltonianExplorer::new(advice)?),
        (Algo::Poly, _) => Box::new(PolyExplorer::new(advice, size_params, uxs, cap_policy)?),
    })
}

fn time_bound(algo: Algo, oracle: OracleKind, n: usize, strategy_len: Option<usize>) -> u64 {
    let n = n as u64;
    match (algo, oracle) {
        (Algo::Tree, OracleKind::Instance) => 2 * n - 2,
        (Algo::Tree, OracleKind::Map) => 8 * n * (n - 1),
        (Algo::Ham, _) => n - 1,
        (Algo::Poly, _) => strategy_len.unwrap_or(0) as u64,
    }
}

pub fn resolve_starts(instance: &Instance, starts: &StartSelection) -> Result<Vec<NodeId>, HarnessError> {
    let n = instance.graph.node_count();
    match starts {
        StartSelection::All => Ok((0..n).collect()),
        StartSelection::Cycle if instance.main_cycle.is_empty() => Err(HarnessError::Config(
            format!("{} has no main cycle", instance.family),
        )),
        StartSelection::Cycle => Ok(instance.main_cycle.clone()),
        StartSelection::Nodes(nodes) => {
            if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
                return Err(HarnessError::Config(format!(
                    "start {bad} is not a node of the {n}-node graph"
                )));
            }
            Ok(nodes.clone())
        }
    }
}

/// Runs the spec's explorer from `start` with the given advice.
pub fn run_with_advice(
    instance: &Instance,
    spec: &ExperimentSpec,
    start: NodeId,
    advice: &BitString,
) -> Result<ReportRow, HarnessError> {
    let n = instance.graph.node_count();
    let options = RunOptions {
        budget: spec.budget,
        keep_trace: false,
    };
    let (outcome, poly_len) = if spec.algo == Algo::Poly {
        let mut poly = PolyExplorer::new(advice, spec.size_params, &spec.uxs, spec.cap_policy)?;
        let len = poly.certificate().offsets.len();
        (run_strategy(&instance.graph, start, &mut poly, options)?, Some(len))
    } else {
        let mut strategy = make_strategy(
            spec.algo,
            spec.oracle,
            advice,
            spec.size_params,
            &spec.uxs,
            spec.cap_policy,
        )?;
        (run_strategy(&instance.graph, start, strategy.as_mut(), options)?, None)
    };
    let bound_value = time_bound(spec.algo, spec.oracle, n, poly_len);
    Ok(ReportRow {
        family: instance.family.clone(),
        n,
        start,
        advice_bits: advice.len(),
        steps_used: outcome.steps_used,
        completed: outcome.completed,
        bound_checked: outcome.steps_used as u64 <= bound_value,
        bound_value,
    })
}

/// Runs the spec's algorithm on an already built instance, one row per start.
pub fn run_on_instance(
    instance: &Instance,
    spec: &ExperimentSpec,
) -> Result<Vec<ReportRow>, HarnessError> {
    resolve_starts(instance, &spec.starts)?
        .into_iter()
        .map(|start| {
            let advice = make_advice(instance, spec.algo, spec.oracle, start, spec.size_params)?;
            run_with_advice(instance, spec, start, &advice)
        })
        .collect()
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ReportRow>, HarnessError> {
    run_on_instance(&build_instance(&spec.family)?, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_instance_tree() {
        let rows = run_experiment(&ExperimentSpec::new(
            Family::Ring { n: 8 },
            OracleKind::Instance,
            Algo::Tree,
        ))
        .unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.steps_used == 14 && r.completed && r.bound_checked));
    }

    #[test]
    fn ghat_map_cycle_starts() {
        let mut spec = ExperimentSpec::new(Family::Ghat { m: 4 }, OracleKind::Map, Algo::Tree);
        spec.starts = StartSelection::Cycle;
        let rows = run_experiment(&spec).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.completed && r.bound_checked && r.n == 36));
    }

    #[test]
    fn bipartite_ham() {
        let rows = run_experiment(&ExperimentSpec::new(
            Family::Bipartite { k: 3 },
            OracleKind::Instance,
            Algo::Ham,
        ))
        .unwrap();
        assert!(rows.iter().all(|r| r.steps_used == 5 && r.completed));
    }

    #[test]
    fn config_errors() {
        let spec = ExperimentSpec::new(Family::Bipartite { k: 3 }, OracleKind::Map, Algo::Ham);
        assert!(matches!(run_experiment(&spec), Err(HarnessError::Config(_))));
        let mut spec = ExperimentSpec::new(Family::Ring { n: 5 }, OracleKind::Map, Algo::Tree);
        spec.starts = StartSelection::Cycle;
        assert!(matches!(run_experiment(&spec), Err(HarnessError::Config(_))));
        let spec = ExperimentSpec::new(Family::Ghat { m: 5 }, OracleKind::Map, Algo::Tree);
        assert!(matches!(run_experiment(&spec), Err(HarnessError::Config(_))));
    }

    #[test]
    fn poly_strict_reports_cap() {
        let spec = ExperimentSpec::new(Family::Ring { n: 3 }, OracleKind::Map, Algo::Poly);
        assert!(matches!(
            run_experiment(&spec),
            Err(HarnessError::Explore(crate::explore::ExploreError::FeasibilityCapExceeded { .. }))
        ));
    }
}
