//! Exploration strategies driven by advice.

mod hamiltonian;
mod poly;
mod tree;
mod uxs;

pub use hamiltonian::HamiltonianExplorer;
pub use poly::{CapPolicy, PolyExplorer};
pub use tree::{
    dfs_spanning_tree, euler_tour, reverse_tour, InstanceTreeExplorer, MapTreeExplorer, PortTree,
    TourRecord,
};
pub use uxs::{
    certified_uxs, for_each_port_graph, offset_alphabet, search_uxs, verify_uxs, UxsCertificate,
    UxsReplay, UxsStore, DEFAULT_FEASIBILITY_CAP,
};

use thiserror::Error;

use crate::advice::AdviceError;
use crate::graph::PortGraph;

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error(transparent)]
    Advice(#[from] AdviceError),
    #[error("size bound {requested} exceeds the UXS feasibility cap {cap}")]
    FeasibilityCapExceeded { requested: usize, cap: usize },
    #[error("sequence for bound {bound} fails on a {}-node graph from start {start}", graph.node_count())]
    CertificateInvalid {
        bound: usize,
        graph: Box<PortGraph>,
        start: usize,
    },
    #[error("bad UXS cache file {path}: {message}")]
    Cache { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}
