//! Lower-bound graph families and the constructive adversary against
//! oblivious port sequences.

mod blocks;
mod families;
mod gadget;
pub mod gf2;
mod witness;

pub use blocks::{
    decompose_blocks, gadget_indices, make_non_repetitive, reconcatenate, BlockDecomposition,
};
pub use families::{
    build_gtilde, build_gx, build_gx_prime, ghat_spanning_tree, gx_prime_hamiltonian_cycle,
    hamiltonian_cycle_from_tree,
};
pub use gadget::{
    build_ghat, build_ghat_z, build_hx, canonical_nontree_edges, hamiltonian_path_tree,
    GadgetGraph, GadgetRoles, NodeRole,
};
pub use witness::{lower_bound_witness, solve_crossing_vector, visit_counts, Witness};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{GraphError, NodeId, Port};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdversaryError {
    #[error("crossing vector must be nonzero")]
    ZeroVector,
    #[error("crossing vector has {got} bits, {expected} expected")]
    VectorLength { expected: usize, got: usize },
    #[error("{0} crossing vectors supplied, one per node of H ({1}) expected")]
    XmapLength(usize, usize),
    #[error("gadget index set must be nonempty")]
    EmptyZ,
    #[error("gadget index {index} out of range for {m} nodes")]
    ZIndexOutOfRange { index: usize, m: usize },
    #[error("base graph must be {degree}-regular with an even number of nodes")]
    NotRegular { degree: usize },
    #[error("secret port x[{index}] = {value} exceeds {max}")]
    SecretOutOfRange { index: usize, value: usize, max: usize },
    #[error("sequence has {got} secret ports, {expected} expected")]
    SecretLength { expected: usize, got: usize },
    #[error("tree node {node} has degree {degree}, at most 3 allowed")]
    DegreeExceedsThree { node: NodeId, degree: usize },
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("malformed sequence at position {position}: {reason}")]
    MalformedSequence { position: usize, reason: String },
    #[error("port {port} at step {step} does not exist in H")]
    InfeasibleW { step: usize, port: Port },
    #[error("bad role sidecar at line {line}: {message}")]
    Sidecar { line: usize, message: String },
    #[error("accounting violated: {0}")]
    Accounting(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which copy of H a node of `H_x` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CopyTag {
    Prime,
    DoublePrime,
}

impl CopyTag {
    pub fn index(self) -> usize {
        match self {
            CopyTag::Prime => 0,
            CopyTag::DoublePrime => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(CopyTag::Prime),
            1 => Some(CopyTag::DoublePrime),
            _ => None,
        }
    }
}

/// One bit per non-tree edge of H, in [`canonical_nontree_edges`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingVector(pub Vec<bool>);

impl CrossingVector {
    pub fn ones(s: usize) -> Self {
        Self(vec![true; s])
    }

    pub fn unit(s: usize, i: usize) -> Self {
        let mut bits = vec![false; s];
        bits[i] = true;
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn dot(&self, form: &[bool]) -> bool {
        self.0
            .iter()
            .zip(form)
            .fold(false, |acc, (&a, &b)| acc ^ (a & b))
    }
}

impl fmt::Display for CrossingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CrossingVector {
    type Err = AdversaryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(AdversaryError::MalformedSequence {
                    position: i,
                    reason: format!("`{c}` is not a bit"),
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}
