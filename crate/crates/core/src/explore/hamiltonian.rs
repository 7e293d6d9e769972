use crate::advice::{decode_hamiltonian_advice, BitString};
use crate::graph::Port;
use crate::sim::{Move, Observation, Strategy};

use super::ExploreError;

/// Takes the advised ports in `n - 1` consecutive steps, then stops.
#[derive(Debug, Clone)]
pub struct HamiltonianExplorer {
    ports: Vec<Port>,
    next: usize,
}

impl HamiltonianExplorer {
    pub fn new(advice: &BitString) -> Result<Self, ExploreError> {
        let decoded = decode_hamiltonian_advice(advice)?;
        Ok(Self {
            ports: decoded.ports,
            next: 0,
        })
    }
}

impl Strategy for HamiltonianExplorer {
    fn next_move(&mut self, observation: Observation) -> Move {
        match self.ports.get(self.next) {
            None => Move::Stop,
            Some(&p) if p >= observation.degree => Move::Abort,
            Some(&p) => {
                self.next += 1;
                Move::Take(p)
            }
        }
    }
}
