//! Hamiltonian-cycle advice: the `n - 1` outgoing ports along a hamiltonian
//! cycle, starting at the agent's node.
//!
//! Wire layout: 32-bit node count, then `n - 1` ports of `ceil(log2 n)` bits.

use super::{port_width, AdviceError, BitString, HEADER_BITS};
use crate::graph::{NodeId, Port, PortGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianAdvice {
    pub node_count: usize,
    pub ports: Vec<Port>,
}

impl HamiltonianAdvice {
    pub fn to_bits(&self) -> BitString {
        let width = port_width(self.node_count);
        let mut bits = BitString::new();
        bits.push_uint(self.node_count as u64, HEADER_BITS);
        for &p in &self.ports {
            bits.push_uint(p as u64, width);
        }
        bits
    }

    pub fn wire_len(n: usize) -> usize {
        HEADER_BITS + n.saturating_sub(1) * port_width(n)
    }
}

/// `cycle` lists every node once in cycle order; the closing edge back to
/// `cycle[0]` is implied.
pub fn encode_hamiltonian_advice(
    g: &PortGraph,
    cycle: &[NodeId],
    start: NodeId,
) -> Result<HamiltonianAdvice, AdviceError> {
    let n = g.node_count();
    if cycle.len() != n {
        return Err(AdviceError::NotHamiltonianCycle(format!(
            "{} nodes listed, graph has {n}",
            cycle.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(AdviceError::NotHamiltonianCycle(format!(
                "node {v} repeated or out of range"
            )));
        }
    }
    if n >= 3 {
        for i in 0..n {
            let (u, v) = (cycle[i], cycle[(i + 1) % n]);
            if !g.is_adjacent(u, v) {
                return Err(AdviceError::NotHamiltonianCycle(format!(
                    "{u} and {v} are not adjacent"
                )));
            }
        }
    }
    let offset = cycle
        .iter()
        .position(|&v| v == start)
        .ok_or(AdviceError::StartNotOnCycle(start))?;
    let ports = (0..n.saturating_sub(1))
        .map(|i| {
            let (u, v) = (cycle[(offset + i) % n], cycle[(offset + i + 1) % n]);
            g.port_to(u, v).ok_or_else(|| {
                AdviceError::NotHamiltonianCycle(format!("{u} and {v} are not adjacent"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HamiltonianAdvice {
        node_count: n,
        ports,
    })
}

pub fn decode_hamiltonian_advice(bits: &BitString) -> Result<HamiltonianAdvice, AdviceError> {
    let mut reader = bits.reader();
    let n = reader
        .read_uint(HEADER_BITS)
        .ok_or(AdviceError::TruncatedHeader)? as usize;
    let needed = HamiltonianAdvice::wire_len(n);
    if bits.len() < needed {
        return Err(AdviceError::TruncatedPorts {
            needed,
            available: bits.len(),
        });
    }
    let width = port_width(n);
    let ports = (0..n.saturating_sub(1))
        .map(|_| reader.read_uint(width).expect("length checked") as Port)
        .collect();
    if reader.remaining() > 0 {
        return Err(AdviceError::TrailingBits(reader.remaining()));
    }
    Ok(HamiltonianAdvice { node_count: n, ports })
}
