use std::collections::HashMap;

use crate::graph::Port;

use super::AdversaryError;

/// `U = B'_1 (2) B_1 (m/2) B'_2 (2) B_2 (m/2) ... B'_{p+1}`, split at the
/// gadget entry port 2 and exit port `m/2`.
///
/// When `U` ends inside a gadget the last gadget block has no closing
/// `m/2` and there is no trailing cycle block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub m: usize,
    pub cycle_blocks: Vec<Vec<Port>>,
    pub gadget_blocks: Vec<Vec<Port>>,
    pub open_tail: bool,
}

impl BlockDecomposition {
    pub fn sequence_len(&self) -> usize {
        let blocks: usize = self
            .cycle_blocks
            .iter()
            .chain(&self.gadget_blocks)
            .map(Vec::len)
            .sum();
        blocks + 2 * self.gadget_blocks.len() - usize::from(self.open_tail)
    }
}

pub fn decompose_blocks(u: &[Port], m: usize) -> Result<BlockDecomposition, AdversaryError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(AdversaryError::MalformedSequence {
            position: 0,
            reason: format!("m = {m} must be even and at least 4"),
        });
    }
    let exit = m / 2;
    let mut cycle_blocks = vec![Vec::new()];
    let mut gadget_blocks: Vec<Vec<Port>> = Vec::new();
    let mut inside = false;
    for (position, &p) in u.iter().enumerate() {
        if inside {
            if p == exit {
                inside = false;
                cycle_blocks.push(Vec::new());
            } else if p < exit {
                gadget_blocks.last_mut().expect("inside a gadget").push(p);
            } else {
                return Err(AdversaryError::MalformedSequence {
                    position,
                    reason: format!("port {p} inside a gadget"),
                });
            }
        } else if p == 2 {
            inside = true;
            gadget_blocks.push(Vec::new());
        } else if p < 2 {
            cycle_blocks.last_mut().expect("nonempty").push(p);
        } else {
            return Err(AdversaryError::MalformedSequence {
                position,
                reason: format!("port {p} on the main cycle"),
            });
        }
    }
    Ok(BlockDecomposition {
        m,
        cycle_blocks,
        gadget_blocks,
        open_tail: inside,
    })
}

pub fn reconcatenate(d: &BlockDecomposition) -> Vec<Port> {
    let mut out = Vec::with_capacity(d.sequence_len());
    for (k, cycle) in d.cycle_blocks.iter().enumerate() {
        out.extend(cycle);
        if let Some(block) = d.gadget_blocks.get(k) {
            out.push(2);
            out.extend(block);
            if !(d.open_tail && k + 1 == d.gadget_blocks.len()) {
                out.push(d.m / 2);
            }
        }
    }
    out
}

/// The gadget (main-cycle index) entered by each gadget block when `U`
/// starts at `y_start`. Port 0 moves clockwise, port 1 counterclockwise, and
/// every gadget excursion returns to the node it left.
pub fn gadget_indices(d: &BlockDecomposition, start: usize) -> Vec<usize> {
    let m = d.m;
    let mut pos = start % m;
    let mut out = Vec::with_capacity(d.gadget_blocks.len());
    for k in 0..d.gadget_blocks.len() {
        for &p in &d.cycle_blocks[k] {
            pos = if p == 0 { (pos + 1) % m } else { (pos + m - 1) % m };
        }
        out.push(pos);
    }
    out
}

/// Concatenates all blocks spent in the same gadget and places them at that
/// gadget's first visit. An open tail keeps its gadget's merged block last,
/// so the rewritten sequence still ends inside it.
pub fn make_non_repetitive(d: &BlockDecomposition, gadget_of_block: &[usize]) -> BlockDecomposition {
    assert_eq!(gadget_of_block.len(), d.gadget_blocks.len());
    let mut merged: HashMap<usize, Vec<Port>> = HashMap::new();
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (k, (&g, block)) in gadget_of_block.iter().zip(&d.gadget_blocks).enumerate() {
        merged.entry(g).or_default().extend(block);
        first.entry(g).or_insert(k);
    }
    let tail_gadget = d
        .open_tail
        .then(|| *gadget_of_block.last().expect("open tail has a block"));
    let last = d.gadget_blocks.len().wrapping_sub(1);

    let mut cycle_blocks = Vec::new();
    let mut gadget_blocks = Vec::new();
    let mut acc = d.cycle_blocks[0].clone();
    for (k, &g) in gadget_of_block.iter().enumerate() {
        let emit = if Some(g) == tail_gadget {
            k == last
        } else {
            first[&g] == k
        };
        if emit {
            cycle_blocks.push(std::mem::take(&mut acc));
            gadget_blocks.push(merged.remove(&g).expect("each gadget emitted once"));
        }
        if let Some(next) = d.cycle_blocks.get(k + 1) {
            acc.extend(next);
        }
    }
    if !d.open_tail {
        cycle_blocks.push(acc);
    }
    BlockDecomposition {
        m: d.m,
        cycle_blocks,
        gadget_blocks,
        open_tail: d.open_tail,
    }
}
