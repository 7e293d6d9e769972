//! Advice strings and their encodings.
//!
//! Advice is a plain bit string; its length is the size of advice. Each
//! encoder here has an exact wire layout so sizes can be asserted bit for bit.

mod hamiltonian;
mod size;
mod tree;

pub use hamiltonian::{decode_hamiltonian_advice, encode_hamiltonian_advice, HamiltonianAdvice};
pub use size::{
    decode_size_bound, encode_size_advice, encode_size_advice_for_log2, floor_log2, SizeAdviceParams,
    SizeBound,
};
pub use tree::{
    decode_spanning_tree, encode_spanning_tree, tree_wire_len, SpanningTreeAdvice, TourStep,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::NodeId;

/// Which oracle produced a piece of advice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    /// Knows the graph and the agent's start node.
    Instance,
    /// Knows the graph only.
    Map,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdviceError {
    #[error("advice text contains `{0}`; only '0' and '1' are allowed")]
    BadCharacter(char),
    #[error("graph size must be at least 2, got {0}")]
    SizeTooSmall(u64),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("node sequence is not a hamiltonian cycle: {0}")]
    NotHamiltonianCycle(String),
    #[error("start node {0} is not on the cycle")]
    StartNotOnCycle(NodeId),
    #[error("malformed tree shape at bit {0}")]
    MalformedShape(usize),
    #[error("advice ends after {available} bits, {needed} needed")]
    TruncatedPorts { needed: usize, available: usize },
    #[error("advice truncated inside the header")]
    TruncatedHeader,
    #[error("inconsistent port pair for tree edge at tour step {0}")]
    InconsistentPorts(usize),
    #[error("{0} unexpected trailing bits")]
    TrailingBits(usize),
}

/// An ordered sequence of bits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u64, width: usize) {
        debug_assert!(width >= 64 || value >> width == 0, "{value} overflows {width} bits");
        for shift in (0..width).rev() {
            self.0.push(shift < 64 && (value >> shift) & 1 == 1);
        }
    }

    /// Binary representation of `value` without leading zeros ("0" for zero).
    pub fn binary(value: u64) -> Self {
        let width = (64 - value.leading_zeros() as usize).max(1);
        let mut bits = Self::new();
        bits.push_uint(value, width);
        bits
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: &self.0, pos: 0 }
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parses the advice file format: ASCII `0`/`1`, optional trailing newline.
impl FromStr for BitString {
    type Err = AdviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .strip_suffix("\r\n")
            .or_else(|| s.strip_suffix('\n'))
            .unwrap_or(s);
        body.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(AdviceError::BadCharacter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos).copied()?;
        self.pos += 1;
        Some(bit)
    }

    pub fn read_uint(&mut self, width: usize) -> Option<u64> {
        if self.remaining() < width {
            return None;
        }
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | u64::from(self.bits[self.pos]);
            self.pos += 1;
        }
        Some(value)
    }
}

/// Field width for port numbers in an `n`-node graph: `ceil(log2 n)`.
pub fn port_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

pub(crate) const HEADER_BITS: usize = 32;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let b: BitString = "0110\n".parse().unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.to_string(), "0110");
        assert_eq!("".parse::<BitString>().unwrap().len(), 0);
        assert_eq!(
            "01a".parse::<BitString>().unwrap_err(),
            AdviceError::BadCharacter('a')
        );
    }

    #[test]
    fn uint_fields() {
        let mut b = BitString::new();
        b.push_uint(5, 4);
        b.push_uint(1, 1);
        assert_eq!(b.to_string(), "01011");
        let mut r = b.reader();
        assert_eq!(r.read_uint(4), Some(5));
        assert_eq!(r.read_uint(2), None);
        assert_eq!(BitString::binary(12).to_string(), "1100");
        assert_eq!(BitString::binary(0).to_string(), "0");
    }

    #[test]
    fn widths() {
        assert_eq!(
            [1, 2, 3, 4, 5, 8, 9, 108].map(port_width),
            [0, 1, 2, 2, 3, 3, 4, 7]
        );
    }
}
