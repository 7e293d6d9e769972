use std::collections::HashMap;
use std::hash::Hash;

use crate::advice::BitString;
use crate::graph::gen_oriented_ring;
use crate::sim::{run_strategy, ExplorationOutcome, Move, Observation, RunOptions, Strategy};

use super::HarnessError;

/// First pair `(i, j)`, `i < j`, with equal advice, scanning `j` upward.
pub fn find_advice_collision<I, A, F>(advice: F, instances: &[I]) -> Option<(usize, usize)>
where
    F: Fn(&I) -> A,
    A: Eq + Hash,
{
    let mut seen: HashMap<A, usize> = HashMap::new();
    for (j, instance) in instances.iter().enumerate() {
        let a = advice(instance);
        if let Some(&i) = seen.get(&a) {
            return Some((i, j));
        }
        seen.insert(a, j);
    }
    None
}

/// A `k`-bit advice function for oriented rings: the advice is the
/// smallest `v` with `2^(v+2) >= n`, capped at `2^k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingLadder {
    pub bits: u32,
}

impl RingLadder {
    pub fn new(bits: u32) -> Self {
        assert!((1..=5).contains(&bits), "ring ladder supports 1 to 5 bits");
        Self { bits }
    }

    fn max_value(&self) -> u64 {
        (1 << self.bits) - 1
    }

    /// Ring size the walker covers for advice value `v`.
    pub fn bound(v: u64) -> usize {
        1 << (v + 2)
    }

    pub fn value_for(&self, n: usize) -> u64 {
        (0..=self.max_value())
            .find(|&v| Self::bound(v) >= n)
            .unwrap_or(self.max_value())
    }

    pub fn advice(&self, n: usize) -> BitString {
        let mut bits = BitString::new();
        bits.push_uint(self.value_for(n), self.bits as usize);
        bits
    }

    /// Steps the walker takes on an `n`-ring.
    pub fn steps(&self, n: usize) -> usize {
        Self::bound(self.value_for(n)) - 1
    }

    /// `count` ring sizes, each just beyond what the walker covers on the
    /// previous one: `t_0 = 3`, `t_{i+1} = steps(t_i) + 2`.
    pub fn ladder(&self, count: usize) -> Vec<usize> {
        let mut sizes = vec![3];
        while sizes.len() < count {
            let last = *sizes.last().expect("nonempty");
            sizes.push(self.steps(last) + 2);
        }
        sizes.truncate(count);
        sizes
    }
}

/// Takes port 0 `2^(v+2) - 1` times, `v` read from the advice.
#[derive(Debug, Clone)]
pub struct RingLadderWalker {
    remaining: usize,
}

impl RingLadderWalker {
    pub fn new(advice: &BitString) -> Self {
        let v = advice.reader().read_uint(advice.len()).unwrap_or(0);
        Self {
            remaining: RingLadder::bound(v) - 1,
        }
    }
}

impl Strategy for RingLadderWalker {
    fn next_move(&mut self, _: Observation) -> Move {
        if self.remaining == 0 {
            return Move::Stop;
        }
        self.remaining -= 1;
        Move::Take(0)
    }
}

#[derive(Debug, Clone)]
pub struct PigeonholeReport {
    pub sizes: Vec<usize>,
    pub pair: Option<(usize, usize)>,
    pub advice: Option<BitString>,
    pub smaller: Option<ExplorationOutcome>,
    pub larger: Option<ExplorationOutcome>,
}

impl PigeonholeReport {
    /// The walker explores the smaller ring of the colliding pair but not
    /// the larger one.
    pub fn demonstrates_failure(&self) -> bool {
        matches!((&self.smaller, &self.larger), (Some(s), Some(l)) if s.completed && !l.completed)
    }
}

/// Runs the ring-ladder oracle over `2^bits + 1` rings, finds two rings
/// with the same advice and replays the walker on both.
pub fn pigeonhole_demo(bits: u32) -> Result<PigeonholeReport, HarnessError> {
    let oracle = RingLadder::new(bits);
    let sizes = oracle.ladder((1 << bits) + 1);
    let pair = find_advice_collision(|&n| oracle.advice(n), &sizes);
    let Some((i, j)) = pair else {
        return Ok(PigeonholeReport {
            sizes,
            pair,
            advice: None,
            smaller: None,
            larger: None,
        });
    };
    let advice = oracle.advice(sizes[i]);
    let run = |n: usize| -> Result<ExplorationOutcome, HarnessError> {
        let ring = gen_oriented_ring(n)?;
        Ok(run_strategy(
            &ring,
            0,
            &mut RingLadderWalker::new(&advice),
            RunOptions::default(),
        )?)
    };
    let (small, large) = if sizes[i] <= sizes[j] { (i, j) } else { (j, i) };
    Ok(PigeonholeReport {
        smaller: Some(run(sizes[small])?),
        larger: Some(run(sizes[large])?),
        sizes,
        pair,
        advice: Some(advice),
    })
}
