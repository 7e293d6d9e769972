//! Triple-logarithmic size advice.
//!
//! The oracle takes the binary representation `X` of `floor(log2 log2 n)`
//! and drops its last `c + 1` bits. The agent pads the prefix back with
//! `c + 1` ones, reads the result as `n1`, and uses `N = 2^(2^(n1 + 1))` as
//! an upper bound on the graph size.
//!
//! `N` is astronomically large for any non-trivial prefix, so it is carried
//! symbolically by its double exponent.

use super::{AdviceError, BitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SizeAdviceParams {
    pub c: u32,
}

/// `floor(log2 x)` for `x >= 1`.
pub fn floor_log2(x: u64) -> u64 {
    assert!(x > 0, "log of zero");
    63 - u64::from(x.leading_zeros())
}

pub fn encode_size_advice(n: u64, params: SizeAdviceParams) -> Result<BitString, AdviceError> {
    if n < 2 {
        return Err(AdviceError::SizeTooSmall(n));
    }
    Ok(encode_size_advice_for_log2(floor_log2(n), params))
}

/// Same as [`encode_size_advice`] for a graph size given by
/// `floor(log2 n) >= 1`, which reaches sizes far beyond `u64`.
///
/// `floor(log2 log2 n) = floor(log2 floor(log2 n))`, since no power of two
/// falls strictly between consecutive integers.
pub fn encode_size_advice_for_log2(floor_log2_n: u64, params: SizeAdviceParams) -> BitString {
    assert!(floor_log2_n >= 1, "graph size below 2");
    let mut x = BitString::binary(floor_log2(floor_log2_n));
    let keep = x.len().saturating_sub(params.c as usize + 1);
    x.truncate(keep);
    x
}

/// The decoded bound `N = 2^(2^(n1 + 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeBound {
    n1: u64,
}

impl SizeBound {
    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// `log2 log2 N = n1 + 1`.
    pub fn double_exponent(&self) -> u64 {
        self.n1.saturating_add(1)
    }

    /// `log2 N`, when it fits in a `u64`.
    pub fn log2(&self) -> Option<u64> {
        let e = self.double_exponent();
        (e < 64).then(|| 1u64 << e)
    }

    /// `N` itself, when it fits in a `u128`.
    pub fn value(&self) -> Option<u128> {
        self.log2()
            .filter(|&l| l < 128)
            .map(|l| 1u128 << l)
    }

    /// Whether `n <= N`.
    pub fn covers(&self, n: u64) -> bool {
        match self.value() {
            Some(bound) => u128::from(n) <= bound,
            None => true,
        }
    }

    /// `N` clamped into `usize`.
    pub fn saturating_usize(&self) -> usize {
        self.value()
            .map_or(usize::MAX, |v| usize::try_from(v).unwrap_or(usize::MAX))
    }
}

/// Total: any bit string decodes to some bound.
pub fn decode_size_bound(s: &BitString, params: SizeAdviceParams) -> SizeBound {
    let mut n1: u64 = 0;
    let padded = s.bits().iter().copied().chain((0..=params.c).map(|_| true));
    for bit in padded {
        n1 = n1.saturating_mul(2).saturating_add(u64::from(bit));
    }
    SizeBound { n1 }
}
