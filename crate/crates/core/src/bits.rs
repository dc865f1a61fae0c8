//! Bit strings for serialized algorithm state.

use bitvec::prelude::*;

pub type BitString = BitVec<u64, Lsb0>;

/// Width in bits of an unsigned counter wide enough for any stream this lab runs.
pub const COUNTER_BITS: u32 = 32;

/// `⌈log2 n⌉`: bits needed to name one of `n` values (0 for `n <= 1`).
pub fn bits_for(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// `⌈log2(m + 1)⌉`: bits needed to hold a count in `0..=m`.
pub fn bits_for_count(m: usize) -> u32 {
    bits_for(m + 1)
}

/// Appends `value` as `width` bits, least significant first.
///
/// Panics if `value` does not fit, since that means an encoder is wrong about its own widths.
pub fn push_uint(out: &mut BitString, value: u64, width: u32) {
    assert!(
        width >= 64 || value >> width == 0,
        "value {value} does not fit in {width} bits"
    );
    for i in 0..width {
        out.push((value >> i) & 1 == 1);
    }
}

#[derive(Debug)]
pub struct BitReader<'a> {
    bits: &'a BitSlice<u64, Lsb0>,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        BitReader {
            bits: bits.as_bitslice(),
            pos: 0,
        }
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn read_uint(&mut self, width: u32) -> u64 {
        let mut v = 0u64;
        for i in 0..width {
            if self.bits[self.pos] {
                v |= 1 << i;
            }
            self.pos += 1;
        }
        v
    }

    pub fn read_bool(&mut self) -> bool {
        self.read_uint(1) == 1
    }
}
