use crate::error::{Error, Result};

/// Realised bits `(b_0, b_1, ..., b_N)`; coordinate 0 is the center.
///
/// The table index of a vector puts `b_0` in the most significant position:
/// `b_0·2^N + b_1·2^(N-1) + ... + b_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parameter(format!("bit value {b} is not binary")));
        }
        Ok(Self { bits })
    }

    /// Decodes a table index into a vector of `len` bits.
    pub fn from_index(len: usize, index: usize) -> Self {
        let bits = (0..len)
            .map(|k| ((index >> (len - 1 - k)) & 1) as u8)
            .collect();
        Self { bits }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, k: usize) -> u8 {
        self.bits[k]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Every vector of length `len`, in table-index order.
    pub fn all(len: usize) -> impl Iterator<Item = BitVector> {
        (0..1usize << len).map(move |idx| BitVector::from_index(len, idx))
    }
}

/// Bit `k` (coordinate order, 0 = center) of a table index over `len` bits.
#[inline]
pub(crate) fn bit_of(index: usize, len: usize, k: usize) -> u8 {
    ((index >> (len - 1 - k)) & 1) as u8
}
