//! Fixed-width bit rows used for dense adjacency.

use alloc::vec;
use alloc::vec::Vec;

/// Square 0/1 matrix with rows packed into u64 words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn size(&self) -> usize {
        self.n
    }
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of set bits in row i.
    pub fn degree(&self, i: usize) -> usize {
        count(self.row(i))
    }
}

pub fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Indices of set bits in increasing order.
pub fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_iterate() {
        let mut m = BitMatrix::new(130);
        m.set(3, 0);
        m.set(3, 64);
        m.set(3, 129);
        assert!(m.get(3, 64) && !m.get(3, 65));
        assert_eq!(m.degree(3), 3);
        assert_eq!(ones(m.row(3)).collect::<Vec<_>>(), vec![0, 64, 129]);
    }
}
