//! Packed bit buffers shared by the series and matrix layers.

use serde::Serialize;

/// A fixed-length bit vector packed into 64-bit words.
///
/// All bits at positions `>= len` are kept zero so that equality and
/// hashing can work directly on the word storage.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct BitBuf {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitBuf {
    pub fn zeros(len: usize) -> Self {
        BitBuf {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut b = BitBuf::zeros(len);
        for &i in ones {
            b.set(i, true);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1u64 << (i % 64);
        } else {
            *w &= !(1u64 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut m = w;
            while m != 0 {
                out.push(wi * 64 + m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        out
    }

    /// XOR `other` into `self`. Bits of `other` beyond `self.len` are a bug.
    pub fn xor_assign(&mut self, other: &BitBuf) {
        assert!(other.len <= self.len, "xor operand longer than target");
        for (d, s) in self.words.iter_mut().zip(other.words.iter()) {
            *d ^= *s;
        }
    }

    /// XOR `other << shift` into `self`, dropping bits that land at or
    /// beyond `self.len`.
    pub fn xor_shifted(&mut self, other: &BitBuf, shift: usize) {
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let nw = self.words.len();
        for (si, &sw) in other.words.iter().enumerate() {
            if sw == 0 {
                continue;
            }
            let di = si + word_shift;
            if di >= nw {
                break;
            }
            self.words[di] ^= sw << bit_shift;
            if bit_shift != 0 && di + 1 < nw {
                self.words[di + 1] ^= sw >> (64 - bit_shift);
            }
        }
        self.mask_tail();
    }

    /// Truncate or zero-extend to `len` bits.
    pub fn resized(&self, len: usize) -> BitBuf {
        let mut words = self.words.clone();
        words.resize(words_for(len), 0);
        let mut b = BitBuf { len, words };
        b.mask_tail();
        b
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Equality of the first `w` bits (both buffers must hold at least `w`).
    pub fn eq_prefix(&self, other: &BitBuf, w: usize) -> bool {
        assert!(w <= self.len && w <= other.len, "prefix exceeds buffer");
        let full = w / 64;
        if self.words[..full] != other.words[..full] {
            return false;
        }
        let r = w % 64;
        if r == 0 {
            return true;
        }
        let mask = (1u64 << r) - 1;
        (self.words[full] ^ other.words[full]) & mask == 0
    }
}

impl std::fmt::Debug for BitBuf {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(fm, "BitBuf[{s}]")
    }
}
