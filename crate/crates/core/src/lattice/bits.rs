/// Square bit matrix stored row-major in 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitRows {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitRows { n, words, data: vec![0; n * words] }
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1u64 << (c % 64);
    }

    #[inline]
    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn count_row(&self, r: usize) -> u32 {
        self.row(r).iter().map(|w| w.count_ones()).sum()
    }

    pub(crate) fn transpose(&self) -> BitRows {
        let mut t = BitRows::new(self.n);
        for r in 0..self.n {
            for c in iter_bits(self.row(r)) {
                t.set(c, r);
            }
        }
        t
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.data
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// 64-bit FNV-1a, used for structural fingerprints that must be stable
/// across runs and platforms.
#[derive(Clone, Copy)]
pub(crate) struct Fnv(u64);

impl Fnv {
    pub(crate) fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    pub(crate) fn write_u64(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub(crate) fn finish(self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_roundtrip() {
        let mut b = BitRows::new(70);
        b.set(0, 69);
        b.set(65, 3);
        let t = b.transpose();
        assert!(t.get(69, 0) && t.get(3, 65));
        assert_eq!(t.transpose(), b);
        assert_eq!(iter_bits(b.row(0)).collect::<Vec<_>>(), vec![69]);
    }
}
