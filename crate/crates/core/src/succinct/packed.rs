/// Fixed-width unsigned integers packed into 64-bit words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackedInts {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

impl PackedInts {
    /// Packs `values` using the smallest width that holds the maximum.
    pub fn from_values(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::with_width(values, 64 - max.leading_zeros())
    }

    pub fn with_width(values: &[u64], width: u32) -> Self {
        assert!(width <= 64);
        let mut words = vec![0u64; (values.len() * width as usize).div_ceil(64)];
        for (i, &v) in values.iter().enumerate() {
            debug_assert!(width == 64 || v >> width == 0);
            if width == 0 {
                continue;
            }
            let bit = i * width as usize;
            let (w, off) = (bit / 64, bit % 64);
            words[w] |= v << off;
            if off + width as usize > 64 {
                words[w + 1] |= v >> (64 - off);
            }
        }
        Self {
            words,
            width,
            len: values.len(),
        }
    }

    pub fn get(&self, i: usize) -> u64 {
        assert!(i < self.len, "index {i} out of {}", self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, bit % 64);
        let mut v = self.words[w] >> off;
        if off + self.width as usize > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if self.width == 64 {
            v
        } else {
            v & ((1u64 << self.width) - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn space_bits(&self) -> usize {
        self.len * self.width as usize
    }
}
