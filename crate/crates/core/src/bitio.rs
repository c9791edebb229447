//! MSB-first bit packing.
//!
//! Bits are appended to each byte starting at its most significant position.
//! [`BitCursor::peek`] may look past the logical end of the stream; the
//! missing positions read as zero so a decoder can always peek a full
//! `max_len` window near the tail of a payload.

use crate::error::{Error, Result};

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buffer: Vec<u8>,
    bit_pos: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the `width` low-order bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) -> Result<()> {
        if width > 64 {
            return Err(Error::Contract(format!("write width {width} exceeds 64")));
        }
        if width < 64 && value >> width != 0 {
            return Err(Error::Contract(format!(
                "value {value:#x} does not fit in {width} bits"
            )));
        }
        let mut remaining = width;
        while remaining > 0 {
            let used = (self.bit_pos % 8) as u32;
            if used == 0 {
                self.buffer.push(0);
            }
            let free = 8 - used;
            let take = free.min(remaining);
            let chunk = ((value >> (remaining - take)) & ((1u64 << take) - 1)) as u8;
            let last = self.buffer.last_mut().expect("byte pushed above");
            *last |= chunk << (free - take);
            remaining -= take;
            self.bit_pos += take as u64;
        }
        Ok(())
    }

    /// Number of payload bits written so far.
    pub fn bit_len(&self) -> u64 {
        self.bit_pos
    }

    /// Returns the bytes; the unused low bits of the final byte are zero.
    pub fn finish(self) -> Vec<u8> {
        self.buffer
    }
}

/// Reading position over an MSB-first byte sequence.
#[derive(Debug, Clone)]
pub struct BitCursor<'a> {
    source: &'a [u8],
    bit_offset: u64,
    logical_len: u64,
}

impl<'a> BitCursor<'a> {
    /// Cursor over every bit of `source`.
    pub fn new(source: &'a [u8]) -> Self {
        Self::with_len(source, source.len() as u64 * 8).expect("full length is in range")
    }

    /// Cursor over the first `logical_len` bits of `source`.
    pub fn with_len(source: &'a [u8], logical_len: u64) -> Result<Self> {
        if logical_len > source.len() as u64 * 8 {
            return Err(Error::Contract(format!(
                "logical length {logical_len} exceeds {} available bits",
                source.len() * 8
            )));
        }
        Ok(Self {
            source,
            bit_offset: 0,
            logical_len,
        })
    }

    pub fn position(&self) -> u64 {
        self.bit_offset
    }

    pub fn len(&self) -> u64 {
        self.logical_len
    }

    pub fn is_empty(&self) -> bool {
        self.logical_len == 0
    }

    pub fn remaining(&self) -> u64 {
        self.logical_len - self.bit_offset
    }

    /// The next `width` bits without advancing. Positions at or beyond the
    /// logical end read as zero.
    pub fn peek(&self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::Contract(format!("peek width {width} exceeds 64")));
        }
        Ok(self.gather(width))
    }

    /// Consumes and returns the next `width` bits.
    pub fn read(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::Contract(format!("read width {width} exceeds 64")));
        }
        if width as u64 > self.remaining() {
            return Err(Error::EndOfStream {
                offset: self.bit_offset,
                need: width,
                len: self.logical_len,
            });
        }
        let value = self.gather(width);
        self.bit_offset += width as u64;
        Ok(value)
    }

    fn gather(&self, width: u32) -> u64 {
        if width == 0 {
            return 0;
        }
        // Up to 9 source bytes cover any 64-bit window.
        let first_byte = (self.bit_offset / 8) as usize;
        let skip = (self.bit_offset % 8) as u32;
        let mut window: u128 = 0;
        for i in 0..9 {
            let byte = self.source.get(first_byte + i).copied().unwrap_or(0);
            window = (window << 8) | byte as u128;
        }
        // Left-align the wanted bits at the top of the 72-bit window.
        let value = ((window << skip) >> (72 - width)) as u64 & mask(width);
        let available = self.remaining();
        if (width as u64) <= available {
            value
        } else {
            let phantom = width - available as u32;
            if phantom >= 64 {
                0
            } else {
                (value >> phantom) << phantom
            }
        }
    }
}

fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}
