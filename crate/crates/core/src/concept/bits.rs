use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest supported string; members are packed into one `u64`.
pub const MAX_BITS: usize = 64;

/// A fixed-length binary string, positions numbered `0..len` from the left.
///
/// Position `i` is stored at bit `len - 1 - i` of the packed word, so the
/// derived ordering on equal-length strings is lexicographic on the ASCII
/// form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    /// The all-zero string of length `len`.
    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            len: len as u8,
            bits: 0,
        })
    }

    /// The all-one string of length `len`.
    pub fn ones(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            len: len as u8,
            bits: low_mask(len),
        })
    }

    /// Builds a string from its packed word; position 0 is the most
    /// significant of the `len` low bits. Higher bits must be clear.
    pub fn from_word(len: usize, word: u64) -> Result<Self> {
        check_len(len)?;
        if word & !low_mask(len) != 0 {
            return Err(Error::InvalidBitString(format!(
                "{word:#x} wider than {len} bits"
            )));
        }
        Ok(Self {
            len: len as u8,
            bits: word,
        })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let mut out = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            out.set(i, b);
        }
        Ok(out)
    }

    /// The weight-one string with a 1 at `pos`.
    pub fn unit(len: usize, pos: usize) -> Result<Self> {
        let mut out = Self::zeros(len)?;
        if pos >= len {
            return Err(Error::OutOfRange(format!(
                "position {pos} in a {len}-bit string"
            )));
        }
        out.set(pos, true);
        Ok(out)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn word(&self) -> u64 {
        self.bits
    }

    /// Bit at position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> (self.len() - 1 - i) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len());
        let m = 1u64 << (self.len() - 1 - i);
        if value {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    #[inline]
    pub fn with(mut self, i: usize, value: bool) -> Self {
        self.set(i, value);
        self
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Bitwise XOR; both strings must have the same length.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Self {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let len = self.len() + other.len();
        check_len(len)?;
        Ok(Self {
            len: len as u8,
            bits: (self.bits << other.len()) | other.bits,
        })
    }

    /// The substring of `width` bits starting at `start`.
    pub fn slice(&self, start: usize, width: usize) -> Result<Self> {
        if start + width > self.len() {
            return Err(Error::OutOfRange(format!(
                "slice {start}..{} of a {}-bit string",
                start + width,
                self.len()
            )));
        }
        let shift = self.len() - start - width;
        Self::from_word(width, (self.bits >> shift) & low_mask(width))
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 || len > MAX_BITS {
        return Err(Error::OutOfRange(format!(
            "string length {len} not in 1..={MAX_BITS}"
        )));
    }
    Ok(())
}

fn low_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_BITS {
            return Err(Error::InvalidBitString(s.to_string()));
        }
        let mut out = Self::zeros(s.len())?;
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => out.set(i, true),
                _ => return Err(Error::InvalidBitString(s.to_string())),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing literals in tests and examples.
///
/// Panics on malformed input.
pub fn bits(s: &str) -> BitString {
    s.parse().expect("valid bit string literal")
}
