//! Byte payloads to messages S(0, m2, m3) and back.
//!
//! The payload is padded with 0x80 and then 0x00 up to a multiple of the
//! block size B, the largest B with 256^B <= 3^(2n). Each block is read as a
//! big-endian integer N and written as 2n base-3 digits, least significant
//! first: digits 0..n form m2, digits n..2n form m3.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::scheme::Plaintext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("block {0} encodes a value of 256^B or more")]
    BlockOverflow(usize),
    #[error("padding marker not found")]
    BadPadding,
    #[error("no blocks to decode")]
    Empty,
}

pub const PAD_MARKER: u8 = 0x80;

#[derive(Clone, Debug)]
pub struct BlockCodec {
    field: Field,
    block_bytes: usize,
}

impl BlockCodec {
    pub fn new(field: Field) -> Self {
        let capacity = BigUint::from(3u32).pow(2 * field.degree() as u32);
        let mut b = 0usize;
        while BigUint::from(1u32) << (8 * (b + 1)) <= capacity {
            b += 1;
        }
        BlockCodec {
            field,
            block_bytes: b,
        }
    }

    /// B.
    pub fn block_bytes(&self) -> usize {
        self.block_bytes
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of blocks `encode` produces for a payload of `len` bytes.
    pub fn block_count(&self, len: usize) -> usize {
        len / self.block_bytes + 1
    }

    pub fn encode(&self, payload: &[u8]) -> Vec<Plaintext> {
        let mut padded = payload.to_vec();
        padded.push(PAD_MARKER);
        while !padded.len().is_multiple_of(self.block_bytes) {
            padded.push(0);
        }
        padded
            .chunks(self.block_bytes)
            .map(|chunk| self.encode_block(chunk))
            .collect()
    }

    fn encode_block(&self, chunk: &[u8]) -> Plaintext {
        let n = self.field.degree();
        let mut digits = BigUint::from_bytes_be(chunk).to_radix_le(3);
        digits.resize(2 * n, 0);
        let m2 = self.field.from_trits(&digits[..n]).expect("n digits");
        let m3 = self.field.from_trits(&digits[n..]).expect("n digits");
        Plaintext::new(m2, m3)
    }

    pub fn decode(&self, blocks: &[Plaintext]) -> Result<Vec<u8>, CodecError> {
        if blocks.is_empty() {
            return Err(CodecError::Empty);
        }
        let limit = BigUint::from(1u32) << (8 * self.block_bytes);
        let mut out = Vec::with_capacity(blocks.len() * self.block_bytes);
        for (i, m) in blocks.iter().enumerate() {
            let value = self.block_value(m.m2, m.m3);
            if value >= limit {
                return Err(CodecError::BlockOverflow(i));
            }
            let bytes = if value.is_zero() {
                Vec::new()
            } else {
                value.to_bytes_be()
            };
            out.extend(std::iter::repeat_n(0, self.block_bytes - bytes.len()));
            out.extend(bytes);
        }
        let end = out
            .iter()
            .rposition(|&b| b != 0)
            .ok_or(CodecError::BadPadding)?;
        if out[end] != PAD_MARKER || out.len() - end > self.block_bytes {
            return Err(CodecError::BadPadding);
        }
        out.truncate(end);
        Ok(out)
    }

    fn block_value(&self, m2: FieldElement, m3: FieldElement) -> BigUint {
        let mut digits = self.field.to_trits(m2);
        digits.extend(self.field.to_trits(m3));
        BigUint::from_radix_le(&digits, 3).expect("trits below 3")
    }
}
