//! Tame logarithmic signatures over GF(3^n), random covers over U(q), and
//! the mixed-radix indices that select one row per block.
//!
//! A signature of type (r_1, ..., r_s) with r_i = 3^(h_i) assigns block i
//! the trit positions `offset_i .. offset_i + h_i`, where offset_i is the sum
//! of the earlier widths. Row j of block i carries the little-endian base-3
//! digits of j at those positions, arbitrary noise below them and zeros above
//! them. Subtracting rows from the last block down to the first therefore
//! peels one block's digits at a time.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::group::{Group, GroupElement};

/// Largest block radix accepted (3^12 rows per block).
pub const MAX_RADIX: u32 = 531_441;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogSigError {
    #[error("radix {0} is not a power of 3 that is at least 3")]
    BadRadix(u64),
    #[error("signature type is empty")]
    EmptyType,
    #[error("type covers 3^{got} elements but the field has 3^{expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("expected {expected} blocks, got {got}")]
    BlockCount { expected: usize, got: usize },
    #[error("block {block} has {got} rows, type requires {expected}")]
    BlockSize {
        block: usize,
        expected: usize,
        got: usize,
    },
    #[error("block {block} row {row} has nonzero trits above its block positions")]
    NonzeroAbove { block: usize, row: usize },
    #[error("block {block} row {row} repeats a block index")]
    DuplicateIndex { block: usize, row: usize },
    #[error("index out of range for this type")]
    OutOfRange,
    #[error("no row of block {block} matches the residue")]
    NoMatchingRow { block: usize },
    #[error("residue is nonzero after the first block")]
    ResidueNonzero,
    #[error("not a permutation of the block rows")]
    BadPermutation,
    #[error("block {block} row {row} has a nonzero a-coordinate in an a = 0 cover")]
    NonzeroA { block: usize, row: usize },
}

/// Block sizes (r_1, ..., r_s), each a power of three.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignatureType {
    radices: Vec<u32>,
    widths: Vec<usize>,
    offsets: Vec<usize>,
}

impl SignatureType {
    pub fn new(radices: &[u64]) -> Result<Self, LogSigError> {
        if radices.is_empty() {
            return Err(LogSigError::EmptyType);
        }
        let mut widths = Vec::with_capacity(radices.len());
        let mut offsets = Vec::with_capacity(radices.len());
        let mut offset = 0;
        for &r in radices {
            let h = log3_exact(r).filter(|&h| h >= 1 && r <= MAX_RADIX as u64);
            let h = h.ok_or(LogSigError::BadRadix(r))?;
            offsets.push(offset);
            widths.push(h);
            offset += h;
        }
        Ok(SignatureType {
            radices: radices.iter().map(|&r| r as u32).collect(),
            widths,
            offsets,
        })
    }

    /// Checks that the type multiplies to q = 3^n.
    pub fn for_degree(radices: &[u64], n: usize) -> Result<Self, LogSigError> {
        let t = Self::new(radices)?;
        t.check_degree(n)?;
        Ok(t)
    }

    pub fn check_degree(&self, n: usize) -> Result<(), LogSigError> {
        if self.total_width() != n {
            return Err(LogSigError::DegreeMismatch {
                expected: n,
                got: self.total_width(),
            });
        }
        Ok(())
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// Number of blocks s.
    pub fn len(&self) -> usize {
        self.radices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radices.is_empty()
    }

    /// h_i with r_i = 3^(h_i).
    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// sum h_i, i.e. log_3 of the number of indices.
    pub fn total_width(&self) -> usize {
        self.widths.iter().sum()
    }

    /// Total number of rows, sum r_i.
    pub fn row_count(&self) -> usize {
        self.radices.iter().map(|&r| r as usize).sum()
    }

    /// Number of indices prod r_i, when it fits in a `u64`.
    pub fn index_count(&self) -> Option<u64> {
        3u64.checked_pow(self.total_width() as u32)
    }

    /// Trit positions owned by block i.
    pub fn block_mask(&self, i: usize) -> u128 {
        ((1u128 << self.widths[i]) - 1) << self.offsets[i]
    }

    /// Trit positions above block i.
    pub fn above_mask(&self, i: usize) -> u128 {
        let end = self.offsets[i] + self.widths[i];
        let all = (1u128 << self.total_width()) - 1;
        all & !((1u128 << end) - 1)
    }

    /// Trit positions below block i.
    pub fn below_mask(&self, i: usize) -> u128 {
        (1u128 << self.offsets[i]) - 1
    }

    /// Canonical row index read from the block-i positions of `v`.
    pub fn block_digit(&self, i: usize, v: &FieldElement) -> u32 {
        let off = self.offsets[i];
        (0..self.widths[i])
            .rev()
            .fold(0u32, |acc, k| acc * 3 + v.trit(off + k) as u32)
    }

    /// Writes the mixed-radix digits of `r` into `out`; `r` must be in range.
    pub fn digits_of_u64(&self, mut r: u64, out: &mut [u32]) {
        for (d, &radix) in out.iter_mut().zip(&self.radices) {
            *d = (r % radix as u64) as u32;
            r /= radix as u64;
        }
    }

    pub fn value_of_digits(&self, digits: &[u32]) -> BigUint {
        digits
            .iter()
            .zip(&self.radices)
            .rev()
            .fold(BigUint::zero(), |acc, (&d, &r)| acc * r + d)
    }
}

fn log3_exact(mut r: u64) -> Option<usize> {
    if r == 0 {
        return None;
    }
    let mut h = 0;
    while r.is_multiple_of(3) {
        r /= 3;
        h += 1;
    }
    (r == 1).then_some(h)
}

/// A mixed-radix index R = sum R_i * prod_{l<i} r_l, kept in both forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorIndex {
    digits: Vec<u32>,
    value: BigUint,
}

impl FactorIndex {
    /// Mixed-radix decomposition of `r` for the given type.
    pub fn decode(t: &SignatureType, r: &BigUint) -> Result<Self, LogSigError> {
        let mut rest = r.clone();
        let mut digits = Vec::with_capacity(t.len());
        for &radix in t.radices() {
            let d = (&rest % radix).to_u32().expect("remainder below radix");
            digits.push(d);
            rest /= radix;
        }
        if !rest.is_zero() {
            return Err(LogSigError::OutOfRange);
        }
        Ok(FactorIndex {
            digits,
            value: r.clone(),
        })
    }

    pub fn from_u64(t: &SignatureType, r: u64) -> Result<Self, LogSigError> {
        Self::decode(t, &BigUint::from(r))
    }

    pub fn from_digits(t: &SignatureType, digits: &[u32]) -> Result<Self, LogSigError> {
        if digits.len() != t.len() || digits.iter().zip(t.radices()).any(|(&d, &r)| d >= r) {
            return Err(LogSigError::OutOfRange);
        }
        Ok(FactorIndex {
            digits: digits.to_vec(),
            value: t.value_of_digits(digits),
        })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    fn check(&self, t: &SignatureType) -> Result<(), LogSigError> {
        if self.digits.len() != t.len()
            || self.digits.iter().zip(t.radices()).any(|(&d, &r)| d >= r)
        {
            return Err(LogSigError::OutOfRange);
        }
        Ok(())
    }
}

/// A tame logarithmic signature: s blocks of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSignature {
    sig_type: SignatureType,
    blocks: Vec<Vec<FieldElement>>,
    /// canonical index -> storage position, per block
    lookup: Vec<Vec<u32>>,
}

impl LogSignature {
    /// Validates the tame structure: in every block the block-position
    /// digits of the rows are pairwise distinct and all higher trits are 0.
    pub fn new(
        field: &Field,
        sig_type: SignatureType,
        blocks: Vec<Vec<FieldElement>>,
    ) -> Result<Self, LogSigError> {
        sig_type.check_degree(field.degree())?;
        if blocks.len() != sig_type.len() {
            return Err(LogSigError::BlockCount {
                expected: sig_type.len(),
                got: blocks.len(),
            });
        }
        let mut lookup = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.iter().enumerate() {
            let r = sig_type.radices()[i] as usize;
            if block.len() != r {
                return Err(LogSigError::BlockSize {
                    block: i,
                    expected: r,
                    got: block.len(),
                });
            }
            let above = sig_type.above_mask(i) | !field.mask();
            let mut slots = vec![u32::MAX; r];
            for (row, v) in block.iter().enumerate() {
                if v.support() & above != 0 {
                    return Err(LogSigError::NonzeroAbove { block: i, row });
                }
                let d = sig_type.block_digit(i, v) as usize;
                if slots[d] != u32::MAX {
                    return Err(LogSigError::DuplicateIndex { block: i, row });
                }
                slots[d] = row as u32;
            }
            lookup.push(slots);
        }
        Ok(LogSignature {
            sig_type,
            blocks,
            lookup,
        })
    }

    /// Random tame signature: canonical digits, uniform noise strictly below
    /// each block's positions (none for block 1), zeros above.
    pub fn generate<R: Rng + ?Sized>(field: &Field, sig_type: &SignatureType, rng: &mut R) -> Self {
        sig_type
            .check_degree(field.degree())
            .expect("type must match the field");
        let mut blocks = Vec::with_capacity(sig_type.len());
        for i in 0..sig_type.len() {
            let off = sig_type.offsets()[i];
            let width = sig_type.widths()[i];
            let rows = (0..sig_type.radices()[i])
                .map(|j| {
                    let mut trits = vec![0u8; field.degree()];
                    for t in trits.iter_mut().take(off) {
                        *t = rng.random_range(0..3u8);
                    }
                    let mut d = j;
                    for k in 0..width {
                        trits[off + k] = (d % 3) as u8;
                        d /= 3;
                    }
                    field
                        .from_trits(&trits)
                        .expect("trit vector has field length")
                })
                .collect();
            blocks.push(rows);
        }
        LogSignature::new(field, sig_type.clone(), blocks).expect("generated signature is tame")
    }

    pub fn sig_type(&self) -> &SignatureType {
        &self.sig_type
    }

    /// Rows of block i in storage order.
    pub fn blocks(&self) -> &[Vec<FieldElement>] {
        &self.blocks
    }

    /// Row of block i whose canonical index is j.
    #[inline]
    pub fn row(&self, i: usize, j: u32) -> FieldElement {
        self.blocks[i][self.lookup[i][j as usize] as usize]
    }

    /// sum_i b_{i, R_i}.
    pub fn evaluate(&self, r: &FactorIndex) -> Result<FieldElement, LogSigError> {
        r.check(&self.sig_type)?;
        Ok(self.evaluate_digits(r.digits()))
    }

    /// Unchecked evaluation on raw digits.
    pub fn evaluate_digits(&self, digits: &[u32]) -> FieldElement {
        digits
            .iter()
            .enumerate()
            .fold(FieldElement::ZERO, |acc, (i, &d)| acc + self.row(i, d))
    }

    pub fn factorize(&self, v: FieldElement) -> Result<FactorIndex, LogSigError> {
        self.factorize_traced(v).map(|(r, _)| r)
    }

    /// Peels blocks from last to first. Also returns the running residue
    /// after each subtraction.
    pub fn factorize_traced(
        &self,
        v: FieldElement,
    ) -> Result<(FactorIndex, Vec<FieldElement>), LogSigError> {
        let s = self.sig_type.len();
        let mut digits = vec![0u32; s];
        let mut residue = v;
        let mut trace = Vec::with_capacity(s);
        for i in (0..s).rev() {
            if residue.support() & self.sig_type.above_mask(i) != 0 {
                return Err(LogSigError::NoMatchingRow { block: i });
            }
            let d = self.sig_type.block_digit(i, &residue);
            let pos = self.lookup[i][d as usize];
            if pos == u32::MAX {
                return Err(LogSigError::NoMatchingRow { block: i });
            }
            digits[i] = d;
            residue -= self.blocks[i][pos as usize];
            trace.push(residue);
        }
        if !residue.is_zero() {
            return Err(LogSigError::ResidueNonzero);
        }
        let index = FactorIndex {
            value: self.sig_type.value_of_digits(&digits),
            digits,
        };
        Ok((index, trace))
    }

    /// Reorders block i's storage: new row k is old row `perm[k]`.
    pub fn permute_block_rows(&self, i: usize, perm: &[usize]) -> Result<Self, LogSigError> {
        let block = self.blocks.get(i).ok_or(LogSigError::BadPermutation)?;
        if perm.len() != block.len() {
            return Err(LogSigError::BadPermutation);
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(LogSigError::BadPermutation);
            }
        }
        let mut out = self.clone();
        out.blocks[i] = perm.iter().map(|&p| block[p]).collect();
        for (k, row) in out.blocks[i].iter().enumerate() {
            let d = self.sig_type.block_digit(i, row) as usize;
            out.lookup[i][d] = k as u32;
        }
        Ok(out)
    }

    /// Applies an independent random row permutation to every block.
    pub fn shuffled<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut out = self.clone();
        for i in 0..self.blocks.len() {
            let mut perm: Vec<usize> = (0..self.blocks[i].len()).collect();
            perm.shuffle(rng);
            out = out
                .permute_block_rows(i, &perm)
                .expect("shuffle is a permutation");
        }
        out
    }
}

/// Blocks of group elements sharing a signature type: the public covers
/// alpha_k and the gamma_k arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    sig_type: SignatureType,
    blocks: Vec<Vec<GroupElement>>,
    zero_a: bool,
}

/// Position of a zero coordinate inside a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroEntry {
    pub block: usize,
    pub row: usize,
    /// 0 = a, 1 = b, 2 = c
    pub coordinate: usize,
}

impl Cover {
    /// Checks block sizes and, when `zero_a` is set, that every row lies in
    /// U1(q). Zero coordinates elsewhere are accepted here and reported by
    /// [`Cover::zero_entries`].
    pub fn new(
        sig_type: SignatureType,
        blocks: Vec<Vec<GroupElement>>,
        zero_a: bool,
    ) -> Result<Self, LogSigError> {
        if blocks.len() != sig_type.len() {
            return Err(LogSigError::BlockCount {
                expected: sig_type.len(),
                got: blocks.len(),
            });
        }
        for (i, block) in blocks.iter().enumerate() {
            let r = sig_type.radices()[i] as usize;
            if block.len() != r {
                return Err(LogSigError::BlockSize {
                    block: i,
                    expected: r,
                    got: block.len(),
                });
            }
            if zero_a {
                if let Some(row) = block.iter().position(|x| !x.a.is_zero()) {
                    return Err(LogSigError::NonzeroA { block: i, row });
                }
            }
        }
        Ok(Cover {
            sig_type,
            blocks,
            zero_a,
        })
    }

    /// Uniform rows with every coordinate nonzero, except a = 0 throughout
    /// when `zero_a` is set.
    pub fn generate<R: Rng + ?Sized>(
        group: &Group,
        sig_type: &SignatureType,
        rng: &mut R,
        zero_a: bool,
    ) -> Self {
        let f = group.field();
        let blocks = sig_type
            .radices()
            .iter()
            .map(|&r| {
                (0..r)
                    .map(|_| GroupElement {
                        a: if zero_a {
                            FieldElement::ZERO
                        } else {
                            f.random(rng, true)
                        },
                        b: f.random(rng, true),
                        c: f.random(rng, true),
                    })
                    .collect()
            })
            .collect();
        Cover {
            sig_type: sig_type.clone(),
            blocks,
            zero_a,
        }
    }

    pub fn sig_type(&self) -> &SignatureType {
        &self.sig_type
    }

    pub fn blocks(&self) -> &[Vec<GroupElement>] {
        &self.blocks
    }

    pub fn zero_a(&self) -> bool {
        self.zero_a
    }

    #[inline]
    pub fn row(&self, i: usize, j: u32) -> &GroupElement {
        &self.blocks[i][j as usize]
    }

    /// Coordinates that are zero but should not be (the a-coordinate of an
    /// a = 0 cover is exempt).
    pub fn zero_entries(&self) -> Vec<ZeroEntry> {
        let mut out = Vec::new();
        for (i, block) in self.blocks.iter().enumerate() {
            for (j, x) in block.iter().enumerate() {
                for (k, v) in [x.a, x.b, x.c].iter().enumerate() {
                    if v.is_zero() && !(k == 0 && self.zero_a) {
                        out.push(ZeroEntry {
                            block: i,
                            row: j,
                            coordinate: k,
                        });
                    }
                }
            }
        }
        out
    }

    /// Ordered product a_{1,R_1} a_{2,R_2} ... a_{s,R_s}.
    pub fn evaluate(&self, group: &Group, r: &FactorIndex) -> Result<GroupElement, LogSigError> {
        r.check(&self.sig_type)?;
        Ok(self.evaluate_digits(group, r.digits()))
    }

    pub fn evaluate_digits(&self, group: &Group, digits: &[u32]) -> GroupElement {
        digits
            .iter()
            .enumerate()
            .fold(GroupElement::IDENTITY, |acc, (i, &d)| {
                group.mul(&acc, self.row(i, d))
            })
    }

    /// Evaluation at every index 0..prod r_i, in index order.
    pub fn evaluate_all(&self, group: &Group) -> Vec<GroupElement> {
        let count = self
            .sig_type
            .index_count()
            .expect("index space fits in u64") as usize;
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0u32; self.sig_type.len()];
        for r in 0..count as u64 {
            self.sig_type.digits_of_u64(r, &mut digits);
            out.push(self.evaluate_digits(group, &digits));
        }
        out
    }
}
