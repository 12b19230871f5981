//! Arithmetic in GF(3^n) = GF(3)[x]/(g).
//!
//! Elements are stored bit-sliced: one `u128` plane marks the positions whose
//! coefficient is 1, a second plane marks the positions whose coefficient
//! is 2. Addition, subtraction and negation are a handful of word operations
//! and need no field parameters; multiplication and the Frobenius maps go
//! through [`Field`], which owns the modulus and precomputed tables.
//!
//! The external representation is a trit vector in ascending degree, so the
//! trit string `"01000"` is the element `x`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use rand::Rng;
use thiserror::Error;

use crate::poly::Poly3;

/// Largest supported extension degree (one bit plane per `u128`).
pub const MAX_DEGREE: usize = 127;

/// Largest degree for which the generator is verified and a discrete-log
/// table may be built.
pub const DLOG_MAX_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} is even; the group needs q = 3^(2m+1)")]
    EvenDegree(usize),
    #[error("extension degree {0} outside supported range 3..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("modulus must have {expected} trits, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NonMonic,
    #[error("modulus is reducible over GF(3)")]
    NotIrreducible,
    #[error("generator is not primitive")]
    NotPrimitive,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("discrete log of zero")]
    ZeroDlog,
    #[error("field GF(3^{0}) is too large for a discrete-log table")]
    FieldTooLargeForDlog(usize),
    #[error("element does not belong to this field")]
    ParamsMismatch,
    #[error("invalid trit {0:?}")]
    BadTrit(char),
    #[error("trit string has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
}

/// An element of GF(3^n), bit-sliced.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ones: u128,
    twos: u128,
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { ones: 0, twos: 0 };
    pub const ONE: FieldElement = FieldElement { ones: 1, twos: 0 };

    #[inline]
    pub fn is_zero(&self) -> bool {
        (self.ones | self.twos) == 0
    }

    /// Coefficient of `x^i`.
    #[inline]
    pub fn trit(&self, i: usize) -> u8 {
        ((self.ones >> i) & 1) as u8 | ((((self.twos >> i) & 1) as u8) << 1)
    }

    #[inline]
    fn set_trit(&mut self, i: usize, v: u8) {
        let bit = 1u128 << i;
        self.ones &= !bit;
        self.twos &= !bit;
        match v {
            1 => self.ones |= bit,
            2 => self.twos |= bit,
            _ => {}
        }
    }

    /// Mask of the positions that carry a nonzero coefficient.
    #[inline]
    pub fn support(&self) -> u128 {
        self.ones | self.twos
    }

    /// Keeps only the positions selected by `mask`.
    #[inline]
    pub fn masked(&self, mask: u128) -> FieldElement {
        FieldElement {
            ones: self.ones & mask,
            twos: self.twos & mask,
        }
    }

    /// Multiplies by a GF(3) scalar.
    #[inline]
    pub fn scale(self, k: u8) -> FieldElement {
        match k % 3 {
            0 => FieldElement::ZERO,
            1 => self,
            _ => -self,
        }
    }

    #[inline]
    fn shl(self, by: usize) -> FieldElement {
        FieldElement {
            ones: self.ones << by,
            twos: self.twos << by,
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, y: FieldElement) -> FieldElement {
        let t = (self.ones | y.twos) ^ (self.twos | y.ones);
        FieldElement {
            ones: (self.twos | y.twos) ^ t,
            twos: (self.ones | y.ones) ^ t,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        FieldElement {
            ones: self.twos,
            twos: self.ones,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, y: FieldElement) -> FieldElement {
        self + (-y)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, y: FieldElement) {
        *self = *self + y;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, y: FieldElement) {
        *self = *self - y;
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = 128 - self.support().leading_zeros() as usize;
        let s: String = (0..top.max(1))
            .map(|i| char::from(b'0' + self.trit(i)))
            .collect();
        write!(f, "Fe({s})")
    }
}

/// Whether the generator has been proven to have order 3^n - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Verified,
    Unverified,
}

/// Validated parameters of GF(3^n) together with the lookup tables the
/// group law needs.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    degree: usize,
    m: usize,
    modulus: Vec<u8>,
    mask: u128,
    /// x^n mod g.
    reduction: FieldElement,
    /// x^(3i) mod g, the cube map on the monomial basis.
    cube_images: Vec<FieldElement>,
    /// x^(i * 3^(m+1)) mod g.
    frob_t_images: Vec<FieldElement>,
    generator: FieldElement,
    primitivity: Primitivity,
    dlog: OnceLock<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("degree", &self.inner.degree)
            .field("modulus", &self.modulus_string())
            .field("primitivity", &self.inner.primitivity)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.modulus == other.inner.modulus
                && self.inner.generator == other.inner.generator)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(3^n) from a monic modulus given as `n + 1` trits in
    /// ascending degree. The generator is the residue class of `x`.
    pub fn new(n: usize, modulus: &[u8]) -> Result<Field, FieldError> {
        Self::build(n, modulus, None)
    }

    /// Like [`Field::new`] but with an explicit generator for the
    /// `primitive_power` / `dlog` pair.
    pub fn with_generator(n: usize, modulus: &[u8], generator: &[u8]) -> Result<Field, FieldError> {
        Self::build(n, modulus, Some(generator))
    }

    fn build(n: usize, modulus: &[u8], generator: Option<&[u8]>) -> Result<Field, FieldError> {
        if n.is_multiple_of(2) {
            return Err(FieldError::EvenDegree(n));
        }
        if !(3..=MAX_DEGREE).contains(&n) {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if modulus.len() != n + 1 {
            return Err(FieldError::ModulusLength {
                expected: n + 1,
                got: modulus.len(),
            });
        }
        if let Some(&bad) = modulus.iter().find(|&&t| t > 2) {
            return Err(FieldError::BadTrit(char::from(b'0' + bad.min(9))));
        }
        if modulus[n] != 1 {
            return Err(FieldError::NonMonic);
        }

        let mut reduction = FieldElement::ZERO;
        for (i, &c) in modulus[..n].iter().enumerate() {
            reduction.set_trit(i, (3 - c) % 3);
        }
        let mask = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let mut inner = FieldInner {
            degree: n,
            m: (n - 1) / 2,
            modulus: modulus.to_vec(),
            mask,
            reduction,
            cube_images: Vec::new(),
            frob_t_images: Vec::new(),
            generator: FieldElement::ZERO,
            primitivity: Primitivity::Unverified,
            dlog: OnceLock::new(),
        };

        if !is_irreducible(&inner) {
            return Err(FieldError::NotIrreducible);
        }

        let mut x = FieldElement::ZERO;
        x.set_trit(1, 1);
        inner.cube_images = (0..n)
            .map(|i| {
                let xi = raw_pow(&inner, x, i as u128);
                raw_mul(&inner, raw_mul(&inner, xi, xi), xi)
            })
            .collect();
        let mut frob = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = FieldElement::ZERO;
            v.set_trit(i, 1);
            for _ in 0..=inner.m {
                v = apply_linear(&inner.cube_images, v);
            }
            frob.push(v);
        }
        inner.frob_t_images = frob;

        inner.generator = match generator {
            None => x,
            Some(trits) => element_from_trits(n, trits)?,
        };
        if n <= DLOG_MAX_DEGREE {
            if !has_full_order(&inner, inner.generator) {
                return Err(FieldError::NotPrimitive);
            }
            inner.primitivity = Primitivity::Verified;
        }

        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    /// Parses a modulus written as `n + 1` trit characters, ascending degree.
    pub fn from_modulus_str(s: &str) -> Result<Field, FieldError> {
        let trits = parse_trits(s)?;
        let n = trits.len().saturating_sub(1);
        Field::new(n, &trits)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// `m` with `n = 2m + 1`.
    #[inline]
    pub fn m(&self) -> usize {
        self.inner.m
    }

    /// The "3t" exponent 3^(m+1), t = 3^m.
    pub fn t_exponent(&self) -> u128 {
        3u128.pow(self.inner.m as u32 + 1)
    }

    /// q = 3^n when it fits in a `u128` (n <= 80).
    pub fn order(&self) -> Option<u128> {
        3u128.checked_pow(self.inner.degree as u32)
    }

    /// Order of the multiplicative group, when representable.
    pub fn multiplicative_order(&self) -> Option<u128> {
        self.order().map(|q| q - 1)
    }

    pub fn modulus(&self) -> &[u8] {
        &self.inner.modulus
    }

    pub fn modulus_string(&self) -> String {
        self.inner
            .modulus
            .iter()
            .map(|&t| char::from(b'0' + t))
            .collect()
    }

    pub fn primitivity(&self) -> Primitivity {
        self.inner.primitivity
    }

    pub fn generator(&self) -> FieldElement {
        self.inner.generator
    }

    /// Mask of the `n` valid trit positions.
    #[inline]
    pub fn mask(&self) -> u128 {
        self.inner.mask
    }

    /// Rejects elements with coefficients beyond degree n - 1.
    pub fn check(&self, x: FieldElement) -> Result<(), FieldError> {
        if x.support() & !self.inner.mask != 0 {
            Err(FieldError::ParamsMismatch)
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        raw_mul(&self.inner, x, y)
    }

    #[inline]
    pub fn square(&self, x: FieldElement) -> FieldElement {
        raw_mul(&self.inner, x, x)
    }

    /// x^3, through the precomputed linear map.
    #[inline]
    pub fn cube(&self, x: FieldElement) -> FieldElement {
        apply_linear(&self.inner.cube_images, x)
    }

    /// x^(3^e).
    pub fn frobenius_pow(&self, x: FieldElement, e: u64) -> FieldElement {
        let e = (e % self.inner.degree as u64) as usize;
        if e == self.inner.m + 1 {
            return self.frob_3t(x);
        }
        (0..e).fold(x, |acc, _| self.cube(acc))
    }

    /// x^(3t) = x^(3^(m+1)), the twist in the group law.
    #[inline]
    pub fn frob_3t(&self, x: FieldElement) -> FieldElement {
        apply_linear(&self.inner.frob_t_images, x)
    }

    pub fn pow(&self, x: FieldElement, e: u128) -> FieldElement {
        raw_pow(&self.inner, x, e)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let g = Poly3::new(self.inner.modulus.clone());
        let a = Poly3::new(self.to_trits(x));
        let (d, s) = a.ext_gcd_left(&g);
        debug_assert_eq!(d, Poly3::one());
        Ok(element_from_trits(self.inner.degree, s.rem(&g).coeffs())
            .expect("reduced inverse fits the field"))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// generator^k, with k reduced modulo 3^n - 1 where representable.
    pub fn primitive_power(&self, k: u128) -> FieldElement {
        let k = match self.multiplicative_order() {
            Some(ord) => k % ord,
            None => k,
        };
        self.pow(self.inner.generator, k)
    }

    /// Discrete log to the generator base, via a table built on first use.
    pub fn dlog(&self, x: FieldElement) -> Result<u64, FieldError> {
        if self.inner.degree > DLOG_MAX_DEGREE {
            return Err(FieldError::FieldTooLargeForDlog(self.inner.degree));
        }
        if self.inner.primitivity != Primitivity::Verified {
            return Err(FieldError::NotPrimitive);
        }
        if x.is_zero() {
            return Err(FieldError::ZeroDlog);
        }
        self.check(x)?;
        let table = self.dlog_table();
        Ok(table[self.index_of(x) as usize] as u64)
    }

    fn dlog_table(&self) -> &Vec<u32> {
        self.inner.dlog.get_or_init(|| {
            let q = self.order().expect("small field") as usize;
            let mut table = vec![u32::MAX; q];
            let mut v = FieldElement::ONE;
            for k in 0..(q - 1) as u32 {
                table[self.index_of(v) as usize] = k;
                v = self.mul(v, self.inner.generator);
            }
            table
        })
    }

    /// Element from its base-3 code `sum trit_i * 3^i`.
    pub fn from_index(&self, mut idx: u128) -> FieldElement {
        let mut v = FieldElement::ZERO;
        let mut i = 0;
        while idx > 0 && i < self.inner.degree {
            v.set_trit(i, (idx % 3) as u8);
            idx /= 3;
            i += 1;
        }
        v
    }

    /// Inverse of [`Field::from_index`]; only meaningful for n <= 80.
    pub fn index_of(&self, x: FieldElement) -> u128 {
        (0..self.inner.degree)
            .rev()
            .fold(0u128, |acc, i| acc * 3 + x.trit(i) as u128)
    }

    pub fn from_trits(&self, trits: &[u8]) -> Result<FieldElement, FieldError> {
        if trits.len() != self.inner.degree {
            return Err(FieldError::BadLength {
                expected: self.inner.degree,
                got: trits.len(),
            });
        }
        element_from_trits(self.inner.degree, trits)
    }

    pub fn to_trits(&self, x: FieldElement) -> Vec<u8> {
        (0..self.inner.degree).map(|i| x.trit(i)).collect()
    }

    /// Parses the `n`-character trit-string form.
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        self.from_trits(&parse_trits(s)?)
    }

    /// Trit-string form, constant term first.
    pub fn format(&self, x: FieldElement) -> String {
        (0..self.inner.degree)
            .map(|i| char::from(b'0' + x.trit(i)))
            .collect()
    }

    /// `"0"` or `"a<k>"` for generator powers; falls back to the trit string
    /// when no discrete-log table is available.
    pub fn format_power(&self, x: FieldElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        match self.dlog(x) {
            Ok(k) => format!("a{k}"),
            Err(_) => self.format(x),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, nonzero: bool) -> FieldElement {
        loop {
            let mut v = FieldElement::ZERO;
            for i in 0..self.inner.degree {
                v.set_trit(i, rng.random_range(0..3u8));
            }
            if !(nonzero && v.is_zero()) {
                return v;
            }
        }
    }
}

pub(crate) fn parse_trits(s: &str) -> Result<Vec<u8>, FieldError> {
    s.chars()
        .map(|c| match c {
            '0'..='2' => Ok(c as u8 - b'0'),
            other => Err(FieldError::BadTrit(other)),
        })
        .collect()
}

fn element_from_trits(n: usize, trits: &[u8]) -> Result<FieldElement, FieldError> {
    if trits.len() > n {
        return Err(FieldError::BadLength {
            expected: n,
            got: trits.len(),
        });
    }
    let mut v = FieldElement::ZERO;
    for (i, &t) in trits.iter().enumerate() {
        if t > 2 {
            return Err(FieldError::BadTrit(char::from(b'0' + t.min(9))));
        }
        v.set_trit(i, t);
    }
    Ok(v)
}

#[inline]
fn apply_linear(images: &[FieldElement], x: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    let mut ones = x.ones;
    while ones != 0 {
        acc += images[ones.trailing_zeros() as usize];
        ones &= ones - 1;
    }
    let mut twos = x.twos;
    while twos != 0 {
        acc -= images[twos.trailing_zeros() as usize];
        twos &= twos - 1;
    }
    acc
}

/// Horner multiplication from the top trit of `y`, reducing after every
/// shift by x.
#[inline]
fn raw_mul(f: &FieldInner, x: FieldElement, y: FieldElement) -> FieldElement {
    let top = f.degree - 1;
    let support = y.support();
    if support == 0 || x.is_zero() {
        return FieldElement::ZERO;
    }
    let highest = 127 - support.leading_zeros() as usize;
    let mut acc = FieldElement::ZERO;
    for i in (0..=highest).rev() {
        let carry = acc.trit(top);
        acc = acc.shl(1).masked(f.mask);
        match carry {
            1 => acc += f.reduction,
            2 => acc -= f.reduction,
            _ => {}
        }
        match y.trit(i) {
            1 => acc += x,
            2 => acc -= x,
            _ => {}
        }
    }
    acc
}

fn raw_pow(f: &FieldInner, x: FieldElement, mut e: u128) -> FieldElement {
    let mut base = x;
    let mut acc = FieldElement::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = raw_mul(f, acc, base);
        }
        base = raw_mul(f, base, base);
        e >>= 1;
    }
    acc
}

/// Trial division for small degrees, Ben-Or's gcd test otherwise.
fn is_irreducible(f: &FieldInner) -> bool {
    let n = f.degree;
    let g = Poly3::new(f.modulus.clone());
    if n <= DLOG_MAX_DEGREE {
        return (1..=n / 2).all(|d| Poly3::monic_of_degree(d).all(|h| !g.rem(&h).is_zero()));
    }
    let mut x = FieldElement::ZERO;
    x.set_trit(1, 1);
    let mut h = x;
    for _ in 1..=n / 2 {
        h = raw_mul(f, raw_mul(f, h, h), h);
        let diff: Vec<u8> = (0..n).map(|i| (h - x).trit(i)).collect();
        if Poly3::new(diff).gcd(&g) != Poly3::one() {
            return false;
        }
    }
    true
}

fn has_full_order(f: &FieldInner, gen: FieldElement) -> bool {
    let order = 3u128.pow(f.degree as u32) - 1;
    if gen.is_zero() {
        return false;
    }
    if raw_pow(f, gen, order) != FieldElement::ONE {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| raw_pow(f, gen, order / p) != FieldElement::ONE)
}

fn prime_factors(mut v: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}
