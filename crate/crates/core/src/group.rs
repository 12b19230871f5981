//! The Sylow 3-subgroup U(q) of the small Ree group: triples S(a, b, c)
//! over GF(q) with the twisted product
//!
//! ```text
//! S(a1,b1,c1) S(a2,b2,c2) = S(a1 + a2,
//!                             b1 + b2 - a1 a2^(3t),
//!                             c1 + c2 - a2 b1 + a1 a2^(3t+1) - a1^2 a2^(3t))
//! ```
//!
//! where `x^(3t) = x^(3^(m+1))` is a field automorphism.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group element must have three ':'-separated coordinates")]
    BadShape,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// S(a, b, c).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        a: FieldElement::ZERO,
        b: FieldElement::ZERO,
        c: FieldElement::ZERO,
    };

    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        GroupElement { a, b, c }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Z(U(q)) = { S(0, 0, c) }.
    pub fn in_center(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// U1(q) = { S(0, b, c) }.
    pub fn in_u1(&self) -> bool {
        self.a.is_zero()
    }
}

/// U(q) over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    field: Field,
}

impl Group {
    pub fn new(field: Field) -> Self {
        Group { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let f = &self.field;
        if y.a.is_zero() {
            // every term carrying a2 vanishes
            return GroupElement {
                a: x.a,
                b: x.b + y.b,
                c: x.c + y.c,
            };
        }
        let a2_3t = f.frob_3t(y.a);
        let a1_a2_3t = f.mul(x.a, a2_3t);
        GroupElement {
            a: x.a + y.a,
            b: x.b + y.b - a1_a2_3t,
            c: x.c + y.c - f.mul(y.a, x.b) + f.mul(a1_a2_3t, y.a) - f.mul(x.a, a1_a2_3t),
        }
    }

    /// S(a,b,c)^-1 = S(-a, -b - a^(3t+1), -c - ab + a^(3t+2)).
    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        let f = &self.field;
        if x.a.is_zero() {
            return GroupElement {
                a: FieldElement::ZERO,
                b: -x.b,
                c: -x.c,
            };
        }
        let a_3t1 = f.mul(f.frob_3t(x.a), x.a);
        GroupElement {
            a: -x.a,
            b: -x.b - a_3t1,
            c: -x.c - f.mul(x.a, x.b) + f.mul(a_3t1, x.a),
        }
    }

    /// Left-to-right product of a sequence.
    pub fn product<'a, I>(&self, items: I) -> GroupElement
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        items
            .into_iter()
            .fold(GroupElement::IDENTITY, |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &GroupElement, k: u32) -> GroupElement {
        (0..k).fold(GroupElement::IDENTITY, |acc, _| self.mul(&acc, x))
    }

    /// f(S(a, b, c)) = S(0, a, b).
    pub fn f_map(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            a: FieldElement::ZERO,
            b: x.a,
            c: x.b,
        }
    }

    /// Smallest k with x^k = 1; one of 1, 3, 9.
    pub fn element_order(&self, x: &GroupElement) -> u32 {
        let mut acc = *x;
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.mul(&acc, x);
            k += 1;
            debug_assert!(k <= 9, "U(q) has exponent 9");
        }
        k
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        GroupElement {
            a: self.field.random(rng, false),
            b: self.field.random(rng, false),
            c: self.field.random(rng, false),
        }
    }

    /// Uniform over U(q) \ Z(U(q)) by rejection.
    pub fn random_noncentral<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        loop {
            let x = self.random(rng);
            if !x.in_center() {
                return x;
            }
        }
    }

    /// Element with lexicographic rank `idx` in (a, b, c), each coordinate
    /// ranked by its base-3 code.
    pub fn from_index(&self, idx: u128) -> GroupElement {
        let q = self
            .field
            .order()
            .expect("enumeration needs q to fit in u128");
        GroupElement {
            a: self.field.from_index(idx / (q * q)),
            b: self.field.from_index((idx / q) % q),
            c: self.field.from_index(idx % q),
        }
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), FieldError> {
        self.field.check(x.a)?;
        self.field.check(x.b)?;
        self.field.check(x.c)
    }

    /// `"aaaaa:bbbbb:ccccc"`.
    pub fn format(&self, x: &GroupElement) -> String {
        format!(
            "{}:{}:{}",
            self.field.format(x.a),
            self.field.format(x.b),
            self.field.format(x.c)
        )
    }

    pub fn parse(&self, s: &str) -> Result<GroupElement, GroupError> {
        let mut parts = s.split(':');
        let (Some(a), Some(b), Some(c), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(GroupError::BadShape);
        };
        Ok(GroupElement {
            a: self.field.parse(a)?,
            b: self.field.parse(b)?,
            c: self.field.parse(c)?,
        })
    }

    /// `"a86:a186:a113"`, coordinates as generator powers.
    pub fn format_power(&self, x: &GroupElement) -> String {
        format!(
            "{}:{}:{}",
            self.field.format_power(x.a),
            self.field.format_power(x.b),
            self.field.format_power(x.c)
        )
    }

    /// S(a^i, b^j, c^k) from generator exponents, `None` meaning zero.
    pub fn from_powers(&self, a: Option<u32>, b: Option<u32>, c: Option<u32>) -> GroupElement {
        let pw = |e: Option<u32>| match e {
            Some(k) => self.field.primitive_power(k as u128),
            None => FieldElement::ZERO,
        };
        GroupElement {
            a: pw(a),
            b: pw(b),
            c: pw(c),
        }
    }

    pub fn display<'a>(&'a self, x: &'a GroupElement) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Group, &'a GroupElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, x)
    }
}
