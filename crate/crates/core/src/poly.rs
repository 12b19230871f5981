//! Dense polynomials over GF(3), used off the hot path: irreducibility
//! testing, field inversion and generator checks.

/// Coefficients in ascending degree, kept trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly3(Vec<u8>);

#[inline]
fn neg3(v: u8) -> u8 {
    (3 - v) % 3
}

#[inline]
fn inv3(v: u8) -> u8 {
    // 1 -> 1, 2 -> 2
    debug_assert!(v != 0);
    v
}

impl Poly3 {
    pub fn new(mut coeffs: Vec<u8>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= 3;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly3(coeffs)
    }

    pub fn zero() -> Self {
        Poly3(Vec::new())
    }

    pub fn one() -> Self {
        Poly3(vec![1])
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> u8 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Poly3::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly3(self.0.iter().map(|&c| neg3(c)).collect())
    }

    pub fn scale(&self, k: u8) -> Self {
        Poly3::new(self.0.iter().map(|&c| c * (k % 3)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly3::zero();
        }
        let mut out = vec![0u8; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % 3;
            }
        }
        Poly3::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = inv3(divisor.lead());
        let mut rem = self.0.clone();
        let mut quot = vec![0u8; self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = (rem[top] * lead_inv) % 3;
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (k, &dcoef) in divisor.0.iter().enumerate() {
                    rem[shift + k] = (rem[shift + k] + 3 * 3 - c * dcoef) % 3;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (Poly3::new(quot), Poly3::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly3::zero();
        }
        self.scale(inv3(self.lead()))
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and
    /// `s * self = g (mod modulus)`.
    pub fn ext_gcd_left(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (self.clone(), modulus.clone());
        let (mut s0, mut s1) = (Poly3::one(), Poly3::zero());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let k = inv3(r0.lead());
        (r0.scale(k), s0.scale(k))
    }

    /// Every monic polynomial of the given degree, in lexicographic order of
    /// the lower coefficients.
    pub fn monic_of_degree(degree: usize) -> impl Iterator<Item = Poly3> {
        let count = 3usize.pow(degree as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                v.push((idx % 3) as u8);
                idx /= 3;
            }
            v.push(1);
            Poly3::new(v)
        })
    }
}
