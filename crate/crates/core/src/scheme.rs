//! MST3 over U(q): key generation, encryption and decryption.
//!
//! Public key: covers alpha_1 (rows anywhere in U(q)), alpha_2 (rows in
//! U1(q)) and the arrays
//!
//! ```text
//! gamma_k[i][j] = t_{i-1,k}^-1 * f(alpha_k[i][j]) * emb_k(beta_k[i][j]) * t_{i,k}
//! ```
//!
//! with emb_1(b) = S(0, b, 0), emb_2(b) = S(0, 0, b) and the seam
//! t_{s,1} = t_{0,2}. Private key: the tame signatures beta_k and the
//! translations t.
//!
//! Conjugating y2 by t_{0,1} and t_{s,2} telescopes every translation away
//! and leaves an element of the abelian subgroup U1(q) whose b-coordinate is
//! beta_1(R1) + a(alpha_1'(R1)); the a-coordinate of y1 supplies the second
//! term, so R1 falls out of the tame factorization of beta_1.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::group::{Group, GroupElement};
use crate::logsig::{Cover, FactorIndex, LogSigError, LogSignature, SignatureType};
use crate::par::{self, Execution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("randomness out of range for this key")]
    OutOfRange,
    #[error("message is not in U1(q)")]
    NotInU1,
    #[error("factorization of beta_{stage} failed: {source}")]
    FactorizationFailed { stage: u8, source: LogSigError },
    #[error("recovered message is not in U1(q); wrong key or corrupt ciphertext")]
    NotInU1Result,
    #[error(
        "recovered randomness does not reproduce the ciphertext; wrong key or corrupt ciphertext"
    )]
    Inconsistent,
    #[error("invalid key: {0}")]
    InvalidKey(String),
    #[error(transparent)]
    LogSig(#[from] LogSigError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Group plus the two signature types (for the b and c coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    pub group: Group,
    pub type1: SignatureType,
    pub type2: SignatureType,
}

impl SchemeParams {
    pub fn new(
        group: Group,
        type1: SignatureType,
        type2: SignatureType,
    ) -> Result<Self, SchemeError> {
        let n = group.field().degree();
        type1.check_degree(n)?;
        type2.check_degree(n)?;
        Ok(SchemeParams {
            group,
            type1,
            type2,
        })
    }

    /// log_3 q.
    pub fn degree(&self) -> usize {
        self.group.field().degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub params: SchemeParams,
    pub alpha1: Cover,
    pub alpha2: Cover,
    pub gamma1: Cover,
    pub gamma2: Cover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivateKey {
    pub beta1: LogSignature,
    pub beta2: LogSignature,
    /// t_{0,1} .. t_{s,1}
    pub t1: Vec<GroupElement>,
    /// t_{0,2} .. t_{s,2}
    pub t2: Vec<GroupElement>,
}

impl PrivateKey {
    pub fn new(
        beta1: LogSignature,
        beta2: LogSignature,
        t1: Vec<GroupElement>,
        t2: Vec<GroupElement>,
    ) -> Result<Self, SchemeError> {
        if t1.len() != beta1.sig_type().len() + 1 || t2.len() != beta2.sig_type().len() + 1 {
            return Err(SchemeError::InvalidKey(
                "translation count must be s + 1".into(),
            ));
        }
        if t1.last() != t2.first() {
            return Err(SchemeError::InvalidKey("t_s(1) must equal t_0(2)".into()));
        }
        if t1.iter().chain(&t2).any(GroupElement::in_center) {
            return Err(SchemeError::InvalidKey(
                "translation lies in the center".into(),
            ));
        }
        Ok(PrivateKey {
            beta1,
            beta2,
            t1,
            t2,
        })
    }

    pub fn t_first(&self) -> &GroupElement {
        &self.t1[0]
    }

    pub fn t_last(&self) -> &GroupElement {
        self.t2.last().expect("nonempty")
    }
}

/// m = S(0, m2, m3).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Plaintext {
    pub m2: FieldElement,
    pub m3: FieldElement,
}

impl Plaintext {
    pub fn new(m2: FieldElement, m3: FieldElement) -> Self {
        Plaintext { m2, m3 }
    }

    pub fn to_element(self) -> GroupElement {
        GroupElement {
            a: FieldElement::ZERO,
            b: self.m2,
            c: self.m3,
        }
    }

    pub fn random<R: Rng + ?Sized>(group: &Group, rng: &mut R) -> Self {
        let f = group.field();
        Plaintext {
            m2: f.random(rng, false),
            m3: f.random(rng, false),
        }
    }
}

impl TryFrom<GroupElement> for Plaintext {
    type Error = SchemeError;

    fn try_from(x: GroupElement) -> Result<Self, SchemeError> {
        if !x.in_u1() {
            return Err(SchemeError::NotInU1);
        }
        Ok(Plaintext { m2: x.b, m3: x.c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    pub y1: GroupElement,
    pub y2: GroupElement,
    pub y3: GroupElement,
}

/// R = (R1, R2), each in [0, q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Randomness {
    pub r1: BigUint,
    pub r2: BigUint,
}

impl Randomness {
    pub fn new(r1: impl Into<BigUint>, r2: impl Into<BigUint>) -> Self {
        Randomness {
            r1: r1.into(),
            r2: r2.into(),
        }
    }

    /// Two independent uniform draws from [0, q).
    pub fn sample<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Self {
        let draw = |rng: &mut R| {
            let trits: Vec<u8> = (0..params.degree())
                .map(|_| rng.random_range(0..3u8))
                .collect();
            BigUint::from_radix_le(&trits, 3).expect("digits below radix")
        };
        let r1 = draw(rng);
        let r2 = draw(rng);
        Randomness { r1, r2 }
    }

    pub fn to_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.r1.to_u64()?, self.r2.to_u64()?))
    }

    fn split(&self, params: &SchemeParams) -> Result<(FactorIndex, FactorIndex), SchemeError> {
        let i1 =
            FactorIndex::decode(&params.type1, &self.r1).map_err(|_| SchemeError::OutOfRange)?;
        let i2 =
            FactorIndex::decode(&params.type2, &self.r2).map_err(|_| SchemeError::OutOfRange)?;
        Ok((i1, i2))
    }
}

/// Intermediate values of one decryption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecryptTrace {
    pub d1: GroupElement,
    pub dstar1: GroupElement,
    pub r1: FactorIndex,
    pub residues1: Vec<FieldElement>,
    pub y2_reduced: GroupElement,
    pub d2: GroupElement,
    pub dstar2: GroupElement,
    pub r2: FactorIndex,
    pub residues2: Vec<FieldElement>,
    pub message: Plaintext,
}

/// Fresh keypair. Translations are redrawn until they avoid the center.
pub fn keygen<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> (PublicKey, PrivateKey) {
    keygen_with(params, rng, Execution::default())
}

pub fn keygen_with<R: Rng + ?Sized>(
    params: &SchemeParams,
    rng: &mut R,
    exec: Execution,
) -> (PublicKey, PrivateKey) {
    let field = params.group.field();
    let beta1 = LogSignature::generate(field, &params.type1, rng);
    let beta2 = LogSignature::generate(field, &params.type2, rng);
    let alpha1 = Cover::generate(&params.group, &params.type1, rng, false);
    let alpha2 = Cover::generate(&params.group, &params.type2, rng, true);
    let t1: Vec<_> = (0..=params.type1.len())
        .map(|_| params.group.random_noncentral(rng))
        .collect();
    let mut t2 = Vec::with_capacity(params.type2.len() + 1);
    t2.push(*t1.last().expect("s >= 1"));
    t2.extend((0..params.type2.len()).map(|_| params.group.random_noncentral(rng)));
    assemble_keypair_with(params.clone(), beta1, beta2, alpha1, alpha2, t1, t2, exec)
        .expect("generated key material is consistent")
}

/// Builds both keys from explicit material, computing gamma_1 and gamma_2.
pub fn assemble_keypair(
    params: SchemeParams,
    beta1: LogSignature,
    beta2: LogSignature,
    alpha1: Cover,
    alpha2: Cover,
    t1: Vec<GroupElement>,
    t2: Vec<GroupElement>,
) -> Result<(PublicKey, PrivateKey), SchemeError> {
    assemble_keypair_with(
        params,
        beta1,
        beta2,
        alpha1,
        alpha2,
        t1,
        t2,
        Execution::default(),
    )
}

#[allow(clippy::too_many_arguments)]
fn assemble_keypair_with(
    params: SchemeParams,
    beta1: LogSignature,
    beta2: LogSignature,
    alpha1: Cover,
    alpha2: Cover,
    t1: Vec<GroupElement>,
    t2: Vec<GroupElement>,
    exec: Execution,
) -> Result<(PublicKey, PrivateKey), SchemeError> {
    if beta1.sig_type() != &params.type1 || alpha1.sig_type() != &params.type1 {
        return Err(SchemeError::InvalidKey(
            "beta_1/alpha_1 type differs from type1".into(),
        ));
    }
    if beta2.sig_type() != &params.type2 || alpha2.sig_type() != &params.type2 {
        return Err(SchemeError::InvalidKey(
            "beta_2/alpha_2 type differs from type2".into(),
        ));
    }
    if alpha1.zero_a() || !alpha2.zero_a() {
        return Err(SchemeError::InvalidKey(
            "alpha_2 must be the a = 0 cover".into(),
        ));
    }
    let sk = PrivateKey::new(beta1, beta2, t1, t2)?;
    let g = &params.group;
    let gamma1 = gamma_array(g, &sk.beta1, &alpha1, &sk.t1, Embedding::B, exec);
    let gamma2 = gamma_array(g, &sk.beta2, &alpha2, &sk.t2, Embedding::C, exec);
    let pk = PublicKey {
        params,
        alpha1,
        alpha2,
        gamma1,
        gamma2,
    };
    Ok((pk, sk))
}

#[derive(Clone, Copy)]
enum Embedding {
    /// S(0, b, 0)
    B,
    /// S(0, 0, b)
    C,
}

fn gamma_array(
    g: &Group,
    beta: &LogSignature,
    alpha: &Cover,
    t: &[GroupElement],
    emb: Embedding,
    exec: Execution,
) -> Cover {
    let sig_type = beta.sig_type();
    let cells: Vec<(usize, u32)> = (0..sig_type.len())
        .flat_map(|i| (0..sig_type.radices()[i]).map(move |j| (i, j)))
        .collect();
    let t_inv: Vec<_> = t.iter().map(|x| g.inv(x)).collect();
    let rows = par::map_slice(exec, &cells, |&(i, j)| {
        let b = beta.row(i, j);
        let embedded = match emb {
            Embedding::B => GroupElement::new(FieldElement::ZERO, b, FieldElement::ZERO),
            Embedding::C => GroupElement::new(FieldElement::ZERO, FieldElement::ZERO, b),
        };
        let inner = g.mul(&g.f_map(alpha.row(i, j)), &embedded);
        g.mul(&g.mul(&t_inv[i], &inner), &t[i + 1])
    });
    let mut blocks = Vec::with_capacity(sig_type.len());
    let mut rest = rows.as_slice();
    for &r in sig_type.radices() {
        let (head, tail) = rest.split_at(r as usize);
        blocks.push(head.to_vec());
        rest = tail;
    }
    Cover::new(sig_type.clone(), blocks, false).expect("gamma has the signature's shape")
}

/// y1 = alpha_1'(R1) alpha_2'(R2) m, y2 = gamma_1'(R1) gamma_2'(R2),
/// y3 = f(alpha_2'(R2)).
pub fn encrypt(pk: &PublicKey, m: &Plaintext, r: &Randomness) -> Result<Ciphertext, SchemeError> {
    let (i1, i2) = r.split(&pk.params)?;
    Ok(encrypt_digits(pk, m, i1.digits(), i2.digits()))
}

pub(crate) fn encrypt_digits(pk: &PublicKey, m: &Plaintext, d1: &[u32], d2: &[u32]) -> Ciphertext {
    let g = &pk.params.group;
    let a1 = pk.alpha1.evaluate_digits(g, d1);
    let a2 = pk.alpha2.evaluate_digits(g, d2);
    let y1 = g.mul(&g.mul(&a1, &a2), &m.to_element());
    let y2 = g.mul(
        &pk.gamma1.evaluate_digits(g, d1),
        &pk.gamma2.evaluate_digits(g, d2),
    );
    let y3 = g.f_map(&a2);
    Ciphertext { y1, y2, y3 }
}

/// Encrypts a batch, one fresh randomness per block.
pub fn encrypt_batch(
    pk: &PublicKey,
    items: &[(Plaintext, Randomness)],
    exec: Execution,
) -> Result<Vec<Ciphertext>, SchemeError> {
    par::map_slice(exec, items, |(m, r)| encrypt(pk, m, r))
        .into_iter()
        .collect()
}

pub fn decrypt(pk: &PublicKey, sk: &PrivateKey, ct: &Ciphertext) -> Result<Plaintext, SchemeError> {
    decrypt_traced(pk, sk, ct).map(|t| t.message)
}

pub fn decrypt_batch(
    pk: &PublicKey,
    sk: &PrivateKey,
    cts: &[Ciphertext],
    exec: Execution,
) -> Result<Vec<Plaintext>, SchemeError> {
    par::map_slice(exec, cts, |ct| decrypt(pk, sk, ct))
        .into_iter()
        .collect()
}

pub fn decrypt_traced(
    pk: &PublicKey,
    sk: &PrivateKey,
    ct: &Ciphertext,
) -> Result<DecryptTrace, SchemeError> {
    let g = &pk.params.group;
    let t_last_inv = g.inv(sk.t_last());

    let d1 = g.mul(&g.mul(sk.t_first(), &ct.y2), &t_last_inv);
    // f(y1)^-1 D1: cancels the a-coordinate sum of alpha_1'(R1) from D1.b
    let dstar1 = g.mul(&g.inv(&g.f_map(&ct.y1)), &d1);
    let (r1, residues1) = sk
        .beta1
        .factorize_traced(dstar1.b)
        .map_err(|source| SchemeError::FactorizationFailed { stage: 1, source })?;

    let gamma1_r1 = pk.gamma1.evaluate_digits(g, r1.digits());
    let y2_reduced = g.mul(&g.inv(&gamma1_r1), &ct.y2);
    let d2 = g.mul(&g.mul(&sk.t2[0], &y2_reduced), &t_last_inv);
    let dstar2 = g.mul(&d2, &g.inv(&ct.y3));
    let (r2, residues2) = sk
        .beta2
        .factorize_traced(dstar2.c)
        .map_err(|source| SchemeError::FactorizationFailed { stage: 2, source })?;

    let a1 = pk.alpha1.evaluate_digits(g, r1.digits());
    let a2 = pk.alpha2.evaluate_digits(g, r2.digits());
    let m = g.mul(&g.mul(&g.inv(&a2), &g.inv(&a1)), &ct.y1);
    let message = Plaintext::try_from(m).map_err(|_| SchemeError::NotInU1Result)?;

    let y2_check = g.mul(&gamma1_r1, &pk.gamma2.evaluate_digits(g, r2.digits()));
    if y2_check != ct.y2 || g.f_map(&a2) != ct.y3 {
        return Err(SchemeError::Inconsistent);
    }

    Ok(DecryptTrace {
        d1,
        dstar1,
        r1,
        residues1,
        y2_reduced,
        d2,
        dstar2,
        r2,
        residues2,
        message,
    })
}
