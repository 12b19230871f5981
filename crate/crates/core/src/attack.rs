//! Exhaustive attacks at toy sizes, with trial counts.
//!
//! - `pair`: every (R1, R2) until gamma'(R) = y2, about q^2 trials.
//! - `split`: R1 from the a-coordinate of y1 and R2 from y3 separately,
//!   about 2q trials.
//! - `tkey`: with beta known, every t_0(1) in U(q) until the gamma tables
//!   are reproduced, at most q^3 trials.
//!
//! A reported success has been checked: the recovered randomness
//! re-encrypts to the challenge, or the recovered translations decrypt it.

use std::fmt;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::field::FieldElement;
use crate::group::{Group, GroupElement};
use crate::logsig::{Cover, LogSignature, SignatureType};
use crate::par::{self, Execution};
use crate::scheme::{self, Ciphertext, Plaintext, PrivateKey, PublicKey, Randomness, SchemeError};

/// Largest search space (in candidates) any attack accepts.
pub const MAX_SEARCH: u128 = 1 << 20;

pub const CSV_HEADER: &str = "attack,q,tried,succeeded,wall_time_ms";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("{attack}: search space of {size} candidates exceeds 2^20")]
    SearchSpaceTooLarge { attack: AttackKind, size: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AttackKind {
    Pair,
    Split,
    TKey,
}

impl AttackKind {
    pub const ALL: [AttackKind; 3] = [AttackKind::Pair, AttackKind::Split, AttackKind::TKey];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::Pair => "pair",
            AttackKind::Split => "split",
            AttackKind::TKey => "tkey",
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a successful attack produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovered {
    Randomness {
        r: Randomness,
        message: Plaintext,
    },
    /// Translations equivalent to the private ones: they rebuild gamma
    /// exactly, though they may differ from the originals.
    Translations {
        t1: Vec<GroupElement>,
        t2: Vec<GroupElement>,
        message: Plaintext,
    },
}

impl Recovered {
    pub fn message(&self) -> Plaintext {
        match self {
            Recovered::Randomness { message, .. } | Recovered::Translations { message, .. } => {
                *message
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackReport {
    pub attack: AttackKind,
    pub q: u128,
    pub tried: u64,
    pub succeeded: bool,
    pub recovered: Option<Recovered>,
    pub wall_time: Duration,
}

impl AttackReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3}",
            self.attack,
            self.q,
            self.tried,
            self.succeeded,
            self.wall_time.as_secs_f64() * 1e3
        )
    }
}

impl fmt::Display for AttackReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "attack: {}", self.attack)?;
        writeln!(f, "q: {}", self.q)?;
        writeln!(f, "tried: {}", self.tried)?;
        writeln!(f, "succeeded: {}", self.succeeded)?;
        match &self.recovered {
            Some(Recovered::Randomness { r, .. }) => {
                writeln!(f, "recovered: R1={} R2={}", r.r1, r.r2)?
            }
            Some(Recovered::Translations { .. }) => writeln!(f, "recovered: translations")?,
            None => {}
        }
        write!(f, "wall_time_ms: {:.3}", self.wall_time.as_secs_f64() * 1e3)
    }
}

/// Header plus one row per report.
pub fn write_csv<W: Write>(mut out: W, reports: &[AttackReport]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in reports {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

fn field_order(pk: &PublicKey) -> u128 {
    pk.params.group.field().order().unwrap_or(u128::MAX)
}

fn guard(attack: AttackKind, q: u128, power: u32) -> Result<u64, AttackError> {
    match q.checked_pow(power) {
        Some(size) if size <= MAX_SEARCH => Ok(size as u64),
        _ => Err(AttackError::SearchSpaceTooLarge {
            attack,
            size: format!("q^{power} = {q}^{power}"),
        }),
    }
}

fn digits(t: &SignatureType, r: u64) -> Vec<u32> {
    let mut d = vec![0; t.len()];
    t.digits_of_u64(r, &mut d);
    d
}

/// Cover evaluated at every index, in index order.
fn table(exec: Execution, g: &Group, cover: &Cover, q: u64) -> Vec<GroupElement> {
    let t = cover.sig_type();
    par::map_range(exec, 0..q, |r| cover.evaluate_digits(g, &digits(t, r)))
}

/// Recovers m from a candidate R and confirms it re-encrypts to `ct`.
fn confirm(pk: &PublicKey, ct: &Ciphertext, r1: u64, r2: u64) -> Option<Recovered> {
    let g = &pk.params.group;
    let d1 = digits(&pk.params.type1, r1);
    let d2 = digits(&pk.params.type2, r2);
    let a1 = pk.alpha1.evaluate_digits(g, &d1);
    let a2 = pk.alpha2.evaluate_digits(g, &d2);
    let m = g.mul(&g.mul(&g.inv(&a2), &g.inv(&a1)), &ct.y1);
    let message = Plaintext::try_from(m).ok()?;
    (scheme::encrypt_digits(pk, &message, &d1, &d2) == *ct).then(|| Recovered::Randomness {
        r: Randomness::new(r1, r2),
        message,
    })
}

pub fn brute_force_r_pair(pk: &PublicKey, ct: &Ciphertext) -> Result<AttackReport, AttackError> {
    brute_force_r_pair_with(pk, ct, Execution::default())
}

/// Lexicographic search over (R1, R2). A candidate is accepted when it
/// reproduces y2, the a-coordinate of y1 and y3, which pins down R.
pub fn brute_force_r_pair_with(
    pk: &PublicKey,
    ct: &Ciphertext,
    exec: Execution,
) -> Result<AttackReport, AttackError> {
    let start = Instant::now();
    let q = field_order(pk);
    let total = guard(AttackKind::Pair, q, 2)?;
    let q64 = q as u64;
    let g = &pk.params.group;
    let gamma1 = table(exec, g, &pk.gamma1, q64);
    let gamma2 = table(exec, g, &pk.gamma2, q64);
    let a1: Vec<FieldElement> = table(exec, g, &pk.alpha1, q64)
        .iter()
        .map(|x| x.a)
        .collect();
    let f2: Vec<GroupElement> = table(exec, g, &pk.alpha2, q64)
        .iter()
        .map(|x| g.f_map(x))
        .collect();

    let hit = par::find_first(exec, 0..total, |k| {
        let (r1, r2) = ((k / q64) as usize, (k % q64) as usize);
        (g.mul(&gamma1[r1], &gamma2[r2]) == ct.y2 && a1[r1] == ct.y1.a && f2[r2] == ct.y3)
            .then_some(())
    });
    let (tried, recovered) = match hit {
        Some((k, ())) => (k + 1, confirm(pk, ct, k / q64, k % q64)),
        None => (total, None),
    };
    Ok(AttackReport {
        attack: AttackKind::Pair,
        q,
        tried,
        succeeded: recovered.is_some(),
        recovered,
        wall_time: start.elapsed(),
    })
}

pub fn brute_force_split(pk: &PublicKey, ct: &Ciphertext) -> Result<AttackReport, AttackError> {
    brute_force_split_with(pk, ct, Execution::default())
}

/// Stage 1 keeps every R1 with a(alpha_1'(R1)) = a(y1) (alpha_2 and m have
/// a = 0); stage 2 keeps every R2 with f(alpha_2'(R2)) = y3. Each stage
/// costs q trials. When either stage leaves several candidates, the
/// combinations are tested against the ciphertext and counted as well.
pub fn brute_force_split_with(
    pk: &PublicKey,
    ct: &Ciphertext,
    exec: Execution,
) -> Result<AttackReport, AttackError> {
    let start = Instant::now();
    let q = field_order(pk);
    let q64 = guard(AttackKind::Split, q, 1)?;
    let g = &pk.params.group;
    let keep = |cover: &Cover, pred: &(dyn Fn(&GroupElement) -> bool + Sync)| -> Vec<u64> {
        let t = cover.sig_type();
        par::map_range(exec, 0..q64, |r| {
            pred(&cover.evaluate_digits(g, &digits(t, r))).then_some(r)
        })
        .into_iter()
        .flatten()
        .collect()
    };
    let c1 = keep(&pk.alpha1, &|x| x.a == ct.y1.a);
    let c2 = keep(&pk.alpha2, &|x| g.f_map(x) == ct.y3);

    let mut tried = 2 * q64;
    let mut recovered = None;
    if c1.len() == 1 && c2.len() == 1 {
        recovered = confirm(pk, ct, c1[0], c2[0]);
    } else {
        'outer: for &r1 in &c1 {
            for &r2 in &c2 {
                tried += 1;
                if let Some(found) = confirm(pk, ct, r1, r2) {
                    recovered = Some(found);
                    break 'outer;
                }
            }
        }
    }
    Ok(AttackReport {
        attack: AttackKind::Split,
        q,
        tried,
        succeeded: recovered.is_some(),
        recovered,
        wall_time: start.elapsed(),
    })
}

pub fn brute_force_t(
    pk: &PublicKey,
    beta1: &LogSignature,
    beta2: &LogSignature,
    ct: &Ciphertext,
) -> Result<AttackReport, AttackError> {
    brute_force_t_with(pk, beta1, beta2, ct, Execution::default())
}

/// Chains translations through one gamma array starting from `t0`. Row
/// (i, j) fixes t_{i+1} = (f(a_ij) emb(b_ij))^-1 t_i h_ij; every other row
/// of the block must agree.
fn chain(
    g: &Group,
    alpha: &Cover,
    beta: &LogSignature,
    gamma: &Cover,
    c_embedding: bool,
    t0: GroupElement,
) -> Option<Vec<GroupElement>> {
    let t = beta.sig_type();
    let mut out = Vec::with_capacity(t.len() + 1);
    out.push(t0);
    for i in 0..t.len() {
        let ti = *out.last().expect("nonempty");
        let inner = |j: u32| {
            let b = beta.row(i, j);
            let emb = if c_embedding {
                GroupElement::new(FieldElement::ZERO, FieldElement::ZERO, b)
            } else {
                GroupElement::new(FieldElement::ZERO, b, FieldElement::ZERO)
            };
            g.mul(&g.f_map(alpha.row(i, j)), &emb)
        };
        let next = g.mul(&g.mul(&g.inv(&inner(0)), &ti), gamma.row(i, 0));
        let ti_inv = g.inv(&ti);
        for j in 1..t.radices()[i] {
            if g.mul(&g.mul(&ti_inv, &inner(j)), &next) != *gamma.row(i, j) {
                return None;
            }
        }
        out.push(next);
    }
    Some(out)
}

/// Searches t_0(1) over U(q) in index order; the rest of the translations
/// follow from the gamma arrays.
pub fn brute_force_t_with(
    pk: &PublicKey,
    beta1: &LogSignature,
    beta2: &LogSignature,
    ct: &Ciphertext,
    exec: Execution,
) -> Result<AttackReport, AttackError> {
    let start = Instant::now();
    let q = field_order(pk);
    let total = guard(AttackKind::TKey, q, 3)?;
    let g = &pk.params.group;

    let hit = par::find_first(exec, 0..total, |k| {
        let t1 = chain(
            g,
            &pk.alpha1,
            beta1,
            &pk.gamma1,
            false,
            g.from_index(k as u128),
        )?;
        let seam = *t1.last().expect("nonempty");
        let t2 = chain(g, &pk.alpha2, beta2, &pk.gamma2, true, seam)?;
        let sk = PrivateKey::new(beta1.clone(), beta2.clone(), t1, t2).ok()?;
        let message = scheme::decrypt(pk, &sk, ct).ok()?;
        Some(Recovered::Translations {
            t1: sk.t1,
            t2: sk.t2,
            message,
        })
    });
    let (tried, recovered) = match hit {
        Some((k, rec)) => (k + 1, Some(rec)),
        None => (total, None),
    };
    Ok(AttackReport {
        attack: AttackKind::TKey,
        q,
        tried,
        succeeded: recovered.is_some(),
        recovered,
        wall_time: start.elapsed(),
    })
}
