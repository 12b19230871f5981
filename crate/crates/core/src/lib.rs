//! MST3 public-key encryption over U(q), the Sylow 3-subgroup of the small
//! Ree group over GF(q), q = 3^(2m+1).
//!
//! - [`field`]: bit-sliced GF(3^n) arithmetic with Frobenius tables.
//! - [`group`]: the group law of U(q) and the coordinate shift `f`.
//! - [`logsig`]: tame logarithmic signatures, random covers, mixed-radix indices.
//! - [`scheme`]: key generation, encryption and decryption.
//! - [`attack`]: exhaustive-search attacks, guarded to toy sizes.
//! - [`codec`] and [`format`]: byte payloads and the text file formats.
//!
//! The `parallel` feature (on by default) runs batch work on rayon; see
//! [`par::Execution`].

pub mod attack;
pub mod codec;
pub mod field;
pub mod format;
pub mod group;
pub mod logsig;
pub mod par;
mod poly;
pub mod profile;
pub mod scheme;
pub mod worked_example;

pub use field::{Field, FieldElement, FieldError};
pub use group::{Group, GroupElement};
pub use logsig::{Cover, FactorIndex, LogSigError, LogSignature, SignatureType};
pub use par::Execution;
pub use profile::Profile;
pub use scheme::{
    decrypt, encrypt, keygen, Ciphertext, Plaintext, PrivateKey, PublicKey, Randomness,
    SchemeError, SchemeParams,
};
