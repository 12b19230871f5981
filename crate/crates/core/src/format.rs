//! Line-oriented text formats for keys and ciphertexts.
//!
//! ```text
//! MST3-REE/1
//! kind public
//! field n=5 g=120001
//! type1 9,9,3
//! type2 3,9,9
//! section alpha1
//! block 1 r=9
//! <a>:<b>:<c>
//! ...
//! section alpha2
//! section gamma1
//! section gamma2
//! end
//! ```
//!
//! A secret key file carries the same header and public sections followed
//! by `section beta1`, `section beta2` (one trit string per row),
//! `section t1` and `section t2` (s + 1 group elements each). A ciphertext
//! file has `blocks <count>`, one `y1:y2:y3` line (nine trit strings) per
//! block and a final `padding 80-00` marker. Field elements are trit strings
//! with the constant term first; every line ends in `\n`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::group::{Group, GroupElement, GroupError};
use crate::logsig::{Cover, LogSigError, LogSignature, SignatureType};
use crate::scheme::{self, Ciphertext, PrivateKey, PublicKey, SchemeError, SchemeParams};

pub const VERSION: &str = "MST3-REE/1";
pub const PADDING_MARKER: &str = "padding 80-00";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("unsupported format version {0:?}")]
    UnsupportedVersion(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Field { line: usize, source: FieldError },
    #[error(transparent)]
    LogSig(#[from] LogSigError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("gamma tables do not match the private key")]
    GammaMismatch,
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

struct Reader<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().enumerate().peekable(),
        }
    }

    fn next(&mut self) -> Result<(usize, &'a str), FormatError> {
        self.lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| syntax(0, "unexpected end of file"))
    }

    fn peek(&mut self) -> Option<&'a str> {
        self.lines.peek().map(|&(_, l)| l)
    }

    /// Consumes a line that must start with `key ` and returns the rest.
    fn keyed(&mut self, key: &str) -> Result<(usize, &'a str), FormatError> {
        let (no, line) = self.next()?;
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(|rest| (no, rest))
            .ok_or_else(|| syntax(no, format!("expected `{key} ...`, found {line:?}")))
    }

    fn exact(&mut self, expected: &str) -> Result<(), FormatError> {
        let (no, line) = self.next()?;
        if line != expected {
            return Err(syntax(no, format!("expected {expected:?}, found {line:?}")));
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        self.exact("end")?;
        match self.lines.next() {
            None => Ok(()),
            Some((i, _)) => Err(syntax(i + 1, "trailing data after `end`")),
        }
    }
}

fn write_header(out: &mut String, kind: &str, field: &Field) {
    let _ = writeln!(out, "{VERSION}");
    let _ = writeln!(out, "kind {kind}");
    let _ = writeln!(
        out,
        "field n={} g={}",
        field.degree(),
        field.modulus_string()
    );
}

fn read_header(r: &mut Reader<'_>, kind: &str) -> Result<Field, FormatError> {
    let (_, version) = r.next()?;
    if version != VERSION {
        return Err(FormatError::UnsupportedVersion(version.to_string()));
    }
    let (no, k) = r.keyed("kind")?;
    if k != kind {
        return Err(syntax(no, format!("expected a {kind} file, found {k:?}")));
    }
    let (no, rest) = r.keyed("field")?;
    let mut parts = rest.split(' ');
    let n = parts
        .next()
        .and_then(|p| p.strip_prefix("n="))
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| syntax(no, "expected n=<degree>"))?;
    let g = parts
        .next()
        .and_then(|p| p.strip_prefix("g="))
        .ok_or_else(|| syntax(no, "expected g=<trits>"))?;
    if parts.next().is_some() {
        return Err(syntax(no, "unexpected field header data"));
    }
    let trits =
        crate::field::parse_trits(g).map_err(|source| FormatError::Field { line: no, source })?;
    if trits.len() != n + 1 {
        return Err(syntax(no, format!("modulus must have {} trits", n + 1)));
    }
    Field::new(n, &trits).map_err(|source| FormatError::Field { line: no, source })
}

fn write_type(out: &mut String, key: &str, t: &SignatureType) {
    let radices: Vec<String> = t.radices().iter().map(u32::to_string).collect();
    let _ = writeln!(out, "{key} {}", radices.join(","));
}

fn read_type(r: &mut Reader<'_>, key: &str, n: usize) -> Result<SignatureType, FormatError> {
    let (no, rest) = r.keyed(key)?;
    let radices = rest
        .split(',')
        .map(|v| v.parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| syntax(no, "bad radix list"))?;
    Ok(SignatureType::for_degree(&radices, n)?)
}

fn read_params(r: &mut Reader<'_>, kind: &str) -> Result<SchemeParams, FormatError> {
    let field = read_header(r, kind)?;
    let n = field.degree();
    let t1 = read_type(r, "type1", n)?;
    let t2 = read_type(r, "type2", n)?;
    Ok(SchemeParams::new(Group::new(field), t1, t2)?)
}

/// Rows of each block, with a `block <i> r=<r_i>` header (1-based i).
fn write_blocks<T>(
    out: &mut String,
    t: &SignatureType,
    blocks: &[Vec<T>],
    fmt: impl Fn(&T) -> String,
) {
    for (i, block) in blocks.iter().enumerate() {
        let _ = writeln!(out, "block {} r={}", i + 1, t.radices()[i]);
        for row in block {
            let _ = writeln!(out, "{}", fmt(row));
        }
    }
}

fn read_blocks<T>(
    r: &mut Reader<'_>,
    t: &SignatureType,
    parse: impl Fn(usize, &str) -> Result<T, FormatError>,
) -> Result<Vec<Vec<T>>, FormatError> {
    let mut blocks = Vec::with_capacity(t.len());
    for (i, &radix) in t.radices().iter().enumerate() {
        let expected = format!("block {} r={}", i + 1, radix);
        r.exact(&expected)?;
        let mut rows = Vec::with_capacity(radix as usize);
        for _ in 0..radix {
            let (no, line) = r.next()?;
            rows.push(parse(no, line)?);
        }
        blocks.push(rows);
    }
    Ok(blocks)
}

fn parse_element(group: &Group, no: usize, s: &str) -> Result<GroupElement, FormatError> {
    group.parse(s).map_err(|e| match e {
        GroupError::BadShape => syntax(no, "group element must be a:b:c"),
        GroupError::Field(source) => FormatError::Field { line: no, source },
    })
}

fn write_public_body(out: &mut String, pk: &PublicKey) {
    let g = &pk.params.group;
    write_type(out, "type1", &pk.params.type1);
    write_type(out, "type2", &pk.params.type2);
    for (name, cover) in [
        ("alpha1", &pk.alpha1),
        ("alpha2", &pk.alpha2),
        ("gamma1", &pk.gamma1),
        ("gamma2", &pk.gamma2),
    ] {
        let _ = writeln!(out, "section {name}");
        write_blocks(out, cover.sig_type(), cover.blocks(), |x| g.format(x));
    }
}

fn read_public_body(r: &mut Reader<'_>, params: SchemeParams) -> Result<PublicKey, FormatError> {
    let g = params.group.clone();
    let mut cover = |name: &str, t: &SignatureType, zero_a: bool| -> Result<Cover, FormatError> {
        r.exact(&format!("section {name}"))?;
        let blocks = read_blocks(r, t, |no, s| parse_element(&g, no, s))?;
        Ok(Cover::new(t.clone(), blocks, zero_a)?)
    };
    let alpha1 = cover("alpha1", &params.type1, false)?;
    let alpha2 = cover("alpha2", &params.type2, true)?;
    let gamma1 = cover("gamma1", &params.type1, false)?;
    let gamma2 = cover("gamma2", &params.type2, false)?;
    Ok(PublicKey {
        params,
        alpha1,
        alpha2,
        gamma1,
        gamma2,
    })
}

pub fn write_public(pk: &PublicKey) -> String {
    let mut out = String::new();
    write_header(&mut out, "public", pk.params.group.field());
    write_public_body(&mut out, pk);
    out.push_str("end\n");
    out
}

pub fn read_public(text: &str) -> Result<PublicKey, FormatError> {
    let mut r = Reader::new(text);
    let params = read_params(&mut r, "public")?;
    let pk = read_public_body(&mut r, params)?;
    r.finish()?;
    Ok(pk)
}

/// Secret key file; it embeds the public tables that decryption uses.
pub fn write_secret(pk: &PublicKey, sk: &PrivateKey) -> String {
    let mut out = String::new();
    let g = &pk.params.group;
    let f = g.field();
    write_header(&mut out, "secret", f);
    write_public_body(&mut out, pk);
    for (name, beta) in [("beta1", &sk.beta1), ("beta2", &sk.beta2)] {
        let _ = writeln!(out, "section {name}");
        write_blocks(&mut out, beta.sig_type(), beta.blocks(), |x| f.format(*x));
    }
    for (name, ts) in [("t1", &sk.t1), ("t2", &sk.t2)] {
        let _ = writeln!(out, "section {name}");
        for t in ts {
            let _ = writeln!(out, "{}", g.format(t));
        }
    }
    out.push_str("end\n");
    out
}

/// Parses a secret key file and checks that its gamma tables are the ones
/// the private material generates.
pub fn read_secret(text: &str) -> Result<(PublicKey, PrivateKey), FormatError> {
    let mut r = Reader::new(text);
    let params = read_params(&mut r, "secret")?;
    let pk = read_public_body(&mut r, params.clone())?;
    let f = params.group.field().clone();
    let mut sig = |name: &str, t: &SignatureType| -> Result<LogSignature, FormatError> {
        r.exact(&format!("section {name}"))?;
        let blocks = read_blocks(&mut r, t, |no, s| {
            f.parse(s)
                .map_err(|source| FormatError::Field { line: no, source })
        })?;
        Ok(LogSignature::new(&f, t.clone(), blocks)?)
    };
    let beta1 = sig("beta1", &params.type1)?;
    let beta2 = sig("beta2", &params.type2)?;
    let mut translations = |name: &str, count: usize| -> Result<Vec<GroupElement>, FormatError> {
        r.exact(&format!("section {name}"))?;
        (0..count)
            .map(|_| {
                let (no, line) = r.next()?;
                parse_element(&params.group, no, line)
            })
            .collect()
    };
    let t1 = translations("t1", params.type1.len() + 1)?;
    let t2 = translations("t2", params.type2.len() + 1)?;
    r.finish()?;

    let (rebuilt, sk) = scheme::assemble_keypair(
        params,
        beta1,
        beta2,
        pk.alpha1.clone(),
        pk.alpha2.clone(),
        t1,
        t2,
    )?;
    if rebuilt.gamma1 != pk.gamma1 || rebuilt.gamma2 != pk.gamma2 {
        return Err(FormatError::GammaMismatch);
    }
    Ok((pk, sk))
}

/// Ciphertext blocks of one payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiphertextFile {
    pub field: Field,
    pub blocks: Vec<Ciphertext>,
}

impl CiphertextFile {
    pub fn write(&self) -> String {
        let g = Group::new(self.field.clone());
        let mut out = String::new();
        write_header(&mut out, "ciphertext", &self.field);
        let _ = writeln!(out, "blocks {}", self.blocks.len());
        for ct in &self.blocks {
            let _ = writeln!(
                out,
                "{}:{}:{}",
                g.format(&ct.y1),
                g.format(&ct.y2),
                g.format(&ct.y3)
            );
        }
        let _ = writeln!(out, "{PADDING_MARKER}");
        out.push_str("end\n");
        out
    }

    pub fn read(text: &str) -> Result<CiphertextFile, FormatError> {
        let mut r = Reader::new(text);
        let field = read_header(&mut r, "ciphertext")?;
        let g = Group::new(field.clone());
        let (no, count) = r.keyed("blocks")?;
        let count: usize = count.parse().map_err(|_| syntax(no, "bad block count"))?;
        let mut blocks = Vec::with_capacity(count);
        for _ in 0..count {
            let (no, line) = r.next()?;
            let parts: Vec<&str> = line.split(':').collect();
            if parts.len() != 9 {
                return Err(syntax(no, "ciphertext line must hold nine trit strings"));
            }
            let el = |k: usize| parse_element(&g, no, &parts[3 * k..3 * k + 3].join(":"));
            blocks.push(Ciphertext {
                y1: el(0)?,
                y2: el(1)?,
                y3: el(2)?,
            });
        }
        if r.peek() != Some(PADDING_MARKER) {
            let (no, _) = r.next()?;
            return Err(syntax(no, format!("expected {PADDING_MARKER:?}")));
        }
        r.next()?;
        r.finish()?;
        Ok(CiphertextFile { field, blocks })
    }
}
