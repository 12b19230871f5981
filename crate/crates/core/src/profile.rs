//! Named parameter sets and key-size arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::field::Field;
use crate::group::Group;
use crate::logsig::SignatureType;
use crate::scheme::SchemeParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// GF(27), types (3, 9) / (9, 3).
    Toy,
    /// GF(243), g = x^5 + 2x + 1, types (9, 9, 3) / (3, 9, 9).
    Paper,
    /// GF(3^81), g = x^81 + x^40 + 2, sixteen blocks of 3^5 plus one of 3.
    Large,
}

/// Blocks of 3^5 used by the large profile (16 * 5 + 1 = 81 trits).
const LARGE_BLOCKS: usize = 16;

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Toy, Profile::Paper, Profile::Large];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Toy => "toy",
            Profile::Paper => "paper",
            Profile::Large => "large",
        }
    }

    pub fn modulus(self) -> Vec<u8> {
        match self {
            Profile::Toy => vec![1, 2, 0, 1],
            Profile::Paper => vec![1, 2, 0, 0, 0, 1],
            Profile::Large => {
                let mut g = vec![0u8; 82];
                g[0] = 2;
                g[40] = 1;
                g[81] = 1;
                g
            }
        }
    }

    pub fn types(self) -> (Vec<u64>, Vec<u64>) {
        match self {
            Profile::Toy => (vec![3, 9], vec![9, 3]),
            Profile::Paper => (vec![9, 9, 3], vec![3, 9, 9]),
            Profile::Large => {
                let mut t1 = vec![243; LARGE_BLOCKS];
                t1.push(3);
                let mut t2 = vec![3];
                t2.extend(std::iter::repeat_n(243, LARGE_BLOCKS));
                (t1, t2)
            }
        }
    }

    pub fn params(self) -> SchemeParams {
        let g = self.modulus();
        let field = Field::new(g.len() - 1, &g).expect("profile modulus is irreducible");
        let (t1, t2) = self.types();
        let n = field.degree();
        SchemeParams::new(
            Group::new(field),
            SignatureType::for_degree(&t1, n).expect("profile type"),
            SignatureType::for_degree(&t2, n).expect("profile type"),
        )
        .expect("profile types fit the field")
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown profile {s:?} (toy, paper, large)"))
    }
}

/// Key-size arithmetic for a uniform type (r, ..., r) with s blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizingReport {
    pub radix: u64,
    pub blocks: usize,
    /// Claimed log_3 q of the target field.
    pub claimed_degree: usize,
    /// s * r.
    pub rows_per_signature: u64,
    /// log_3 of r^s, i.e. the degree the type actually covers.
    pub covered_degree: usize,
    pub warnings: Vec<String>,
}

impl SizingReport {
    pub fn uniform(radix: u64, blocks: usize, claimed_degree: usize) -> SizingReport {
        let h = (radix as f64).log(3.0).round() as usize;
        let covered_degree = h * blocks;
        let mut warnings = Vec::new();
        if 3u64.checked_pow(h as u32) != Some(radix) {
            warnings.push(format!("radix {radix} is not a power of 3"));
        }
        if covered_degree != claimed_degree {
            warnings.push(format!(
                "type ({radix})^{blocks} covers 3^{covered_degree} elements, not q = 3^{claimed_degree}"
            ));
        }
        if claimed_degree.is_multiple_of(2) {
            warnings.push(format!(
                "q = 3^{claimed_degree} is not an odd power of 3, so no small Ree group is defined over it"
            ));
        }
        SizingReport {
            radix,
            blocks,
            claimed_degree,
            rows_per_signature: radix * blocks as u64,
            covered_degree,
            warnings,
        }
    }

    /// The commonly quoted 128-bit sizing: q = 3^80, r_i = 3^5, s = 8.
    pub fn quoted_128_bit() -> SizingReport {
        Self::uniform(243, 8, 80)
    }

    /// Sizing of a concrete parameter set.
    pub fn for_params(params: &SchemeParams) -> Vec<(String, u64)> {
        vec![
            (
                "rows beta_1 / alpha_1 / gamma_1".into(),
                params.type1.row_count() as u64,
            ),
            (
                "rows beta_2 / alpha_2 / gamma_2".into(),
                params.type2.row_count() as u64,
            ),
            ("ciphertext field elements".into(), 9),
            ("ciphertext trits".into(), 9 * params.degree() as u64),
        ]
    }
}

impl fmt::Display for SizingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type: {} blocks of r = {}", self.blocks, self.radix)?;
        writeln!(f, "rows per signature (s * r): {}", self.rows_per_signature)?;
        writeln!(f, "covered field: 3^{}", self.covered_degree)?;
        writeln!(f, "claimed field: 3^{}", self.claimed_degree)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
