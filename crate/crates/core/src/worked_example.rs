//! Reference key material and expected values over GF(3^5), g = x^5 + 2x + 1,
//! types (9, 9, 3) and (3, 9, 9). Values are written as generator exponents
//! (`None` for zero) except the signature rows, which are trit strings.
//!
//! Transcription notes on the source tables:
//! - beta_2, block 2, row 6 (`10200`) has no exponent printed next to it;
//!   the row itself is unambiguous and equals a^195.
//! - alpha_1, block 1, row 0 is printed as (a^48, 0, a^26), i.e. with a zero
//!   b-coordinate although cover entries are meant to be nonzero. It is
//!   kept verbatim: gamma_1 row h1(0) only reproduces with the zero.
//! - The translation table labels the fourth t_1 inverse as `t-10(1)`; the
//!   value is the inverse of t_3(1) = t_0(2) and is not needed as input.
//! - The combine step of decryption is printed as f(y1)^-1 D1 in the formula
//!   and as f(y1) D1 in the numeric line. Only the inverse reproduces
//!   S(0, a^2, a^176).

use crate::field::Field;
use crate::group::{Group, GroupElement};
use crate::logsig::{Cover, LogSignature, SignatureType};
use crate::scheme::{self, Plaintext, PrivateKey, PublicKey, Randomness, SchemeParams};

type Pow = Option<u32>;
type Triple = (Pow, Pow, Pow);

const N: Pow = None;

/// x^5 + 2x + 1, ascending.
pub const MODULUS: [u8; 6] = [1, 2, 0, 0, 0, 1];
pub const TYPE1: [u64; 3] = [9, 9, 3];
pub const TYPE2: [u64; 3] = [3, 9, 9];

pub const BETA1: [&[&str]; 3] = [
    &[
        "00000", "10000", "20000", "01000", "11000", "21000", "02000", "12000", "22000",
    ],
    &[
        "21000", "12100", "02200", "12010", "01110", "20210", "20020", "11120", "11220",
    ],
    &["01120", "02201", "22202"],
];

/// Exponent printed beside each beta_1 row.
pub const BETA1_POWERS: [&[Pow]; 3] = [
    &[
        N,
        Some(0),
        Some(121),
        Some(1),
        Some(69),
        Some(5),
        Some(122),
        Some(126),
        Some(190),
    ],
    &[
        Some(5),
        Some(138),
        Some(191),
        Some(198),
        Some(11),
        Some(36),
        Some(86),
        Some(39),
        Some(22),
    ],
    &[Some(102), Some(150), Some(21)],
];

pub const BETA2: [&[&str]; 3] = [
    &["00000", "10000", "20000"],
    &[
        "00000", "21000", "22000", "10100", "01100", "22100", "10200", "21200", "22200",
    ],
    &[
        "21200", "12110", "10220", "22201", "01011", "10221", "10102", "20012", "10222",
    ],
];

/// Exponent printed beside each beta_2 row; block 2 row 6 is blank in the
/// source and filled in from the row.
pub const BETA2_POWERS: [&[Pow]; 3] = [
    &[N, Some(0), Some(121)],
    &[
        N,
        Some(5),
        Some(190),
        Some(46),
        Some(70),
        Some(222),
        Some(195),
        Some(17),
        Some(131),
    ],
    &[
        Some(17),
        Some(30),
        Some(109),
        Some(105),
        Some(228),
        Some(154),
        Some(206),
        Some(220),
        Some(239),
    ],
];

const fn t(a: u32, b: u32, c: u32) -> Triple {
    (Some(a), Some(b), Some(c))
}

const fn u(b: u32, c: u32) -> Triple {
    (None, Some(b), Some(c))
}

pub const ALPHA1: [&[Triple]; 3] = [
    &[
        (Some(48), None, Some(26)),
        t(61, 11, 159),
        t(233, 206, 67),
        t(165, 204, 190),
        t(6, 1, 78),
        t(132, 85, 65),
        t(24, 12, 79),
        t(190, 211, 216),
        t(19, 104, 98),
    ],
    &[
        t(165, 28, 21),
        t(204, 176, 228),
        t(135, 126, 115),
        t(215, 208, 99),
        t(127, 69, 103),
        t(150, 80, 206),
        t(150, 43, 186),
        t(54, 61, 34),
        t(7, 51, 108),
    ],
    &[t(78, 205, 15), t(1, 26, 114), t(166, 38, 31)],
];

pub const ALPHA2: [&[Triple]; 3] = [
    &[u(139, 205), u(106, 210), u(86, 171)],
    &[
        u(131, 132),
        u(133, 177),
        u(198, 96),
        u(101, 165),
        u(32, 88),
        u(239, 11),
        u(233, 85),
        u(0, 230),
        u(110, 93),
    ],
    &[
        u(241, 96),
        u(197, 165),
        u(117, 126),
        u(155, 152),
        u(156, 95),
        u(216, 34),
        u(24, 226),
        u(240, 55),
        u(35, 168),
    ],
];

/// t_0(1) .. t_3(1).
pub const T1: [Triple; 4] = [
    t(123, 31, 51),
    t(133, 94, 26),
    t(205, 149, 164),
    t(241, 69, 45),
];
/// t_0(2) .. t_3(2); t_0(2) = t_3(1).
pub const T2: [Triple; 4] = [
    t(241, 69, 45),
    t(206, 130, 106),
    t(49, 10, 180),
    t(97, 43, 118),
];
/// Printed inverses of T1 and T2.
pub const T1_INV: [Triple; 4] = [
    t(2, 218, 170),
    t(12, 94, 147),
    t(84, 94, 214),
    t(120, 28, 35),
];
pub const T2_INV: [Triple; 4] = [
    t(120, 28, 35),
    t(85, 174, 19),
    t(170, 228, 211),
    t(218, 37, 113),
];

pub const GAMMA1: [&[Triple]; 3] = [
    &[
        t(193, 238, 29),
        t(193, 4, 96),
        t(193, 42, 166),
        t(193, 213, 134),
        t(193, 203, 19),
        t(193, 231, 180),
        t(193, 167, 214),
        t(193, 179, 133),
        t(193, 1, 70),
    ],
    &[
        t(10, 15, 83),
        t(10, 212, 82),
        t(10, 215, 43),
        t(10, 210, 185),
        t(10, 141, 81),
        t(10, 115, 162),
        t(10, 22, 144),
        t(10, 61, 232),
        t(10, 197, 209),
    ],
    &[t(75, 5, 168), t(75, 141, 135), t(75, 231, 57)],
];

pub const GAMMA2: [&[Triple]; 3] = [
    &[t(2, 160, 106), t(2, 160, 131), t(2, 160, 122)],
    &[
        t(56, 56, 209),
        t(56, 56, 146),
        t(56, 56, 7),
        t(56, 56, 167),
        t(56, 56, 32),
        t(56, 56, 96),
        t(56, 56, 132),
        t(56, 56, 2),
        t(56, 56, 177),
    ],
    &[
        t(63, 68, 185),
        t(63, 68, 169),
        t(63, 68, 26),
        t(63, 68, 223),
        t(63, 68, 123),
        t(63, 68, 26),
        t(63, 68, 92),
        t(63, 68, 212),
        t(63, 68, 15),
    ],
];

pub const R1: u64 = 29;
pub const R2: u64 = 31;
pub const R1_DIGITS: [u32; 3] = [2, 3, 0];
pub const R2_DIGITS: [u32; 3] = [1, 1, 1];

/// m = S(0, a^0, a^1).
pub const MESSAGE: Triple = (None, Some(0), Some(1));

/// Expected values along the encryption and decryption.
pub struct Expected;

impl Expected {
    pub const GAMMA1_R1: Triple = t(206, 106, 219);
    pub const GAMMA2_R2: Triple = t(18, 154, 151);
    pub const Y1: Triple = t(86, 186, 113);
    pub const Y2: Triple = t(238, 210, 0);
    pub const Y3: Triple = (None, None, Some(66));
    pub const D1: Triple = (None, Some(233), Some(143));
    pub const DSTAR1: Triple = (None, Some(2), Some(176));
    pub const GAMMA1_R1_INV: Triple = t(85, 171, 11);
    pub const Y2_REDUCED: Triple = t(18, 154, 151);
    pub const D2: Triple = (None, None, Some(8));
    pub const Y3_INV: Triple = (None, None, Some(187));
    pub const DSTAR2: Triple = (None, None, Some(227));
    pub const ALPHA2_R2: Triple = (None, Some(66), Some(139));
    pub const ALPHA1_R1: Triple = t(86, 34, 217);
    /// beta_1(R1) = a^2 and its factorization residues.
    pub const BETA1_VALUE: &'static str = "00100";
    pub const BETA1_RESIDUES: [&'static str; 3] = ["02010", "20000", "00000"];
    pub const BETA2_VALUE: &'static str = "10110";
    pub const BETA2_RESIDUES: [&'static str; 3] = ["01000", "10000", "00000"];
}

/// Everything needed to replay the example.
pub struct WorkedExample {
    pub params: SchemeParams,
    pub public: PublicKey,
    pub private: PrivateKey,
}

impl WorkedExample {
    pub fn field() -> Field {
        Field::new(5, &MODULUS).expect("x^5 + 2x + 1 is irreducible with primitive x")
    }

    pub fn group() -> Group {
        Group::new(Self::field())
    }

    /// Builds the keys from beta, alpha and t; gamma is recomputed.
    pub fn load() -> WorkedExample {
        let group = Self::group();
        let field = group.field().clone();
        let type1 = SignatureType::for_degree(&TYPE1, 5).expect("valid type");
        let type2 = SignatureType::for_degree(&TYPE2, 5).expect("valid type");
        let params = SchemeParams::new(group.clone(), type1.clone(), type2.clone())
            .expect("types match the field");

        let sig = |t: &SignatureType, rows: &[&[&str]; 3]| {
            let blocks = rows
                .iter()
                .map(|b| b.iter().map(|s| field.parse(s).expect("5 trits")).collect())
                .collect();
            LogSignature::new(&field, t.clone(), blocks).expect("tame")
        };
        let beta1 = sig(&type1, &BETA1);
        let beta2 = sig(&type2, &BETA2);
        let alpha1 = Cover::new(type1.clone(), elements(&group, &ALPHA1), false).expect("shape");
        let alpha2 = Cover::new(type2.clone(), elements(&group, &ALPHA2), true).expect("shape");
        let t1 = T1.iter().map(|x| element(&group, x)).collect();
        let t2 = T2.iter().map(|x| element(&group, x)).collect();
        let (public, private) =
            scheme::assemble_keypair(params.clone(), beta1, beta2, alpha1, alpha2, t1, t2)
                .expect("consistent key material");
        WorkedExample {
            params,
            public,
            private,
        }
    }

    pub fn message(&self) -> Plaintext {
        Plaintext::try_from(element(&self.params.group, &MESSAGE)).expect("a = 0")
    }

    pub fn randomness(&self) -> Randomness {
        Randomness::new(R1, R2)
    }

    pub fn element(&self, x: &Triple) -> GroupElement {
        element(&self.params.group, x)
    }
}

pub fn element(group: &Group, &(a, b, c): &Triple) -> GroupElement {
    group.from_powers(a, b, c)
}

pub fn elements(group: &Group, table: &[&[Triple]; 3]) -> Vec<Vec<GroupElement>> {
    table
        .iter()
        .map(|b| b.iter().map(|x| element(group, x)).collect())
        .collect()
}
