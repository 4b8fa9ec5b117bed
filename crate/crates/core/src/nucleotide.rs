use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A DNA base. The discriminant order `A, T, C, G` is used for every
/// array indexed by nucleotide and for lexicographic word order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Nucleotide {
    A = 0,
    T = 1,
    C = 2,
    G = 3,
}

pub use Nucleotide::{A, C, G, T};

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [A, T, C, G];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Nucleotide {
        Self::ALL[i & 3]
    }

    #[inline]
    pub fn is_purine(self) -> bool {
        matches!(self, A | G)
    }

    #[inline]
    pub fn is_pyrimidine(self) -> bool {
        !self.is_purine()
    }

    /// The transition partner: A <-> G, C <-> T.
    #[inline]
    pub fn star(self) -> Nucleotide {
        match self {
            A => G,
            G => A,
            C => T,
            T => C,
        }
    }

    /// Watson-Crick complement: A <-> T, C <-> G.
    #[inline]
    pub fn complement(self) -> Nucleotide {
        match self {
            A => T,
            T => A,
            C => G,
            G => C,
        }
    }

    #[inline]
    pub fn ry(self) -> Ry {
        if self.is_purine() {
            Ry::R
        } else {
            Ry::Y
        }
    }

    /// True when `self -> z` is a transition (same R/Y class, different base).
    #[inline]
    pub fn is_transition_to(self, z: Nucleotide) -> bool {
        self != z && self.is_purine() == z.is_purine()
    }

    pub fn as_char(self) -> char {
        match self {
            A => 'A',
            T => 'T',
            C => 'C',
            G => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<Nucleotide> {
        match c.to_ascii_uppercase() {
            'A' => Some(A),
            'T' => Some(T),
            'C' => Some(C),
            'G' => Some(G),
            _ => None,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Nucleotide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Nucleotide::from_char(c).ok_or_else(|| Error::Parse(format!("bad nucleotide {s:?}"))),
            _ => Err(Error::Parse(format!("bad nucleotide {s:?}"))),
        }
    }
}

/// Purine/pyrimidine class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ry {
    R,
    Y,
}

impl fmt::Display for Ry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ry::R => "R",
            Ry::Y => "Y",
        })
    }
}

/// Parse a word such as `"CGTA"`.
pub fn parse_word(s: &str) -> Result<Vec<Nucleotide>, Error> {
    s.trim()
        .chars()
        .map(|c| Nucleotide::from_char(c).ok_or_else(|| Error::Parse(format!("bad nucleotide {c:?} in {s:?}"))))
        .collect()
}

pub fn word_string(w: &[Nucleotide]) -> String {
    w.iter().map(|x| x.as_char()).collect()
}

/// All words of length `k` in lexicographic order (A < T < C < G).
pub fn all_words(k: usize) -> Vec<Vec<Nucleotide>> {
    (0..4usize.pow(k as u32)).map(|code| decode_word(code, k)).collect()
}

/// Base-4 code of a word, first letter most significant.
pub fn encode_word(w: &[Nucleotide]) -> usize {
    w.iter().fold(0, |acc, x| acc * 4 + x.index())
}

pub fn decode_word(mut code: usize, k: usize) -> Vec<Nucleotide> {
    let mut w = vec![A; k];
    for slot in w.iter_mut().rev() {
        *slot = Nucleotide::from_index(code & 3);
        code >>= 2;
    }
    w
}

/// The four YpR dinucleotides in the order used for the 4x4 system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ypr {
    CG,
    CA,
    TG,
    TA,
}

impl Ypr {
    pub const ALL: [Ypr; 4] = [Ypr::CG, Ypr::CA, Ypr::TG, Ypr::TA];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn pair(self) -> (Nucleotide, Nucleotide) {
        match self {
            Ypr::CG => (C, G),
            Ypr::CA => (C, A),
            Ypr::TG => (T, G),
            Ypr::TA => (T, A),
        }
    }

    pub fn from_pair(x: Nucleotide, y: Nucleotide) -> Option<Ypr> {
        match (x, y) {
            (C, G) => Some(Ypr::CG),
            (C, A) => Some(Ypr::CA),
            (T, G) => Some(Ypr::TG),
            (T, A) => Some(Ypr::TA),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ypr::CG => "CG",
            Ypr::CA => "CA",
            Ypr::TG => "TG",
            Ypr::TA => "TA",
        }
    }
}
