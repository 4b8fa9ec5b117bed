//! Rate parameterizations of the R/Y + YpR model.
//!
//! A model is 16 numbers: a transversion rate `v[x]` and a transition rate
//! `w[x]` for every target nucleotide `x`, and eight context increments
//! attached to the YpR dinucleotides.

mod classical;
mod derived;
mod doc;
mod validate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nucleotide::{Nucleotide, Ypr, A, C, G, T};

pub use classical::{classify, from_classical, ClassicalKind};
pub use derived::{derive, DerivedRates, Flag};
pub use doc::{model_from_json, model_from_value, model_to_json, model_to_value};
pub use validate::{validate, ValidationReport};

/// Which clock stream carries a YpR increment: `R` for CG/TA sources,
/// `Q` for CA/TG sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    R,
    Q,
}

/// One of the eight YpR substitutions `source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YprEdge {
    CgCa,
    CgTg,
    TaCa,
    TaTg,
    CaCg,
    CaTa,
    TgCg,
    TgTa,
}

struct EdgeInfo {
    key: &'static str,
    source: Ypr,
    target: Nucleotide,
    neighbor: Nucleotide,
    kind: EdgeKind,
}

const EDGE_INFO: [EdgeInfo; 8] = [
    EdgeInfo { key: "CG:CA", source: Ypr::CG, target: A, neighbor: C, kind: EdgeKind::R },
    EdgeInfo { key: "CG:TG", source: Ypr::CG, target: T, neighbor: G, kind: EdgeKind::R },
    EdgeInfo { key: "TA:CA", source: Ypr::TA, target: C, neighbor: A, kind: EdgeKind::R },
    EdgeInfo { key: "TA:TG", source: Ypr::TA, target: G, neighbor: T, kind: EdgeKind::R },
    EdgeInfo { key: "CA:CG", source: Ypr::CA, target: G, neighbor: C, kind: EdgeKind::Q },
    EdgeInfo { key: "CA:TA", source: Ypr::CA, target: T, neighbor: A, kind: EdgeKind::Q },
    EdgeInfo { key: "TG:CG", source: Ypr::TG, target: C, neighbor: G, kind: EdgeKind::Q },
    EdgeInfo { key: "TG:TA", source: Ypr::TG, target: A, neighbor: T, kind: EdgeKind::Q },
];

impl YprEdge {
    pub const ALL: [YprEdge; 8] = [
        YprEdge::CgCa,
        YprEdge::CgTg,
        YprEdge::TaCa,
        YprEdge::TaTg,
        YprEdge::CaCg,
        YprEdge::CaTa,
        YprEdge::TgCg,
        YprEdge::TgTa,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    fn info(self) -> &'static EdgeInfo {
        &EDGE_INFO[self as usize]
    }

    /// Serialization key such as `"CG:CA"`.
    pub fn key(self) -> &'static str {
        self.info().key
    }

    pub fn source(self) -> Ypr {
        self.info().source
    }

    /// The nucleotide produced by the substitution (subscript of `r^y_x`).
    pub fn target(self) -> Nucleotide {
        self.info().target
    }

    /// The unchanged neighbor (superscript of `r^y_x`).
    pub fn neighbor(self) -> Nucleotide {
        self.info().neighbor
    }

    pub fn kind(self) -> EdgeKind {
        self.info().kind
    }

    /// Target dinucleotide, e.g. `CA` for `CG:CA`.
    pub fn target_pair(self) -> (Nucleotide, Nucleotide) {
        let (y, z) = self.source().pair();
        if self.target().is_purine() {
            (y, self.target())
        } else {
            (self.target(), z)
        }
    }

    /// The edge producing `x` next to the neighbor `y`, i.e. `r^y_x`.
    /// Purine targets look at their left neighbor, pyrimidine targets at
    /// their right one; `y` must be of the opposite class.
    #[inline]
    pub fn for_target(x: Nucleotide, y: Nucleotide) -> Option<YprEdge> {
        use YprEdge::*;
        Some(match (x, y) {
            (A, C) => CgCa,
            (A, T) => TgTa,
            (G, T) => TaTg,
            (G, C) => CaCg,
            (C, A) => TaCa,
            (C, G) => TgCg,
            (T, G) => CgTg,
            (T, A) => CaTa,
            _ => return None,
        })
    }

    /// The stream of the given kind producing `x`.
    pub fn of_kind(x: Nucleotide, kind: EdgeKind) -> YprEdge {
        Nucleotide::ALL
            .iter()
            .filter_map(|&y| YprEdge::for_target(x, y))
            .find(|e| e.kind() == kind)
            .expect("every target has one edge of each kind")
    }
}

impl fmt::Display for YprEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for YprEdge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        YprEdge::ALL
            .into_iter()
            .find(|e| e.key() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown YpR edge {s:?}")))
    }
}

/// The 16 rates of a model, generic over the scalar so the same table
/// drives both floating-point and exact rational computations.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable<S> {
    pub v: [S; 4],
    pub w: [S; 4],
    pub r: [S; 8],
}

/// Floating-point rate parameters.
pub type RateParameters = RateTable<f64>;

impl<S: Clone> RateTable<S> {
    pub fn v(&self, x: Nucleotide) -> S {
        self.v[x.index()].clone()
    }

    pub fn w(&self, x: Nucleotide) -> S {
        self.w[x.index()].clone()
    }

    pub fn r(&self, e: YprEdge) -> S {
        self.r[e.index()].clone()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&S) -> U) -> RateTable<U> {
        RateTable {
            v: std::array::from_fn(|i| f(&self.v[i])),
            w: std::array::from_fn(|i| f(&self.w[i])),
            r: std::array::from_fn(|i| f(&self.r[i])),
        }
    }
}

impl<S> RateTable<S>
where
    S: Clone + std::ops::Add<Output = S>,
{
    /// Rate at which the middle site of `left cur right` becomes `z`.
    /// Callers guarantee `z != cur`.
    #[inline]
    pub fn move_rate(&self, left: Nucleotide, cur: Nucleotide, right: Nucleotide, z: Nucleotide) -> S {
        debug_assert_ne!(cur, z);
        if !cur.is_transition_to(z) {
            return self.v[z.index()].clone();
        }
        let neighbor = if z.is_purine() { left } else { right };
        match YprEdge::for_target(z, neighbor) {
            Some(e) => self.w[z.index()].clone() + self.r[e.index()].clone(),
            None => self.w[z.index()].clone(),
        }
    }
}

impl RateParameters {
    pub fn zero() -> Self {
        RateTable { v: [0.0; 4], w: [0.0; 4], r: [0.0; 8] }
    }

    /// Build from per-nucleotide closures, `r` all zero.
    pub fn from_vw(v: impl Fn(Nucleotide) -> f64, w: impl Fn(Nucleotide) -> f64) -> Self {
        let mut p = Self::zero();
        for x in Nucleotide::ALL {
            p.v[x.index()] = v(x);
            p.w[x.index()] = w(x);
        }
        p
    }

    pub fn with_r(mut self, e: YprEdge, value: f64) -> Self {
        self.r[e.index()] = value;
        self
    }

    /// Transversion rate toward `x`.
    pub fn set_v(&mut self, x: Nucleotide, value: f64) {
        self.v[x.index()] = value;
    }

    pub fn set_w(&mut self, x: Nucleotide, value: f64) {
        self.w[x.index()] = value;
    }

    pub fn set_r(&mut self, e: YprEdge, value: f64) {
        self.r[e.index()] = value;
    }

    /// Image under the complement involution A<->T, C<->G (reading the
    /// other strand). The edge `xy -> x'y` maps to `y^c x^c -> y^c x'^c`.
    pub fn complement(&self) -> Self {
        let mut out = Self::zero();
        for x in Nucleotide::ALL {
            out.v[x.complement().index()] = self.v(x);
            out.w[x.complement().index()] = self.w(x);
        }
        for e in YprEdge::ALL {
            let img = YprEdge::for_target(e.target().complement(), e.neighbor().complement())
                .expect("complement maps YpR edges to YpR edges");
            out.r[img.index()] = self.r(e);
        }
        out
    }

    /// Rate of the move `left cur right -> left z right`; also valid for
    /// `z == cur`, returning 0.
    pub fn rate(&self, left: Nucleotide, cur: Nucleotide, right: Nucleotide, z: Nucleotide) -> f64 {
        if z == cur {
            0.0
        } else {
            self.move_rate(left, cur, right, z)
        }
    }

    /// True when every rate is finite.
    pub fn is_finite(&self) -> bool {
        self.v.iter().chain(&self.w).chain(&self.r).all(|x| x.is_finite())
    }
}

/// The simplest model: all `v = w = 1`, `r^C_A = r^G_T = rho`.
pub fn simplest(rho: f64) -> Result<RateParameters> {
    if !(rho >= -1.0) || !rho.is_finite() {
        return Err(Error::InvalidParameters(vec![format!("simplest model needs rho >= -1, got {rho}")]));
    }
    Ok(RateParameters::from_vw(|_| 1.0, |_| 1.0).with_r(YprEdge::CgCa, rho).with_r(YprEdge::CgTg, rho))
}

/// Strand-symmetric rates: `v_C = v_G = vS`, `v_A = v_T = vW`, likewise for
/// `w`, `r^C_A = r^G_T = rW`, `r^A_C = r^T_G = rS`.
pub fn symmetric(v_s: f64, v_w: f64, w_s: f64, w_w: f64, r_s: f64, r_w: f64) -> Result<RateParameters> {
    let strong = |x: Nucleotide| matches!(x, C | G);
    let p = RateParameters::from_vw(|x| if strong(x) { v_s } else { v_w }, |x| if strong(x) { w_s } else { w_w })
        .with_r(YprEdge::CgCa, r_w)
        .with_r(YprEdge::CgTg, r_w)
        .with_r(YprEdge::TaCa, r_s)
        .with_r(YprEdge::TaTg, r_s);
    let report = validate(&p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    Ok(p)
}
