//! Closed-form equilibrium frequencies for three sub-families.

mod simplest;
mod symmetric;
mod uniform;

use std::fmt;
use std::str::FromStr;

pub use simplest::{
    a_coef, b_coef, characteristic_roots, k0, k1, simplest_dinucleotides, simplest_limit, SimplestTable,
};
pub use symmetric::{
    cpg_oe, k_cg, k_ta, l_ta_formula, symmetric_ypr, tpa_oe, SlopeMethod, SymmetricFrequencies, SymmetricParameters,
};
pub use uniform::{cpg_only_uniform, uniform_k, uniform_nucleotides, uniform_ypr, UniformRates};

use crate::error::{Error, Result};
use crate::model::{RateParameters, YprEdge};
use crate::nucleotide::{Nucleotide, Ypr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    CpgOnly,
    Symmetric,
    Simplest,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Uniform, Family::CpgOnly, Family::Symmetric, Family::Simplest];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::CpgOnly => "cpg-only",
            Family::Symmetric => "symmetric",
            Family::Simplest => "simplest",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown closed-form family {s:?}")))
    }
}

fn simplest_rho(p: &RateParameters) -> Option<f64> {
    let rho = p.r(YprEdge::CgCa);
    let ok = p.v.iter().chain(&p.w).all(|&x| x == 1.0)
        && p.r(YprEdge::CgTg) == rho
        && YprEdge::ALL.iter().all(|&e| matches!(e, YprEdge::CgCa | YprEdge::CgTg) || p.r(e) == 0.0);
    ok.then_some(rho)
}

/// Closed-form frequencies available for `p` in the given family, as
/// `(word, value)` pairs; errors if `p` is outside the family.
pub fn closed_form_words(family: Family, p: &RateParameters) -> Result<Vec<(String, f64)>> {
    let ineligible = || Error::Ineligible(format!("parameters are not in the closed-form family {family}"));
    let mut out = Vec::new();
    let push_ypr = |out: &mut Vec<(String, f64)>, f: [f64; 4]| {
        for y in Ypr::ALL {
            out.push((y.name().to_string(), f[y.index()]));
        }
    };
    let push_nuc = |out: &mut Vec<(String, f64)>, f: [f64; 4]| {
        for x in Nucleotide::ALL {
            out.push((x.to_string(), f[x.index()]));
        }
    };
    match family {
        Family::Uniform => {
            let u = UniformRates::from_params(p).ok_or_else(ineligible)?;
            push_ypr(&mut out, uniform_ypr(&u));
            push_nuc(&mut out, uniform_nucleotides(&u));
        }
        Family::CpgOnly => {
            let u = UniformRates::from_params(p).filter(|u| u.r_ac == 0.0 && u.r_tg == 0.0).ok_or_else(ineligible)?;
            let (y, n) = cpg_only_uniform(u.r_ca, u.r_gt)?;
            push_ypr(&mut out, y);
            push_nuc(&mut out, n);
        }
        Family::Symmetric => {
            let sp = SymmetricParameters::from_params(p).ok_or_else(ineligible)?;
            let f = symmetric_ypr(&sp)?;
            push_ypr(&mut out, f.ypr);
            push_nuc(&mut out, f.nucleotides);
        }
        Family::Simplest => {
            let rho = simplest_rho(p).ok_or_else(ineligible)?;
            let t = simplest_dinucleotides(rho)?;
            for x in Nucleotide::ALL {
                for y in Nucleotide::ALL {
                    out.push((format!("{x}{y}"), t.get(x, y)));
                }
            }
            push_nuc(&mut out, t.nucleotides);
        }
    }
    Ok(out)
}
