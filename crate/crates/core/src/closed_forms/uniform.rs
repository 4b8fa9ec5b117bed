//! Closed forms when every single-site rate equals 1 and only CG and TA
//! carry YpR increments.

use crate::error::{Error, Result};
use crate::model::{RateParameters, YprEdge};
use crate::scalar::Scalar;

/// YpR increments of the uniform family: `r^C_A, r^G_T, r^A_C, r^T_G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformRates {
    pub r_ca: f64,
    pub r_gt: f64,
    pub r_ac: f64,
    pub r_tg: f64,
}

impl UniformRates {
    pub fn new(r_ca: f64, r_gt: f64, r_ac: f64, r_tg: f64) -> Result<Self> {
        let u = UniformRates { r_ca, r_gt, r_ac, r_tg };
        if [r_ca, r_gt, r_ac, r_tg].iter().any(|&r| !(1.0 + r >= 0.0) || !r.is_finite()) {
            return Err(Error::InvalidParameters(vec![format!("uniform family needs 1 + r >= 0, got {u:?}")]));
        }
        Ok(u)
    }

    pub fn params(&self) -> RateParameters {
        RateParameters::from_vw(|_| 1.0, |_| 1.0)
            .with_r(YprEdge::CgCa, self.r_ca)
            .with_r(YprEdge::CgTg, self.r_gt)
            .with_r(YprEdge::TaCa, self.r_ac)
            .with_r(YprEdge::TaTg, self.r_tg)
    }

    /// Recognize a rate table of this family.
    pub fn from_params(p: &RateParameters) -> Option<Self> {
        let unit = p.v.iter().chain(&p.w).all(|&x| x == 1.0);
        let others = [YprEdge::CaCg, YprEdge::CaTa, YprEdge::TgCg, YprEdge::TgTa].iter().all(|&e| p.r(e) == 0.0);
        (unit && others).then(|| UniformRates {
            r_ca: p.r(YprEdge::CgCa),
            r_gt: p.r(YprEdge::CgTg),
            r_ac: p.r(YprEdge::TaCa),
            r_tg: p.r(YprEdge::TaTg),
        })
    }
}

/// `(k(CG), k(CA), k(TG), k(TA))` and `K`, with `F(xy) = (1 + k(xy)/K)/16`.
pub fn uniform_k<S: Scalar>(r_ca: S, r_gt: S, r_ac: S, r_tg: S) -> ([S; 4], S) {
    let c = S::int;
    let q_cg = r_ca.clone() + r_gt.clone();
    let q_ta = r_ac.clone() + r_tg.clone();
    let prod = q_cg.clone() * q_ta.clone();
    let big_k = c(32) + c(5) * (q_cg.clone() + q_ta.clone()) + c(3) * prod.clone() / c(4);
    let f_ta = c(1) + c(3) * q_ta.clone() / c(16);
    let f_cg = c(1) + c(3) * q_cg.clone() / c(16);
    let k_cg = q_ta.clone() - c(5) * q_cg.clone() - c(3) * prod.clone() / c(4);
    let k_ca =
        (c(5) * r_ca.clone() - r_gt.clone()) * f_ta.clone() + (c(5) * r_ac.clone() - r_tg.clone()) * f_cg.clone();
    let k_tg = (c(5) * r_gt - r_ca) * f_ta + (c(5) * r_tg - r_ac) * f_cg;
    let k_ta = q_cg - c(5) * q_ta - c(3) * prod / c(4);
    ([k_cg, k_ca, k_tg, k_ta], big_k)
}

/// `(F(CG), F(CA), F(TG), F(TA))`.
pub fn uniform_ypr(u: &UniformRates) -> [f64; 4] {
    let (k, big_k) = uniform_k(u.r_ca, u.r_gt, u.r_ac, u.r_tg);
    k.map(|kx| (1.0 + kx / big_k) / 16.0)
}

/// `(F(A), F(T), F(C), F(G))`.
pub fn uniform_nucleotides(u: &UniformRates) -> [f64; 4] {
    let q_cg = u.r_ca + u.r_gt;
    let q_ta = u.r_ac + u.r_tg;
    let (_, big_k) = uniform_k(u.r_ca, u.r_gt, u.r_ac, u.r_tg);
    let f_cg = (32.0 + 6.0 * q_ta) / (16.0 * big_k);
    let f_ta = (32.0 + 6.0 * q_cg) / (16.0 * big_k);
    let a = 1.0 + u.r_ca * f_cg - u.r_tg * f_ta;
    let g = 1.0 - u.r_ca * f_cg + u.r_tg * f_ta;
    let t = 1.0 + u.r_gt * f_cg - u.r_ac * f_ta;
    let c = 1.0 - u.r_gt * f_cg + u.r_ac * f_ta;
    [a / 4.0, t / 4.0, c / 4.0, g / 4.0]
}

/// Uniform rates with only CpG increments: YpR quadruple and nucleotides.
pub fn cpg_only_uniform(r_ca: f64, r_gt: f64) -> Result<([f64; 4], [f64; 4])> {
    UniformRates::new(r_ca, r_gt, 0.0, 0.0)?;
    let big_k = 32.0 + 5.0 * (r_ca + r_gt);
    let q = r_ca + r_gt;
    let ypr = [
        32.0 / (16.0 * big_k),
        (32.0 + 4.0 * r_gt + 10.0 * r_ca) / (16.0 * big_k),
        (32.0 + 4.0 * r_ca + 10.0 * r_gt) / (16.0 * big_k),
        (32.0 + 6.0 * q) / (16.0 * big_k),
    ];
    let nuc = [
        (1.0 + 2.0 * r_ca / big_k) / 4.0,
        (1.0 + 2.0 * r_gt / big_k) / 4.0,
        (1.0 - 2.0 * r_gt / big_k) / 4.0,
        (1.0 - 2.0 * r_ca / big_k) / 4.0,
    ];
    Ok((ypr, nuc))
}
