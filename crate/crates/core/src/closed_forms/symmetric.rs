//! Strand-symmetric rates: S = {C, G}, W = {A, T}.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{symmetric, RateParameters};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricParameters {
    pub v_s: f64,
    pub v_w: f64,
    pub w_s: f64,
    pub w_w: f64,
    /// `r^A_C = r^T_G`
    pub r_s: f64,
    /// `r^C_A = r^G_T`
    pub r_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricFrequencies {
    /// `(F(CG), F(CA), F(TG), F(TA))`
    pub ypr: [f64; 4],
    /// `(F(A), F(T), F(C), F(G))`
    pub nucleotides: [f64; 4],
}

impl SymmetricParameters {
    pub fn new(v_s: f64, v_w: f64, w_s: f64, w_w: f64, r_s: f64, r_w: f64) -> Result<Self> {
        let sp = SymmetricParameters { v_s, v_w, w_s, w_w, r_s, r_w };
        sp.params()?;
        Ok(sp)
    }

    pub fn params(&self) -> Result<RateParameters> {
        symmetric(self.v_s, self.v_w, self.w_s, self.w_w, self.r_s, self.r_w)
    }

    pub fn with_r_w(&self, r_w: f64) -> Self {
        SymmetricParameters { r_w, ..*self }
    }

    pub fn sigma_s(&self) -> f64 {
        self.v_s + self.w_s
    }
    pub fn sigma_w(&self) -> f64 {
        self.v_w + self.w_w
    }
    pub fn v0(&self) -> f64 {
        self.v_s + self.v_w
    }
    pub fn w0(&self) -> f64 {
        self.w_s + self.w_w
    }
    pub fn sigma(&self) -> f64 {
        self.sigma_s() + self.sigma_w()
    }

    /// Recognize a strand-symmetric table carrying only `r_S`, `r_W`.
    pub fn from_params(p: &RateParameters) -> Option<Self> {
        use crate::model::YprEdge as E;
        use crate::nucleotide::{A, C, G, T};
        let ok = p.v(C) == p.v(G)
            && p.v(A) == p.v(T)
            && p.w(C) == p.w(G)
            && p.w(A) == p.w(T)
            && p.r(E::CgCa) == p.r(E::CgTg)
            && p.r(E::TaCa) == p.r(E::TaTg)
            && [E::CaCg, E::CaTa, E::TgCg, E::TgTa].iter().all(|&e| p.r(e) == 0.0);
        ok.then(|| SymmetricParameters {
            v_s: p.v(C),
            v_w: p.v(A),
            w_s: p.w(C),
            w_w: p.w(A),
            r_s: p.r(E::TaCa),
            r_w: p.r(E::CgCa),
        })
    }
}

/// Frequencies from the D-polynomials: `F(xy) = D(xy) / (4 D)`.
pub fn symmetric_ypr(sp: &SymmetricParameters) -> Result<SymmetricFrequencies> {
    let (ss, sw, v0, s) = (sp.sigma_s(), sp.sigma_w(), sp.v0(), sp.sigma());
    let (rs, rw) = (sp.r_s, sp.r_w);
    let base = s + 2.0 * v0;
    let d0 = s * s * base;
    let d_s = s * base + s * sp.w_w + v0 * sw;
    let d_w = s * base + s * sp.w_s + v0 * ss;
    let d_sw = 2.0 * (s + v0);
    let d = d0 + rs * d_s + rw * d_w + rs * rw * d_sw;
    if !(d.abs() > 0.0) || !d.is_finite() {
        return Err(Error::Solver("degenerate symmetric parameters (D = 0)".into()));
    }
    let d_cg = base * ss * ss + rs * (s * sp.w_s + ss * (v0 + 2.0 * sp.v_s));
    let d_ta = base * sw * sw + rw * (s * sp.w_w + sw * (v0 + 2.0 * sp.v_w));
    let d_ca = base * ss * sw + rs * sw * (s + v0 + sp.v_s) + rw * ss * (s + v0 + sp.v_w) + rs * rw * (s + v0);
    let f_cg = d_cg / (4.0 * d);
    let f_ca = d_ca / (4.0 * d);
    let f_ta = d_ta / (4.0 * d);
    let f_c = (ss / 2.0 - rw * f_cg + rs * f_ta) / s;
    let f_a = 0.5 - f_c;
    Ok(SymmetricFrequencies { ypr: [f_cg, f_ca, f_ca, f_ta], nucleotides: [f_a, f_a, f_c, f_c] })
}

pub fn cpg_oe(sp: &SymmetricParameters) -> Result<f64> {
    let f = symmetric_ypr(sp)?;
    let den = f.nucleotides[2] * f.nucleotides[3];
    if !(den > 0.0) {
        return Err(Error::Solver("F(C) F(G) = 0".into()));
    }
    Ok(f.ypr[0] / den)
}

pub fn tpa_oe(sp: &SymmetricParameters) -> Result<f64> {
    let f = symmetric_ypr(sp)?;
    let den = f.nucleotides[0] * f.nucleotides[1];
    if !(den > 0.0) {
        return Err(Error::Solver("F(A) F(T) = 0".into()));
    }
    Ok(f.ypr[3] / den)
}

/// How the first-order coefficients in `ratio = 1 - r_W K + o(r_W)` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeMethod {
    /// Richardson-extrapolated central difference of the exact ratio at `r_W = 0`.
    Numeric,
    /// Closed rational expressions, kept for comparison only. They agree
    /// with the numeric slope at the uniform point but not in general; `v`
    /// in the `L_TA` numerator is read as `v0`.
    Formula,
}

fn minus_slope(f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let h = 1e-4;
    let d = |h: f64| -> Result<f64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    let (d1, d2) = (d(h)?, d(h / 2.0)?);
    Ok(-(4.0 * d2 - d1) / 3.0)
}

/// `K_CG` with `r_S = 0` and `r_W -> 0`.
pub fn k_cg(sp: &SymmetricParameters, method: SlopeMethod) -> Result<f64> {
    let base = SymmetricParameters { r_s: 0.0, r_w: 0.0, ..*sp };
    match method {
        SlopeMethod::Numeric => minus_slope(|rw| cpg_oe(&base.with_r_w(rw))),
        SlopeMethod::Formula => {
            let (s, v0) = (base.sigma(), base.v0());
            Ok(((s + 3.0 * v0) * base.sigma_w() + s * base.w_w) / (s * s * (s + 2.0 * v0)))
        }
    }
}

/// The numerator `L_TA` of the closed `K_TA` expression (with `v` read as `v0`).
pub fn l_ta_formula(sp: &SymmetricParameters) -> f64 {
    let (s, v0, ss, sw, ww, vw) = (sp.sigma(), sp.v0(), sp.sigma_s(), sp.sigma_w(), sp.w_w, sp.v_w);
    let base = s + 2.0 * v0;
    sw * ss * ss * base + sw * sw * (s * base + s * ww + v0 * sw) - s * s * (s * ww + v0 * sw) - 2.0 * s * s * sw * vw
}

/// `K_TA` with `r_S = 0` and `r_W -> 0`.
pub fn k_ta(sp: &SymmetricParameters, method: SlopeMethod) -> Result<f64> {
    let base = SymmetricParameters { r_s: 0.0, r_w: 0.0, ..*sp };
    match method {
        SlopeMethod::Numeric => minus_slope(|rw| tpa_oe(&base.with_r_w(rw))),
        SlopeMethod::Formula => {
            let (s, w0, v0) = (base.sigma(), base.w0(), base.v0());
            Ok(l_ta_formula(&base) / (s * s * w0 * w0 * (s + 2.0 * v0)))
        }
    }
}
