use serde::Serialize;

use super::{validate, EdgeKind, RateParameters, YprEdge};
use crate::error::{Error, Result};
use crate::nucleotide::{Nucleotide, A, C, G, T};

/// Scalar functionals of a rate table, computed once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedRates {
    /// Combined rate `c_x = w_x - max(neg r^y_x, neg r^{y*}_x)`.
    pub c: [f64; 4],
    /// Exit rate of a site holding `x` toward the other three letters.
    pub s: [f64; 4],
    pub s_r: f64,
    pub s_y: f64,
    pub u: [f64; 4],
    pub v: f64,
    pub w: f64,
    pub t_r: f64,
    pub t_y: f64,
    /// `v*_x = v_x / s_{class opposite to x}`, the normalized weights used by the YpR system.
    pub v_star: [f64; 4],
    pub kappa_r: f64,
    pub kappa_y: f64,
    pub kappa: f64,
    pub nu_r: f64,
    pub nu_y: f64,
    pub nu: f64,
    pub alpha: f64,
    pub n_alpha: f64,
    pub kappa_agt: f64,
    pub kappa_act: f64,
    pub alpha_tilde: f64,
    /// Clock rates per target: U, V, W, R, Q.
    pub clock: [[f64; 5]; 4],
}

/// Index of a clock family inside [`DerivedRates::clock`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Flag {
    U = 0,
    V = 1,
    W = 2,
    R = 3,
    Q = 4,
}

impl Flag {
    pub const ALL: [Flag; 5] = [Flag::U, Flag::V, Flag::W, Flag::R, Flag::Q];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn edge_kind(self) -> Option<EdgeKind> {
        match self {
            Flag::R => Some(EdgeKind::R),
            Flag::Q => Some(EdgeKind::Q),
            _ => None,
        }
    }
}

fn neg(x: f64) -> f64 {
    (-x).max(0.0)
}

/// All derived scalars. Rejects parameters with hard violations.
pub fn derive(p: &RateParameters) -> Result<DerivedRates> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    Ok(derive_unchecked(p))
}

pub(crate) fn derive_unchecked(p: &RateParameters) -> DerivedRates {
    let mut c = [0.0; 4];
    let mut clock = [[0.0; 5]; 4];
    for x in Nucleotide::ALL {
        let er = YprEdge::of_kind(x, EdgeKind::R);
        let eq = YprEdge::of_kind(x, EdgeKind::Q);
        let cx = p.w(x) - neg(p.r(er)).max(neg(p.r(eq)));
        c[x.index()] = cx;
        let vx = p.v(x);
        clock[x.index()] = [vx.min(cx), (vx - cx).max(0.0), (cx - vx).max(0.0), p.r(er).abs(), p.r(eq).abs()];
    }
    let s_r = p.w(A) + p.v(T) + p.v(C) + p.w(G);
    let s_y = p.v(A) + p.w(T) + p.w(C) + p.v(G);
    let s = [s_r, s_y, s_y, s_r];
    let u: [f64; 4] = std::array::from_fn(|i| p.v[i] - p.w[i]);
    let v = p.v.iter().sum::<f64>();
    let w = p.w.iter().sum::<f64>();
    let vr = p.v(A) + p.v(G);
    let vy = p.v(C) + p.v(T);
    let (t_r, t_y) = if v > 0.0 { (vr / v, vy / v) } else { (0.5, 0.5) };
    let v_star = std::array::from_fn(|i| {
        let x = Nucleotide::from_index(i);
        let sx = if x.is_purine() { s_y } else { s_r };
        if sx > 0.0 {
            p.v[i] / sx
        } else {
            0.0
        }
    });
    let m = |x: Nucleotide| p.v(x).min(c[x.index()]);
    let pos = |x: Nucleotide| (p.v(x) - c[x.index()]).max(0.0);
    let kappa_r = m(A) + m(G);
    let kappa_y = m(C) + m(T);
    let nu_r = pos(A) + pos(G);
    let nu_y = pos(C) + pos(T);
    let kappa = kappa_r + kappa_y;
    let nu = nu_r + nu_y;
    let alpha = t_r * t_y;
    let n_alpha = if alpha > 0.0 { -4.0 * (1.0 - alpha).ln() / alpha } else { f64::INFINITY };
    let kappa_agt = kappa_r + m(T);
    let kappa_act = kappa_y + m(A);
    let tot = kappa + nu;
    let alpha_tilde = if tot > 0.0 { (kappa_agt + nu_r) * (kappa_act + nu_y) / (tot * tot) } else { 0.0 };
    DerivedRates {
        c,
        s,
        s_r,
        s_y,
        u,
        v,
        w,
        t_r,
        t_y,
        v_star,
        kappa_r,
        kappa_y,
        kappa,
        nu_r,
        nu_y,
        nu,
        alpha,
        n_alpha,
        kappa_agt,
        kappa_act,
        alpha_tilde,
        clock,
    }
}

impl DerivedRates {
    pub fn clock_rate(&self, x: Nucleotide, f: Flag) -> f64 {
        self.clock[x.index()][f.index()]
    }

    /// Per-site rate of the U and V streams together (equals `v`).
    pub fn uv_rate(&self) -> f64 {
        Nucleotide::ALL.iter().map(|&x| self.clock_rate(x, Flag::U) + self.clock_rate(x, Flag::V)).sum()
    }

    /// Per-site rate of the W, R and Q streams together.
    pub fn wrq_rate(&self) -> f64 {
        Nucleotide::ALL
            .iter()
            .map(|&x| self.clock_rate(x, Flag::W) + self.clock_rate(x, Flag::R) + self.clock_rate(x, Flag::Q))
            .sum()
    }

    /// Per-site rate of all five streams.
    pub fn total_clock_rate(&self) -> f64 {
        self.uv_rate() + self.wrq_rate()
    }

    /// Nucleotide frequencies of the model with every `r` set to zero:
    /// `(v_x - u_x t_x) / s_x`.
    pub fn independent_frequencies(&self, p: &RateParameters) -> [f64; 4] {
        std::array::from_fn(|i| {
            let x = Nucleotide::from_index(i);
            let tx = if x.is_purine() { self.t_r } else { self.t_y };
            (p.v[i] - self.u[i] * tx) / self.s[i]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simplest;

    #[test]
    fn uniform_values() {
        let d = derive(&simplest(0.0).unwrap()).unwrap();
        assert_eq!(d.c, [1.0; 4]);
        assert_eq!(d.s, [4.0; 4]);
        assert_eq!(d.u, [0.0; 4]);
        assert_eq!((d.t_r, d.t_y), (0.5, 0.5));
        assert_eq!((d.kappa, d.nu, d.alpha), (4.0, 0.0, 0.25));
        assert!((d.n_alpha - 16.0 * (4.0f64 / 3.0).ln()).abs() < 1e-14);
        assert!((d.n_alpha - 4.602_913_16).abs() < 1e-6);
    }

    #[test]
    fn negative_rho_lowers_c() {
        let d = derive(&simplest(-0.5).unwrap()).unwrap();
        assert_eq!(d.c[A.index()], 0.5);
        assert_eq!(d.c[T.index()], 0.5);
        assert_eq!(d.c[C.index()], 1.0);
        assert_eq!(d.clock_rate(A, Flag::V), 0.5);
        assert_eq!(d.clock_rate(A, Flag::R), 0.5);
        assert_eq!(d.alpha, 0.25);
        let d = derive(&simplest(2.0).unwrap()).unwrap();
        assert_eq!(d.c, [1.0; 4]);
    }
}
