//! The 4x4 linear system satisfied by the stationary YpR frequencies.

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{validate, RateParameters, RateTable, YprEdge};
use crate::nucleotide::{Nucleotide, Ypr};
use crate::scalar::Scalar;

/// Signed YpR production rates.
///
/// `p_nuc[yz][x]` is the rate at which `x` appears because of the YpR `yz`;
/// `p_pair[zt][xy]` the rate at which the YpR `xy` appears because of `zt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YprCouplings<S> {
    pub p_nuc: [[S; 4]; 4],
    pub p_pair: [[S; 4]; 4],
    /// `q_xy = r^x_{y*} + r^y_{x*}`, total rate out of `xy` through YpR moves.
    pub q: [S; 4],
}

pub fn couplings<S: Scalar>(t: &RateTable<S>) -> YprCouplings<S> {
    let z = || S::zero();
    let mut p_nuc: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    let mut p_pair = p_nuc.clone();
    let mut q: [S; 4] = std::array::from_fn(|_| z());
    for e in YprEdge::ALL {
        let src = e.source().index();
        let r = t.r(e);
        let x = e.target();
        p_nuc[src][x.index()] = p_nuc[src][x.index()].clone() + r.clone();
        p_nuc[src][x.star().index()] = p_nuc[src][x.star().index()].clone() - r.clone();
        let (a, b) = e.target_pair();
        let dst = Ypr::from_pair(a, b).expect("YpR moves land on YpR").index();
        p_pair[src][dst] = p_pair[src][dst].clone() + r.clone();
        p_pair[src][src] = p_pair[src][src].clone() - r.clone();
        q[src] = q[src].clone() + r;
    }
    YprCouplings { p_nuc, p_pair, q }
}

/// Single-site quantities `s_x, u_x, t_x` in a scalar type.
struct SiteRates<S> {
    s: [S; 4],
    u: [S; 4],
    t: [S; 4],
    v_total: S,
    w_total: S,
}

fn site_rates<S: Scalar>(t: &RateTable<S>) -> Result<SiteRates<S>> {
    use crate::nucleotide::{A, C, G, T};
    let s_r = t.w(A) + t.v(T) + t.v(C) + t.w(G);
    let s_y = t.v(A) + t.w(T) + t.w(C) + t.v(G);
    let v_total = t.v(A) + t.v(T) + t.v(C) + t.v(G);
    let w_total = t.w(A) + t.w(T) + t.w(C) + t.w(G);
    if !(s_r > S::zero() && s_y > S::zero() && v_total > S::zero()) {
        return Err(Error::Solver("degenerate single-site rates (zero exit rate)".into()));
    }
    let t_r = (t.v(A) + t.v(G)) / v_total.clone();
    let t_y = S::one() - t_r.clone();
    let by_class = |x: Nucleotide, r: &S, y: &S| if x.is_purine() { r.clone() } else { y.clone() };
    Ok(SiteRates {
        s: std::array::from_fn(|i| by_class(Nucleotide::from_index(i), &s_r, &s_y)),
        u: std::array::from_fn(|i| t.v[i].clone() - t.w[i].clone()),
        t: std::array::from_fn(|i| by_class(Nucleotide::from_index(i), &t_r, &t_y)),
        v_total,
        w_total,
    })
}

/// The matrix `M = (v + w) Id + U + R` and right-hand side `V`, rows and
/// columns ordered `(CG, CA, TG, TA)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YprSystem<S> {
    pub m: [[S; 4]; 4],
    pub u: [[S; 4]; 4],
    pub r: [[S; 4]; 4],
    pub rhs: [S; 4],
}

pub fn ypr_system_generic<S: Scalar>(t: &RateTable<S>) -> Result<YprSystem<S>> {
    let c = couplings(t);
    let sr = site_rates(t)?;
    let zero4 = || -> [[S; 4]; 4] { std::array::from_fn(|_| std::array::from_fn(|_| S::zero())) };
    let (mut m, mut u, mut r) = (zero4(), zero4(), zero4());
    let mut rhs: [S; 4] = std::array::from_fn(|_| S::zero());
    let vw = sr.v_total.clone() + sr.w_total.clone();
    // v*_x = v_x / s_y for the pair (x, y): divide by the partner's exit rate
    let vstar = |x: Nucleotide, partner: Nucleotide| t.v(x) / sr.s[partner.index()].clone();
    for row in Ypr::ALL {
        let (x, y) = row.pair();
        let i = row.index();
        for col in Ypr::ALL {
            let (zz, tt) = col.pair();
            let j = col.index();
            let mut uu = S::zero();
            if tt == y {
                uu = uu + sr.u[x.index()].clone();
            }
            if zz == x {
                uu = uu + sr.u[y.index()].clone();
            }
            let rr = -c.p_pair[j][i].clone()
                - vstar(x, y) * c.p_nuc[j][y.index()].clone()
                - vstar(y, x) * c.p_nuc[j][x.index()].clone();
            let diag = if i == j { vw.clone() } else { S::zero() };
            m[i][j] = diag + uu.clone() + rr.clone();
            u[i][j] = uu;
            r[i][j] = rr;
        }
        let fy = (t.v(y) - sr.u[y.index()].clone() * sr.t[y.index()].clone()) / sr.s[y.index()].clone();
        let fx = (t.v(x) - sr.u[x.index()].clone() * sr.t[x.index()].clone()) / sr.s[x.index()].clone();
        rhs[i] = t.v(x) * fy + t.v(y) * fx;
    }
    Ok(YprSystem { m, u, r, rhs })
}

fn check(p: &RateParameters) -> Result<()> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    Ok(())
}

pub fn ypr_system(p: &RateParameters) -> Result<YprSystem<f64>> {
    check(p)?;
    ypr_system_generic(p)
}

/// Stationary frequencies of `(CG, CA, TG, TA)`.
pub fn ypr_frequencies(p: &RateParameters) -> Result<[f64; 4]> {
    let sys = ypr_system(p)?;
    let m = Matrix4::from_fn(|i, j| sys.m[i][j]);
    let b = Vector4::from_fn(|i, _| sys.rhs[i]);
    let lu = m.lu();
    let mut x = lu.solve(&b).ok_or_else(|| Error::Solver("singular YpR system".into()))?;
    let res = b - m * x;
    if let Some(dx) = lu.solve(&res) {
        x += dx;
    }
    Ok([x[0], x[1], x[2], x[3]])
}

/// `s_x F(x) = v_x - u_x t_x + sum_yz p_yz(x) F(yz)`, in order `A, T, C, G`.
pub fn nucleotide_frequencies_generic<S: Scalar>(t: &RateTable<S>, ypr: &[S; 4]) -> Result<[S; 4]> {
    let c = couplings(t);
    let sr = site_rates(t)?;
    Ok(std::array::from_fn(|i| {
        let mut acc = t.v[i].clone() - sr.u[i].clone() * sr.t[i].clone();
        for j in 0..4 {
            acc = acc + c.p_nuc[j][i].clone() * ypr[j].clone();
        }
        acc / sr.s[i].clone()
    }))
}

pub fn nucleotide_frequencies(p: &RateParameters, ypr: &[f64; 4]) -> Result<[f64; 4]> {
    check(p)?;
    nucleotide_frequencies_generic(p, ypr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simplest;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-13
    }

    #[test]
    fn simplest_one() {
        let p = simplest(1.0).unwrap();
        let f = ypr_frequencies(&p).unwrap();
        assert!(close(f[0], 1.0 / 21.0));
        assert!(close(f[1], 23.0 / 336.0));
        assert!(close(f[2], 23.0 / 336.0));
        assert!(close(f[3], 11.0 / 168.0));
        let n = nucleotide_frequencies(&p, &f).unwrap();
        assert!(close(n[0], 11.0 / 42.0) && close(n[1], 11.0 / 42.0));
        assert!(close(n[2], 10.0 / 42.0) && close(n[3], 10.0 / 42.0));
    }

    #[test]
    fn cpg_column_uniform() {
        let (a, g) = (0.7, 1.9);
        let p = RateParameters::from_vw(|_| 1.0, |_| 1.0).with_r(YprEdge::CgCa, a).with_r(YprEdge::CgTg, g);
        let s = ypr_system(&p).unwrap();
        let col = [5.0 * a + 5.0 * g, -5.0 * a + g, a - 5.0 * g, -a - g].map(|x| x / 4.0);
        for i in 0..4 {
            assert!(close(s.r[i][0], col[i]), "row {i}: {} vs {}", s.r[i][0], col[i]);
        }
    }

    #[test]
    fn couplings_invariants() {
        let p = RateParameters::from_vw(|_| 1.0, |_| 2.0)
            .with_r(YprEdge::CgCa, 0.3)
            .with_r(YprEdge::TaTg, -0.4)
            .with_r(YprEdge::CaTa, 1.1)
            .with_r(YprEdge::TgCg, 0.5);
        let c = couplings(&p);
        for zt in 0..4 {
            let col: f64 = (0..4).map(|xy| c.p_pair[zt][xy]).sum();
            assert!(col.abs() < 1e-15);
            for x in Nucleotide::ALL {
                assert!((c.p_nuc[zt][x.index()] + c.p_nuc[zt][x.star().index()]).abs() < 1e-15);
            }
        }
        assert!(ypr_system(&p).unwrap().rhs.iter().all(|&v| v > 0.0));
    }
}
