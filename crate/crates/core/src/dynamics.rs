//! Time evolution of nucleotide and YpR frequencies in the simplest model.
//!
//! With `v = w = 1` and `r^C_A = r^G_T = rho`, the four nucleotide and four
//! YpR frequencies obey a closed linear system:
//!
//! ```text
//! F(x)'  = 1 - 4 F(x) + eps(x) rho F(CG)       eps(A) = eps(T) = +1, eps(C) = eps(G) = -1
//! F(xy)' = F(x) + F(y) - 8 F(xy) + rho F(CG) (1_TG + 1_CA - 2 1_CG)(xy)
//! ```

use serde::{Deserialize, Serialize};

use crate::closed_forms::simplest_dinucleotides;
use crate::error::{Error, Result};
use crate::nucleotide::{Nucleotide, Ypr};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyState {
    pub s: f64,
    /// `F(A), F(T), F(C), F(G)`
    pub nuc: [f64; 4],
    /// `F(CG), F(CA), F(TG), F(TA)`
    pub ypr: [f64; 4],
}

impl FrequencyState {
    pub fn uniform() -> Self {
        FrequencyState { s: 0.0, nuc: [0.25; 4], ypr: [1.0 / 16.0; 4] }
    }

    /// Product state of the given nucleotide law.
    pub fn independent(nuc: [f64; 4]) -> Result<Self> {
        if nuc.iter().any(|&f| !(0.0..=1.0).contains(&f)) || (nuc.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("not a probability vector: {nuc:?}")));
        }
        let ypr = Ypr::ALL.map(|y| {
            let (x, z) = y.pair();
            nuc[x.index()] * nuc[z.index()]
        });
        Ok(FrequencyState { s: 0.0, nuc, ypr })
    }

    /// The equilibrium of the flow.
    pub fn stationary(rho: f64) -> Result<Self> {
        let t = simplest_dinucleotides(rho)?;
        let ypr = Ypr::ALL.map(|y| {
            let (x, z) = y.pair();
            t.get(x, z)
        });
        Ok(FrequencyState { s: f64::INFINITY, nuc: t.nucleotides, ypr })
    }

    pub fn cg(&self) -> f64 {
        self.ypr[Ypr::CG.index()]
    }

    fn as_array(&self) -> [f64; 8] {
        let mut a = [0.0; 8];
        a[..4].copy_from_slice(&self.nuc);
        a[4..].copy_from_slice(&self.ypr);
        a
    }

    fn from_array(s: f64, a: [f64; 8]) -> Self {
        FrequencyState { s, nuc: a[..4].try_into().expect("4"), ypr: a[4..].try_into().expect("4") }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array().iter().zip(other.as_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn eps(x: Nucleotide) -> f64 {
    match x {
        Nucleotide::A | Nucleotide::T => 1.0,
        Nucleotide::C | Nucleotide::G => -1.0,
    }
}

fn rhs(a: &[f64; 8], rho: f64) -> [f64; 8] {
    let cg = a[4];
    let mut d = [0.0; 8];
    for x in Nucleotide::ALL {
        d[x.index()] = 1.0 - 4.0 * a[x.index()] + eps(x) * rho * cg;
    }
    for y in Ypr::ALL {
        let (x, z) = y.pair();
        let src = match y {
            Ypr::CG => -2.0,
            Ypr::CA | Ypr::TG => 1.0,
            Ypr::TA => 0.0,
        };
        d[4 + y.index()] = a[x.index()] + a[z.index()] - 8.0 * a[4 + y.index()] + src * rho * cg;
    }
    d
}

/// Time derivatives `(dF(x)/ds, dF(xy)/ds)`.
pub fn ode_rhs(state: &FrequencyState, rho: f64) -> ([f64; 4], [f64; 4]) {
    let d = rhs(&state.as_array(), rho);
    (d[..4].try_into().expect("4"), d[4..].try_into().expect("4"))
}

fn rk4(a: &[f64; 8], rho: f64, h: f64) -> [f64; 8] {
    let add = |x: &[f64; 8], k: &[f64; 8], c: f64| -> [f64; 8] { std::array::from_fn(|i| x[i] + c * k[i]) };
    let k1 = rhs(a, rho);
    let k2 = rhs(&add(a, &k1, h / 2.0), rho);
    let k3 = rhs(&add(a, &k2, h / 2.0), rho);
    let k4 = rhs(&add(a, &k3, h), rho);
    std::array::from_fn(|i| a[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

fn check(rho: f64, horizon: f64, step: f64) -> Result<usize> {
    if !(rho >= -1.0) || !rho.is_finite() {
        return Err(Error::InvalidParameters(vec![format!("rho must be >= -1, got {rho}")]));
    }
    if !(step > 0.0) || !(horizon >= 0.0) || !horizon.is_finite() {
        return Err(Error::InvalidArgument(format!("need step > 0 and horizon >= 0, got {step}, {horizon}")));
    }
    Ok((horizon / step).round() as usize)
}

/// Fixed-step RK4 trajectory including the initial state; the step is
/// adjusted so that a whole number of steps reaches `horizon`.
pub fn integrate(init: &FrequencyState, rho: f64, horizon: f64, step: f64) -> Result<Vec<FrequencyState>> {
    let steps = check(rho, horizon, step)?;
    let h = if steps == 0 { 0.0 } else { horizon / steps as f64 };
    let mut a = init.as_array();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(FrequencyState { s: init.s, ..*init });
    for k in 1..=steps {
        a = rk4(&a, rho, h);
        out.push(FrequencyState::from_array(init.s + k as f64 * h, a));
    }
    Ok(out)
}

/// Terminal state only.
pub fn integrate_to(init: &FrequencyState, rho: f64, horizon: f64, step: f64) -> Result<FrequencyState> {
    let steps = check(rho, horizon, step)?;
    let h = if steps == 0 { 0.0 } else { horizon / steps as f64 };
    let mut a = init.as_array();
    for _ in 0..steps {
        a = rk4(&a, rho, h);
    }
    Ok(FrequencyState::from_array(init.s + horizon, a))
}

/// Largest residual of `F'' + 2(rho+6) F' + 2(16+5 rho) F = 2` for `F = F(CG)`
/// along an equally spaced trajectory, by five-point differences.
pub fn second_order_residual(traj: &[FrequencyState], rho: f64) -> Result<f64> {
    if traj.len() < 5 {
        return Err(Error::InvalidArgument("need at least five trajectory points".into()));
    }
    let h = traj[1].s - traj[0].s;
    let f: Vec<f64> = traj.iter().map(FrequencyState::cg).collect();
    let mut worst: f64 = 0.0;
    for i in 2..f.len() - 2 {
        let d1 = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        let d2 = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
        let r = d2 + 2.0 * (rho + 6.0) * d1 + 2.0 * (16.0 + 5.0 * rho) * f[i] - 2.0;
        worst = worst.max(r.abs());
    }
    Ok(worst)
}
