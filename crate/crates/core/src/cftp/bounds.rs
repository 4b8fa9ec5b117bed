use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::DerivedRates;

/// Constants of the locking-time bounds for the window `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LockBound {
    pub k_ab: u64,
    pub t_ab: f64,
    pub n_alpha: f64,
}

pub fn k_ab(a: i64, b: i64) -> u64 {
    ((b - a - 1).max(0) as u64).div_ceil(3)
}

pub fn t_ab(a: i64, b: i64) -> f64 {
    4.0 * (6.0 * k_ab(a, b) as f64).ln()
}

pub fn n_alpha(alpha: f64) -> f64 {
    -4.0 * (1.0 - alpha).ln() / alpha
}

fn check(d: &DerivedRates) -> Result<()> {
    if !(d.alpha > 0.0 && d.kappa > 0.0) {
        return Err(Error::Ineligible(format!(
            "bounds need alpha > 0 and kappa > 0 (alpha = {}, kappa = {})",
            d.alpha, d.kappa
        )));
    }
    Ok(())
}

pub fn lock_bound(d: &DerivedRates, a: i64, b: i64) -> Result<LockBound> {
    check(d)?;
    Ok(LockBound { k_ab: k_ab(a, b), t_ab: t_ab(a, b), n_alpha: n_alpha(d.alpha) })
}

/// Time `N n_alpha / kappa` at which [`locking_tail_bound`] applies.
pub fn tail_threshold(d: &DerivedRates, n: u32) -> Result<f64> {
    check(d)?;
    Ok(n as f64 * n_alpha(d.alpha) / d.kappa)
}

fn tail(alpha: f64, k: u64, n: u32) -> f64 {
    let q = (2.0 * (1.0 - alpha).powi(n as i32)).min(1.0);
    (3.0 * (1.0 - (1.0 - q).powi(k as i32))).min(1.0)
}

/// Upper bound on `P(T_ab >= N n_alpha / kappa)`, capped at 1.
pub fn locking_tail_bound(d: &DerivedRates, a: i64, b: i64, n: u32) -> Result<f64> {
    check(d)?;
    Ok(tail(d.alpha, k_ab(a, b), n))
}

/// Single-site tail bound `2 (1 - alpha)^N`.
pub fn single_site_tail_bound(d: &DerivedRates, n: u32) -> Result<f64> {
    check(d)?;
    Ok((2.0 * (1.0 - d.alpha).powi(n as i32)).min(1.0))
}

/// The same bound with `alpha~` in place of `alpha`, for modified events.
pub fn modified_tail_bound(d: &DerivedRates, a: i64, b: i64, n: u32) -> Result<f64> {
    if !(d.alpha_tilde > 0.0 && d.kappa > 0.0) {
        return Err(Error::Ineligible("modified bounds need alpha~ > 0".into()));
    }
    Ok(tail(d.alpha_tilde, k_ab(a, b), n))
}

/// Time `s` with `P(T_ab >= s) <= exp(-t/4)`.
pub fn readable_threshold(d: &DerivedRates, a: i64, b: i64, t: f64) -> Result<f64> {
    check(d)?;
    Ok((t_ab(a, b) - (1.0 - d.alpha).ln() + t) / (d.alpha * d.kappa))
}

/// Time `s` with `P(T_(n) >= s) <= exp(-t/4)` for `n` consecutive sites.
pub fn consecutive_threshold(d: &DerivedRates, n: usize, t: f64) -> Result<f64> {
    check(d)?;
    Ok(((n as f64 + 2.0).ln() + 6.0 * 2f64.ln() + t) / (d.alpha * d.kappa))
}

/// Forward time after which the law of sites `a..=b` is within `eps` of
/// equilibrium in total variation, started anywhere.
pub fn tv_convergence_time(d: &DerivedRates, a: i64, b: i64, eps: f64) -> Result<f64> {
    check(d)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1], got {eps}")));
    }
    Ok((t_ab(a - 1, b + 1) - (1.0 - d.alpha).ln() + 4.0 * (1.0 / eps).ln()) / (d.alpha * d.kappa))
}
