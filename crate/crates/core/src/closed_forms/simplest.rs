//! The simplest model: `v = w = 1`, `r^C_A = r^G_T = rho`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nucleotide::{Nucleotide, A, C, G, T};

fn ind(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn big_u(x: Nucleotide, y: Nucleotide) -> f64 {
    ind((x, y) == (T, G)) + ind((x, y) == (C, A)) - 2.0 * ind((x, y) == (C, G))
}

fn big_r(x: Nucleotide) -> f64 {
    ind(x == A) - ind(x == G)
}

fn big_y(x: Nucleotide) -> f64 {
    ind(x == T) - ind(x == C)
}

/// The integer-valued first-order coefficient `K0(xy)`.
pub fn k0(x: Nucleotide, y: Nucleotide) -> f64 {
    4.0 * big_u(x, y) + 2.0 * big_r(x) + big_y(x) + big_r(y) + 2.0 * big_y(y)
}

pub fn a_coef(rho: f64) -> f64 {
    3.0 / (96.0 + 19.0 * rho)
}

pub fn b_coef(rho: f64) -> f64 {
    4.0 / (32.0 + 10.0 * rho)
}

pub fn k1(x: Nucleotide, y: Nucleotide, rho: f64) -> f64 {
    a_coef(rho) * (big_r(x) * big_r(y) + big_y(x) * big_y(y)) + b_coef(rho) * big_r(x) * big_y(y)
}

/// `lim rho K1(xy)` as `rho -> infinity`.
fn k1_inf(x: Nucleotide, y: Nucleotide) -> f64 {
    3.0 / 19.0 * (big_r(x) * big_r(y) + big_y(x) * big_y(y)) + 0.4 * big_r(x) * big_y(y)
}

/// Dinucleotide and nucleotide frequencies; `di[x][y]` indexed in `A, T, C, G` order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplestTable {
    pub di: [[f64; 4]; 4],
    pub nucleotides: [f64; 4],
}

impl SimplestTable {
    pub fn get(&self, x: Nucleotide, y: Nucleotide) -> f64 {
        self.di[x.index()][y.index()]
    }
}

pub fn simplest_dinucleotides(rho: f64) -> Result<SimplestTable> {
    if !(rho >= -1.0) || !rho.is_finite() {
        return Err(Error::InvalidParameters(vec![format!("simplest model needs rho >= -1, got {rho}")]));
    }
    let den = 32.0 + 10.0 * rho;
    let di = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (x, y) = (Nucleotide::from_index(i), Nucleotide::from_index(j));
            (1.0 + rho * (k0(x, y) + rho * k1(x, y, rho)) / den) / 16.0
        })
    });
    let nucleotides = std::array::from_fn(|i| {
        let x = Nucleotide::from_index(i);
        (1.0 + 2.0 * rho * (big_r(x) + big_y(x)) / den) / 4.0
    });
    Ok(SimplestTable { di, nucleotides })
}

/// Limits as `rho -> infinity`: `F(xy) = (1 + K_inf(xy)/10)/16`.
pub fn simplest_limit() -> SimplestTable {
    let di = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (x, y) = (Nucleotide::from_index(i), Nucleotide::from_index(j));
            (1.0 + (k0(x, y) + k1_inf(x, y)) / 10.0) / 16.0
        })
    });
    let nucleotides = std::array::from_fn(|i| {
        let x = Nucleotide::from_index(i);
        (1.0 + (big_r(x) + big_y(x)) / 5.0) / 4.0
    });
    SimplestTable { di, nucleotides }
}

/// Characteristic roots of `f'' + 2(rho+6) f' + 2(16+5 rho) f = 2`, as
/// `(re1, im1, re2, im2)`.
pub fn characteristic_roots(rho: f64) -> [(f64, f64); 2] {
    let b = 2.0 * (rho + 6.0);
    let c = 2.0 * (16.0 + 5.0 * rho);
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        [((-b - s) / 2.0, 0.0), ((-b + s) / 2.0, 0.0)]
    } else {
        let s = (-disc).sqrt();
        [(-b / 2.0, -s / 2.0), (-b / 2.0, s / 2.0)]
    }
}
