use std::collections::BTreeMap;

use super::circle::{check_circle, for_each_move, CircleChain};
use super::solve::{solve_stationary, SparseGenerator};
use crate::error::{Error, Result};
use crate::model::{validate, RateParameters};

fn phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Number of rotation orbits of words of length `k` over four letters:
/// `(1/k) sum_{d | k} phi(d) 4^{k/d}`.
pub fn orbit_count(k: u32) -> u128 {
    assert!((1..=63).contains(&k), "orbit_count supports 1 <= k <= 63");
    let k64 = k as u64;
    let sum: u128 =
        (1..=k64).filter(|&d| k64.is_multiple_of(d)).map(|d| phi(d) as u128 * 4u128.pow((k64 / d) as u32)).sum();
    sum / k as u128
}

#[inline]
fn rotate(code: u32, n: usize) -> u32 {
    let mask = if n == 16 { u32::MAX } else { (1u32 << (2 * n)) - 1 };
    ((code << 2) & mask) | (code >> (2 * (n - 1)))
}

/// Lexicographically smallest rotation (site 0 most significant).
pub fn canonical_rotation(code: u32, n: usize) -> u32 {
    let mut best = code;
    let mut c = code;
    for _ in 1..n {
        c = rotate(c, n);
        best = best.min(c);
    }
    best
}

/// Circle states grouped by rotation, with the lumped generator on orbits.
#[derive(Debug, Clone)]
pub struct OrbitReduction {
    pub n: usize,
    pub reps: Vec<u32>,
    pub sizes: Vec<u32>,
    /// Orbit index of every full state.
    pub orbit_of: Vec<u32>,
    pub generator: SparseGenerator,
}

fn orbit_tables(n: usize) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let states = 1usize << (2 * n);
    let mut orbit_of = vec![u32::MAX; states];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for code in 0..states as u32 {
        if orbit_of[code as usize] != u32::MAX {
            continue;
        }
        // codes are visited in increasing order, so the first unseen code is canonical
        let id = reps.len() as u32;
        let mut c = code;
        let mut size = 0;
        loop {
            if orbit_of[c as usize] == u32::MAX {
                orbit_of[c as usize] = id;
                size += 1;
            }
            c = rotate(c, n);
            if c == code {
                break;
            }
        }
        reps.push(code);
        sizes.push(size);
    }
    (reps, sizes, orbit_of)
}

impl OrbitReduction {
    pub fn num_orbits(&self) -> usize {
        self.reps.len()
    }

    /// Stationary law on orbits.
    pub fn stationary(&self) -> Result<Vec<f64>> {
        solve_stationary(&self.generator)
    }

    /// Spread an orbit law uniformly over each orbit.
    pub fn unlump(&self, orbit_law: &[f64]) -> Vec<f64> {
        self.orbit_of.iter().map(|&o| orbit_law[o as usize] / self.sizes[o as usize] as f64).collect()
    }

    pub fn lump(&self, full: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.num_orbits()];
        for (s, &o) in self.orbit_of.iter().enumerate() {
            out[o as usize] += full[s];
        }
        out
    }
}

/// Lump a full circle generator by rotations, verifying that the lumping is proper.
pub fn reduce_by_rotation(chain: &CircleChain) -> Result<OrbitReduction> {
    let n = chain.n;
    let (reps, sizes, orbit_of) = orbit_tables(n);
    let to_orbits = |s: usize| -> BTreeMap<u32, f64> {
        let mut m = BTreeMap::new();
        for (to, r) in chain.row(s) {
            let o = orbit_of[to as usize];
            if o != orbit_of[s] {
                *m.entry(o).or_insert(0.0) += r;
            }
        }
        m
    };
    let mut rows = Vec::with_capacity(reps.len());
    for &rep in &reps {
        rows.push(to_orbits(rep as usize));
    }
    for s in 0..chain.num_states() {
        let mine = to_orbits(s);
        let rep_row = &rows[orbit_of[s] as usize];
        let same = mine.len() == rep_row.len()
            && mine.iter().zip(rep_row).all(|((a, x), (b, y))| a == b && (x - y).abs() <= 1e-12 * x.abs().max(1.0));
        if !same {
            return Err(Error::Solver(format!("rotation lumping is not proper at state {s}")));
        }
    }
    let generator = SparseGenerator::from_rows(rows.into_iter().map(|m| m.into_iter().collect()).collect());
    Ok(OrbitReduction { n, reps, sizes, orbit_of, generator })
}

/// The lumped chain built directly from the orbit representatives, without
/// the full generator.
pub fn lumped_chain(p: &RateParameters, n: usize) -> Result<OrbitReduction> {
    check_circle(n)?;
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    let (reps, sizes, orbit_of) = orbit_tables(n);
    let rows = reps
        .iter()
        .map(|&rep| {
            let me = orbit_of[rep as usize];
            let mut m: BTreeMap<u32, f64> = BTreeMap::new();
            for_each_move(p, n, rep, |to, r| {
                let o = orbit_of[to as usize];
                if r > 0.0 && o != me {
                    *m.entry(o).or_insert(0.0) += r;
                }
            });
            m.into_iter().collect()
        })
        .collect();
    Ok(OrbitReduction { n, reps, sizes, orbit_of, generator: SparseGenerator::from_rows(rows) })
}
