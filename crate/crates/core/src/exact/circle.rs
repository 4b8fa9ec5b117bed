use crate::error::{Error, Result};
use crate::model::{validate, RateParameters, RateTable};
use crate::nucleotide::Nucleotide;

/// Largest circle for which the full state space is materialized.
pub const MAX_CIRCLE: usize = 10;

/// Rate at which site `i` of the circular sequence `seq` becomes `z`.
pub fn substitution_rate(p: &RateParameters, seq: &[Nucleotide], i: usize, z: Nucleotide) -> Result<f64> {
    let n = seq.len();
    if i >= n {
        return Err(Error::InvalidArgument(format!("site {i} outside sequence of length {n}")));
    }
    if seq[i] == z {
        return Err(Error::InvalidArgument(format!("site {i} already holds {z}")));
    }
    let left = seq[(i + n - 1) % n];
    let right = seq[(i + 1) % n];
    Ok(p.move_rate(left, seq[i], right, z))
}

/// Read site `i` of a circle state code (site 0 is the most significant digit).
#[inline]
pub fn site(code: u32, n: usize, i: usize) -> Nucleotide {
    Nucleotide::from_index(((code >> (2 * (n - 1 - i))) & 3) as usize)
}

#[inline]
pub fn set_site(code: u32, n: usize, i: usize, z: Nucleotide) -> u32 {
    let shift = 2 * (n - 1 - i);
    (code & !(3 << shift)) | ((z.index() as u32) << shift)
}

pub fn decode_state(code: u32, n: usize) -> Vec<Nucleotide> {
    (0..n).map(|i| site(code, n, i)).collect()
}

pub fn encode_state(seq: &[Nucleotide]) -> u32 {
    seq.iter().fold(0, |acc, x| (acc << 2) | x.index() as u32)
}

/// Calls `f(target_state, rate)` for every single-site move out of `code`.
/// Moves of rate zero are reported too; callers filter as needed.
#[inline]
pub(crate) fn for_each_move<S>(table: &RateTable<S>, n: usize, code: u32, mut f: impl FnMut(u32, S))
where
    S: Clone + std::ops::Add<Output = S>,
{
    for i in 0..n {
        let cur = site(code, n, i);
        let left = site(code, n, (i + n - 1) % n);
        let right = site(code, n, (i + 1) % n);
        for z in Nucleotide::ALL {
            if z != cur {
                f(set_site(code, n, i, z), table.move_rate(left, cur, right, z));
            }
        }
    }
}

/// Sparse generator of the substitution process on a circle of `n` sites.
#[derive(Debug, Clone)]
pub struct CircleChain {
    pub n: usize,
    pub params: RateParameters,
    /// Off-diagonal rates in CSR layout; row `s` spans `row_ptr[s]..row_ptr[s+1]`.
    pub row_ptr: Vec<usize>,
    pub cols: Vec<u32>,
    pub vals: Vec<f64>,
    /// Total exit rate of each state.
    pub exit: Vec<f64>,
}

impl CircleChain {
    pub fn num_states(&self) -> usize {
        self.exit.len()
    }

    pub fn rate(&self, from: u32, to: u32) -> f64 {
        let row = self.row_ptr[from as usize]..self.row_ptr[from as usize + 1];
        self.cols[row.clone()].iter().zip(&self.vals[row]).filter(|(c, _)| **c == to).map(|(_, v)| *v).sum()
    }

    pub fn row(&self, s: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let row = self.row_ptr[s]..self.row_ptr[s + 1];
        self.cols[row.clone()].iter().copied().zip(self.vals[row].iter().copied())
    }

    /// `max_s exit(s)`; the infinity norm of the generator is twice this.
    pub fn max_exit(&self) -> f64 {
        self.exit.iter().cloned().fold(0.0, f64::max)
    }
}

pub fn check_circle(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a circle needs at least 3 sites, got {n}")));
    }
    if n > MAX_CIRCLE {
        return Err(Error::InvalidArgument(format!("circle of {n} sites exceeds the supported maximum {MAX_CIRCLE}")));
    }
    Ok(())
}

pub fn build_generator(p: &RateParameters, n: usize) -> Result<CircleChain> {
    check_circle(n)?;
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    let states = 1usize << (2 * n);
    let mut row_ptr = Vec::with_capacity(states + 1);
    let mut cols = Vec::with_capacity(states * 3 * n);
    let mut vals = Vec::with_capacity(states * 3 * n);
    let mut exit = Vec::with_capacity(states);
    row_ptr.push(0);
    for code in 0..states as u32 {
        let mut total = 0.0;
        for_each_move(p, n, code, |to, rate| {
            if rate > 0.0 {
                cols.push(to);
                vals.push(rate);
                total += rate;
            }
        });
        exit.push(total);
        row_ptr.push(cols.len());
    }
    Ok(CircleChain { n, params: p.clone(), row_ptr, cols, vals, exit })
}
