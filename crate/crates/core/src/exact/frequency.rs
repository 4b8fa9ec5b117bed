use super::circle::{build_generator, site};
use super::orbit::lumped_chain;
use super::solve::{solve_stationary, SparseGenerator};
use crate::error::{Error, Result};
use crate::model::RateParameters;
use crate::nucleotide::{encode_word, Nucleotide};

/// Stationary law of a circle, over all `4^n` states.
#[derive(Debug, Clone)]
pub struct CircleSolution {
    pub n: usize,
    pub pi: Vec<f64>,
}

impl CircleSolution {
    /// Joint law of the given sites; index is the base-4 code of the
    /// letters in the order of `sites`.
    pub fn marginal(&self, sites: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << (2 * sites.len())];
        for (code, &p) in self.pi.iter().enumerate() {
            let idx = sites.iter().fold(0usize, |acc, &i| acc * 4 + site(code as u32, self.n, i % self.n).index());
            out[idx] += p;
        }
        out
    }

    /// Law of the word at sites `start .. start + len` (wrapping).
    pub fn window(&self, start: usize, len: usize) -> Vec<f64> {
        let sites: Vec<usize> = (start..start + len).collect();
        self.marginal(&sites)
    }

    pub fn probability(&self, seq: &[Nucleotide]) -> f64 {
        self.pi[super::circle::encode_state(seq) as usize]
    }
}

/// Stationary distribution of the full (unlumped) generator.
pub fn stationary(chain: &super::circle::CircleChain) -> Result<Vec<f64>> {
    let g =
        SparseGenerator::from_csr(chain.row_ptr.clone(), chain.cols.clone(), chain.vals.clone(), chain.exit.clone());
    solve_stationary(&g)
}

/// Solve a circle through its rotation-lumped chain.
pub fn solve_circle(p: &RateParameters, n: usize) -> Result<CircleSolution> {
    let red = lumped_chain(p, n)?;
    let pi = red.unlump(&red.stationary()?);
    Ok(CircleSolution { n, pi })
}

/// Solve a circle on the full state space (no lumping).
pub fn solve_circle_full(p: &RateParameters, n: usize) -> Result<CircleSolution> {
    let chain = build_generator(p, n)?;
    Ok(CircleSolution { n, pi: stationary(&chain)? })
}

/// Stationary frequencies of every word of length `len`, from a circle of
/// `len + 2` sites with the two padding sites summed out.
pub fn word_frequencies(p: &RateParameters, len: usize) -> Result<Vec<f64>> {
    if len == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    let sol = solve_circle(p, (len + 2).max(3))?;
    Ok(sol.window(1, len))
}

/// Stationary frequency of one word.
pub fn poly_frequency(p: &RateParameters, word: &[Nucleotide]) -> Result<f64> {
    Ok(word_frequencies(p, word.len())?[encode_word(word)])
}
