use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evolve::{evolve_snapshots, gillespie_snapshots};
use crate::error::{Error, Result};
use crate::model::RateParameters;
use crate::nucleotide::Nucleotide;
use crate::rng::{substream, tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Clocks,
    Gillespie,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "clocks" | "clock" => Ok(Engine::Clocks),
            "gillespie" => Ok(Engine::Gillespie),
            _ => Err(Error::Parse(format!("unknown engine {s:?} (expected clocks or gillespie)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitialState {
    /// I.i.d. uniform letters, drawn per replicate.
    #[default]
    Uniform,
    Fixed(Vec<Nucleotide>),
}

/// Seed of replicate `k`.
pub fn replicate_seed(seed: u64, k: u64) -> u64 {
    substream(seed, &[tag::FORWARD, k]).next_u64()
}

/// Parallel replicates; `result[k][j]` is replicate `k` at `times[j]`.
pub fn simulate_replicates(
    p: &RateParameters,
    n: usize,
    times: &[f64],
    replicates: usize,
    seed: u64,
    engine: Engine,
    init: &InitialState,
) -> Result<Vec<Vec<Vec<Nucleotide>>>> {
    if let InitialState::Fixed(x) = init {
        if x.len() != n {
            return Err(Error::InvalidArgument(format!("initial sequence has {} sites, circle has {n}", x.len())));
        }
    }
    (0..replicates as u64)
        .into_par_iter()
        .map(|k| {
            let s = replicate_seed(seed, k);
            let x = match init {
                InitialState::Fixed(x) => x.clone(),
                InitialState::Uniform => {
                    let mut rng = substream(s, &[tag::INITIAL]);
                    (0..n).map(|_| Nucleotide::from_index(rng.random_range(0..4))).collect()
                }
            };
            match engine {
                Engine::Clocks => evolve_snapshots(p, &x, times, s),
                Engine::Gillespie => gillespie_snapshots(p, &x, times, s),
            }
        })
        .collect()
}
