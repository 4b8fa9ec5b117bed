use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::clocks::{sample_clocks, ClockRealization};
use super::moves::{apply_move_with, MoveRules};
use crate::error::{Error, Result};
use crate::model::{derive, validate, DerivedRates, Flag, RateParameters};
use crate::nucleotide::{Nucleotide, Ry};
use crate::rng::{substream, tag};

/// Checks shared by the clock-driven engines.
pub fn clock_ready(p: &RateParameters) -> Result<DerivedRates> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    if !report.graphical_exact {
        return Err(Error::Ineligible(
            "both YpR increments toward one target are negative; the clock construction does not apply".into(),
        ));
    }
    derive(p)
}

/// Replay the rings of `clocks` with `start < t <= end` on a circle whose
/// site `k` carries the absolute label `first_site + k`. Rings on other
/// sites are ignored.
pub fn evolve_with_clocks(
    rules: &MoveRules,
    seq: &mut [Nucleotide],
    first_site: i64,
    clocks: &ClockRealization,
    start: f64,
    end: f64,
) {
    let n = seq.len() as i64;
    for e in clocks.between(start, end) {
        let k = e.site - first_site;
        if (0..n).contains(&k) {
            apply_move_with(rules, seq, k as usize, e.mv.z, e.mv.flag);
        }
    }
}

fn check_len(initial: &[Nucleotide]) -> Result<()> {
    if initial.len() < 3 {
        return Err(Error::InvalidArgument(format!("circle needs at least 3 sites, got {}", initial.len())));
    }
    Ok(())
}

/// Evolve a circle for `duration` using the Poisson-clock construction.
pub fn evolve(p: &RateParameters, initial: &[Nucleotide], duration: f64, seed: u64) -> Result<Vec<Nucleotide>> {
    Ok(evolve_snapshots(p, initial, &[duration], seed)?.pop().expect("one snapshot"))
}

/// States at each time in `times` (non-decreasing), all driven by one clock
/// realization.
pub fn evolve_snapshots(
    p: &RateParameters,
    initial: &[Nucleotide],
    times: &[f64],
    seed: u64,
) -> Result<Vec<Vec<Nucleotide>>> {
    check_len(initial)?;
    if times.iter().any(|t| !(*t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("snapshot times must be non-negative and non-decreasing".into()));
    }
    let d = clock_ready(p)?;
    let rules = MoveRules::new(p);
    let horizon = times.last().copied().unwrap_or(0.0);
    let clocks = sample_clocks(&d, 0..initial.len() as i64, 0.0, horizon, seed);
    let mut seq = initial.to_vec();
    let mut out = Vec::with_capacity(times.len());
    let mut last = 0.0;
    for &t in times {
        evolve_with_clocks(&rules, &mut seq, 0, &clocks, last, t);
        out.push(seq.clone());
        last = t;
    }
    Ok(out)
}

/// Direct stochastic simulation from the substitution rates, independent of
/// the clock construction.
pub fn gillespie_evolve(
    p: &RateParameters,
    initial: &[Nucleotide],
    duration: f64,
    seed: u64,
) -> Result<Vec<Nucleotide>> {
    Ok(gillespie_snapshots(p, initial, &[duration], seed)?.pop().expect("one snapshot"))
}

pub fn gillespie_snapshots(
    p: &RateParameters,
    initial: &[Nucleotide],
    times: &[f64],
    seed: u64,
) -> Result<Vec<Vec<Nucleotide>>> {
    check_len(initial)?;
    if times.iter().any(|t| !(*t >= 0.0)) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("snapshot times must be non-negative and non-decreasing".into()));
    }
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    let n = initial.len();
    let mut rng = substream(seed, &[tag::GILLESPIE]);
    let mut seq = initial.to_vec();
    let mut rates = vec![0.0; 4 * n];
    let mut t = 0.0;
    let mut out = Vec::with_capacity(times.len());
    let mut next = 0;
    loop {
        let mut total = 0.0;
        for i in 0..n {
            let (l, c, r) = (seq[(i + n - 1) % n], seq[i], seq[(i + 1) % n]);
            for z in Nucleotide::ALL {
                let q = p.rate(l, c, r, z);
                rates[4 * i + z.index()] = q;
                total += q;
            }
        }
        let dt = if total > 0.0 { Exp::new(total).expect("positive rate").sample(&mut rng) } else { f64::INFINITY };
        while next < times.len() && t + dt > times[next] {
            out.push(seq.clone());
            next += 1;
        }
        if next == times.len() {
            return Ok(out);
        }
        t += dt;
        let mut u = rng.random::<f64>() * total;
        let mut pick = rates.iter().rposition(|&q| q > 0.0).expect("total > 0");
        for (k, &q) in rates.iter().enumerate() {
            if u < q {
                pick = k;
                break;
            }
            u -= q;
        }
        seq[pick / 4] = Nucleotide::from_index(pick % 4);
    }
}

pub fn ry_project(seq: &[Nucleotide]) -> Vec<Ry> {
    seq.iter().map(|x| x.ry()).collect()
}

/// Purine/pyrimidine classes at `end`, computed site by site from the U and
/// V rings alone.
pub fn ry_from_clocks(initial: &[Nucleotide], first_site: i64, clocks: &ClockRealization, end: f64) -> Vec<Ry> {
    let mut out = ry_project(initial);
    for e in clocks.between(clocks.t0, end) {
        let k = e.site - first_site;
        if matches!(e.mv.flag, Flag::U | Flag::V) && (0..out.len() as i64).contains(&k) {
            out[k as usize] = e.mv.z.ry();
        }
    }
    out
}
