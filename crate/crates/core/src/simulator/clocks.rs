use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::Serialize;

use crate::model::{DerivedRates, Flag};
use crate::nucleotide::Nucleotide;
use crate::rng::{substream, tag};

/// A clock ring: the target letter and which of the five families rang.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MoveDescription {
    pub z: Nucleotide,
    pub flag: Flag,
}

impl MoveDescription {
    pub fn new(z: Nucleotide, flag: Flag) -> Self {
        MoveDescription { z, flag }
    }

    /// Index in `0..20`, target-major.
    pub fn code(self) -> usize {
        self.z.index() * 5 + self.flag.index()
    }

    pub fn from_code(c: usize) -> Self {
        MoveDescription { z: Nucleotide::from_index(c / 5), flag: Flag::ALL[c % 5] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClockEvent {
    pub time: f64,
    /// Absolute site label.
    pub site: i64,
    pub mv: MoveDescription,
}

/// All clock rings on a block of sites over `(t0, t1]`, merged in time order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockRealization {
    pub first_site: i64,
    pub num_sites: usize,
    pub t0: f64,
    pub t1: f64,
    events: Vec<ClockEvent>,
}

impl ClockRealization {
    /// Build from explicit events (sorted here). Panics on equal times.
    pub fn from_events(first_site: i64, num_sites: usize, t0: f64, t1: f64, mut events: Vec<ClockEvent>) -> Self {
        events.sort_by(|a, b| a.time.total_cmp(&b.time));
        assert!(events.windows(2).all(|w| w[0].time < w[1].time), "clock events must have distinct times");
        ClockRealization { first_site, num_sites, t0, t1, events }
    }

    pub fn events(&self) -> &[ClockEvent] {
        &self.events
    }

    pub fn sites(&self) -> std::ops::Range<i64> {
        self.first_site..self.first_site + self.num_sites as i64
    }

    /// Sorted ring times of one stream.
    pub fn stream(&self, site: i64, z: Nucleotide, flag: Flag) -> Vec<f64> {
        self.events.iter().filter(|e| e.site == site && e.mv == MoveDescription::new(z, flag)).map(|e| e.time).collect()
    }

    /// Events with `start < time <= end`.
    pub fn between(&self, start: f64, end: f64) -> &[ClockEvent] {
        let lo = self.events.partition_point(|e| e.time <= start);
        let hi = self.events.partition_point(|e| e.time <= end);
        &self.events[lo..hi.max(lo)]
    }
}

/// Sample every clock of the given sites on `(t0, t1]`.
///
/// Each site draws the superposition of its twenty streams from its own
/// substream keyed by `(seed, site)`: exponential gaps at the total rate,
/// marks chosen in proportion to the stream rates. Two realizations built
/// from the same seed therefore agree on every site they share.
pub fn sample_clocks(d: &DerivedRates, sites: std::ops::Range<i64>, t0: f64, t1: f64, seed: u64) -> ClockRealization {
    assert!(t0 <= t1, "sample_clocks needs t0 <= t1");
    let mut cum = [0.0; 20];
    let mut total = 0.0;
    for (c, slot) in cum.iter_mut().enumerate() {
        let mv = MoveDescription::from_code(c);
        total += d.clock_rate(mv.z, mv.flag);
        *slot = total;
    }
    let last = cum.iter().position(|&c| c == total).unwrap_or(19);
    let num_sites = (sites.end - sites.start).max(0) as usize;
    let mut attempt = 0u64;
    loop {
        let mut events = Vec::new();
        if total > 0.0 {
            let gap = Exp::new(total).expect("positive total rate");
            for site in sites.clone() {
                let mut rng = substream(seed, &[tag::CLOCK, site as u64, t0.to_bits(), attempt]);
                let mut t = t0;
                loop {
                    t += gap.sample(&mut rng);
                    if t > t1 {
                        break;
                    }
                    let u = rng.random::<f64>() * total;
                    let code = cum.iter().position(|&c| u < c).unwrap_or(last);
                    events.push(ClockEvent { time: t, site, mv: MoveDescription::from_code(code) });
                }
            }
        }
        events.sort_by(|a, b| a.time.total_cmp(&b.time));
        if events.windows(2).all(|w| w[0].time < w[1].time) {
            return ClockRealization { first_site: sites.start, num_sites, t0, t1, events };
        }
        attempt += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive, simplest};
    use crate::nucleotide::{A, C};

    #[test]
    fn zero_rate_streams_are_empty() {
        let d = derive(&simplest(1.0).unwrap()).unwrap();
        let c = sample_clocks(&d, 0..3, 0.0, 10.0, 1);
        for site in 0..3 {
            for z in Nucleotide::ALL {
                assert!(c.stream(site, z, Flag::V).is_empty());
                assert!(c.stream(site, z, Flag::W).is_empty());
                assert!(c.stream(site, z, Flag::Q).is_empty());
            }
        }
        assert!(!c.stream(0, A, Flag::R).is_empty());
        assert!(c.stream(0, C, Flag::R).is_empty());
        assert_eq!(d.uv_rate(), 4.0);
    }

    #[test]
    fn shared_sites_share_clocks() {
        let d = derive(&simplest(0.5).unwrap()).unwrap();
        let a = sample_clocks(&d, 0..4, 0.0, 5.0, 9);
        let b = sample_clocks(&d, -1..5, 0.0, 5.0, 9);
        let keep =
            |c: &ClockRealization| c.events().iter().filter(|e| (0..4).contains(&e.site)).copied().collect::<Vec<_>>();
        assert_eq!(keep(&a), keep(&b));
    }

    #[test]
    fn between_is_half_open() {
        let mv = MoveDescription::new(A, Flag::U);
        let c = ClockRealization::from_events(
            0,
            1,
            0.0,
            3.0,
            vec![ClockEvent { time: 1.0, site: 0, mv }, ClockEvent { time: 2.0, site: 0, mv }],
        );
        assert_eq!(c.between(1.0, 2.0).len(), 1);
        assert_eq!(c.between(0.0, 2.0).len(), 2);
        assert_eq!(c.between(2.0, 3.0).len(), 0);
        for code in 0..20 {
            assert_eq!(MoveDescription::from_code(code).code(), code);
        }
    }
}
