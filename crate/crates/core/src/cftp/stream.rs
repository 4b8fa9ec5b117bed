use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::model::{DerivedRates, Flag};
use crate::nucleotide::Nucleotide;
use crate::rng::{substream, tag};
use crate::simulator::MoveDescription;

/// The U and V rings of a circle `a..=b` on `(-inf, 0)`, generated backward
/// on demand. Entry `k` is the `k`-th ring counting back from time 0, at
/// time `-times[k]`.
#[derive(Debug, Clone)]
pub struct BackwardEventStream {
    pub a: i64,
    pub b: i64,
    times: Vec<f64>,
    sites: Vec<i64>,
    moves: Vec<MoveDescription>,
    gen: Option<Generator>,
}

#[derive(Debug, Clone)]
struct Generator {
    rng: ChaCha8Rng,
    gap: Exp<f64>,
    /// Cumulative rates of the U/V descriptions, target-major.
    cum: Vec<(f64, MoveDescription)>,
    total: f64,
}

impl BackwardEventStream {
    /// Random stream with the U/V rates of `d`; `d.uv_rate()` must be positive.
    pub fn new(d: &DerivedRates, a: i64, b: i64, seed: u64) -> Self {
        let mut cum = Vec::new();
        let mut total = 0.0;
        for z in Nucleotide::ALL {
            for f in [Flag::U, Flag::V] {
                let r = d.clock_rate(z, f);
                if r > 0.0 {
                    total += r;
                    cum.push((total, MoveDescription::new(z, f)));
                }
            }
        }
        assert!(total > 0.0, "backward stream needs a positive U/V rate");
        let n = (b - a + 1) as f64;
        let gen = Generator {
            rng: substream(seed, &[tag::BACKWARD, a as u64, b as u64]),
            gap: Exp::new(n * total).expect("positive rate"),
            cum,
            total,
        };
        BackwardEventStream { a, b, times: Vec::new(), sites: Vec::new(), moves: Vec::new(), gen: Some(gen) }
    }

    /// A fixed stream of `(backward time, site, move)` triples; it cannot grow.
    pub fn from_events(a: i64, b: i64, mut events: Vec<(f64, i64, MoveDescription)>) -> Self {
        events.sort_by(|x, y| x.0.total_cmp(&y.0));
        for e in &events {
            assert!(e.0 > 0.0 && (a..=b).contains(&e.1), "event outside the window");
            assert!(matches!(e.2.flag, Flag::U | Flag::V), "backward streams carry U and V rings only");
        }
        BackwardEventStream {
            a,
            b,
            times: events.iter().map(|e| e.0).collect(),
            sites: events.iter().map(|e| e.1).collect(),
            moves: events.iter().map(|e| e.2).collect(),
            gen: None,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn num_sites(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    pub fn time(&self, k: usize) -> f64 {
        self.times[k]
    }

    pub fn site(&self, k: usize) -> i64 {
        self.sites[k]
    }

    pub fn mv(&self, k: usize) -> MoveDescription {
        self.moves[k]
    }

    /// Grow to at least `len` events. Returns false if the stream is fixed
    /// and shorter than `len`.
    pub fn ensure(&mut self, len: usize) -> bool {
        let Some(g) = self.gen.as_mut() else {
            return self.times.len() >= len;
        };
        let n = (self.b - self.a + 1) as usize;
        let mut t = self.times.last().copied().unwrap_or(0.0);
        while self.times.len() < len {
            t += g.gap.sample(&mut g.rng);
            let site = self.a + g.rng.random_range(0..n) as i64;
            let u = g.rng.random::<f64>() * g.total;
            let mv = g.cum.iter().find(|(c, _)| u < *c).unwrap_or(g.cum.last().expect("nonempty")).1;
            self.times.push(t);
            self.sites.push(site);
            self.moves.push(mv);
        }
        true
    }
}
