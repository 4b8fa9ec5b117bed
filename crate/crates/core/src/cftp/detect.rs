use serde::Serialize;

use super::stream::BackwardEventStream;
use crate::model::Flag;
use crate::simulator::MoveDescription;

/// A coupling event at `site`, in backward times. `k1, k2, k3` index the
/// three rings in the stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingEvent {
    pub site: i64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl CouplingEvent {
    /// `max(s1, s3)`: the site is locked from any start before `-s4`.
    pub fn s4(&self) -> f64 {
        self.s1.max(self.s3)
    }

    /// Number of stream events needed to see this event.
    pub fn depth(&self) -> usize {
        self.k1.max(self.k3) + 1
    }
}

/// Which neighbor rings qualify as the outer rings of a coupling event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qualifiers {
    /// Left ring makes a purine, right ring a pyrimidine.
    Standard,
    /// Also a U ring to T on the left and a U ring to A on the right; valid
    /// when only CpG carries YpR rates and `w_C = v_C`, `w_G = v_G`.
    Modified,
}

impl Qualifiers {
    fn left(self, m: MoveDescription) -> bool {
        m.z.is_purine() || (self == Qualifiers::Modified && m.flag == Flag::U && m.z == crate::nucleotide::T)
    }

    fn right(self, m: MoveDescription) -> bool {
        m.z.is_pyrimidine() || (self == Qualifiers::Modified && m.flag == Flag::U && m.z == crate::nucleotide::A)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    /// Per circle site (index `site - a`): locked when starting at the
    /// oldest scanned ring.
    pub locked: Vec<bool>,
    /// Most recent coupling event per site, when one is visible.
    pub events: Vec<Option<CouplingEvent>>,
}

/// One forward sweep over the `m` oldest-to-newest rings of `stream`.
///
/// With `use_locked`, a neighbor that is already locked stands in for a
/// qualifying ring on its side (coupling events relative to a set of
/// locked sites).
pub fn scan(stream: &BackwardEventStream, m: usize, q: Qualifiers, use_locked: bool) -> Scan {
    let n = stream.num_sites();
    let m = m.min(stream.len());
    let mut last: Vec<Option<usize>> = vec![None; n];
    let mut locked = vec![false; n];
    let mut events = vec![None; n];
    for k in (0..m).rev() {
        let c = (stream.site(k) - stream.a) as usize;
        if stream.mv(k).flag == Flag::U {
            let (l, r) = ((c + n - 1) % n, (c + 1) % n);
            let left = last[l].filter(|&j| q.left(stream.mv(j)));
            let right = last[r].filter(|&j| q.right(stream.mv(j)));
            if let (Some(k1), Some(k3)) = (left, right) {
                events[c] = Some(CouplingEvent {
                    site: stream.site(k),
                    s1: stream.time(k1),
                    s2: stream.time(k),
                    s3: stream.time(k3),
                    k1,
                    k2: k,
                    k3,
                });
                locked[c] = true;
            } else if use_locked {
                let lo = locked[l] || left.is_some();
                let ro = locked[r] || right.is_some();
                if lo && ro {
                    locked[c] = true;
                }
            }
        }
        last[c] = Some(k);
    }
    Scan { locked, events }
}

/// Most recent coupling event of every interior site, using the first `m`
/// rings; `None` where it is not yet visible.
pub fn detect_locking(stream: &BackwardEventStream, m: usize, q: Qualifiers) -> Vec<Option<CouplingEvent>> {
    let s = scan(stream, m, q, false);
    let n = stream.num_sites();
    s.events[1..n - 1].to_vec()
}

/// Interior sites locked by plain coupling events within the first `m` rings.
pub fn v1_locked_sites(stream: &BackwardEventStream, m: usize) -> Vec<bool> {
    let n = stream.num_sites();
    scan(stream, m, Qualifiers::Standard, false).locked[1..n - 1].to_vec()
}

/// Interior sites locked by the sweep that lets locked neighbors qualify.
pub fn v2_locked_sites(stream: &BackwardEventStream, m: usize) -> Vec<bool> {
    let n = stream.num_sites();
    scan(stream, m, Qualifiers::Standard, true).locked[1..n - 1].to_vec()
}
