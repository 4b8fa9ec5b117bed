#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ypr_core::model::{EdgeKind, RateParameters, YprEdge};
use ypr_core::nucleotide::{Nucleotide, C, G};
use ypr_core::validate;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vw(rng: &mut ChaCha8Rng) -> RateParameters {
    let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.3..2.0));
    let w: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.3..2.0));
    RateParameters::from_vw(|x| v[x.index()], |x| w[x.index()])
}

/// Random CFTP-eligible table. With `negative`, some YpR increments are
/// negative (never both toward one target, and never below `-0.6 w`).
pub fn random_model(rng: &mut ChaCha8Rng, negative: bool) -> RateParameters {
    let mut p = random_vw(rng);
    for e in YprEdge::ALL {
        let w = p.w(e.target());
        let r = match rng.random_range(0..3) {
            0 => 0.0,
            1 => rng.random_range(0.0..2.0),
            _ if negative => -rng.random_range(0.0..0.6) * w,
            _ => rng.random_range(0.0..2.0),
        };
        p.set_r(e, r);
    }
    for x in Nucleotide::ALL {
        let (er, eq) = (YprEdge::of_kind(x, EdgeKind::R), YprEdge::of_kind(x, EdgeKind::Q));
        if p.r(er) < 0.0 && p.r(eq) < 0.0 {
            p.set_r(eq, -p.r(eq));
        }
    }
    assert!(validate(&p).cftp_eligible, "{p:?}");
    p
}

/// Random table eligible for the modified sampler: only CpG increments,
/// `w_C = v_C` and `w_G = v_G`.
pub fn random_special(rng: &mut ChaCha8Rng) -> RateParameters {
    let mut p = random_vw(rng);
    for x in [C, G] {
        p.set_w(x, p.v(x));
    }
    p.set_r(YprEdge::CgCa, rng.random_range(0.0..3.0));
    p.set_r(YprEdge::CgTg, rng.random_range(0.0..3.0));
    assert!(validate(&p).special_eligible, "{p:?}");
    p
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
