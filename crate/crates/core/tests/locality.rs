//! Pathwise properties of the clock construction: for a fixed clock
//! realization the evolution is a deterministic map, so all checks are exact.

#![allow(clippy::needless_range_loop)]

mod common;

use common::{random_model, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ypr_core::model::{derive, simplest, RateParameters};
use ypr_core::nucleotide::{decode_word, Nucleotide, A, C, G, T};
use ypr_core::simulator::{
    evolve_with_clocks, ry_from_clocks, ry_project, sample_clocks, ClockEvent, ClockRealization, MoveRules,
};

const REALIZATIONS: u64 = 100;

fn random_seq(r: &mut ChaCha8Rng, n: usize) -> Vec<Nucleotide> {
    (0..n).map(|_| Nucleotide::from_index(r.random_range(0..4))).collect()
}

fn run(rules: &MoveRules, x: &[Nucleotide], first: i64, clocks: &ClockRealization, s: f64, t: f64) -> Vec<Nucleotide> {
    let mut y = x.to_vec();
    evolve_with_clocks(rules, &mut y, first, clocks, s, t);
    y
}

/// A model per realization: alternately the simplest table and random
/// tables with some negative increments.
fn model(r: &mut ChaCha8Rng, k: u64) -> RateParameters {
    if k.is_multiple_of(4) {
        simplest(1.0 + k as f64 / 10.0).unwrap()
    } else {
        random_model(r, k % 2 == 1)
    }
}

fn rho(x: Nucleotide) -> u8 {
    if x.is_purine() {
        4
    } else {
        x.index() as u8
    }
}

fn eta(x: Nucleotide) -> u8 {
    if x.is_pyrimidine() {
        4
    } else {
        x.index() as u8
    }
}

#[test]
fn site_depends_only_on_its_neighbourhood() {
    let n = 5;
    let mut r = rng(101);
    let mut violations = 0;
    let mut changed = 0;
    for k in 0..REALIZATIONS {
        let p = model(&mut r, k);
        let d = derive(&p).unwrap();
        let rules = MoveRules::new(&p);
        let t = r.random_range(0.5..6.0);
        let clocks = sample_clocks(&d, 0..n as i64, 0.0, t, 1000 + k);
        let x = random_seq(&mut r, n);
        let base = run(&rules, &x, 0, &clocks, 0.0, t);
        if base != x {
            changed += 1;
        }
        for i in 0..n {
            let outside = [(i + 2) % n, (i + 3) % n];
            for code in 0..16 {
                let mut y = x.clone();
                for (j, z) in outside.iter().zip(decode_word(code, 2)) {
                    y[*j] = z;
                }
                if run(&rules, &y, 0, &clocks, 0.0, t)[i] != base[i] {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!(violations, 0);
    assert!(changed > REALIZATIONS / 2, "too few realizations moved anything: {changed}");
}

#[test]
fn coarse_neighbourhood_triple() {
    // rho(left), centre and eta(right) see the neighbours only through
    // rho(x_left) and eta(x_right)
    let n = 6;
    let mut r = rng(102);
    let mut violations = 0;
    for k in 0..REALIZATIONS {
        let p = model(&mut r, k);
        let d = derive(&p).unwrap();
        let rules = MoveRules::new(&p);
        let t = r.random_range(0.5..6.0);
        let clocks = sample_clocks(&d, 0..n as i64, 0.0, t, 2000 + k);
        let x = random_seq(&mut r, n);
        let base = run(&rules, &x, 0, &clocks, 0.0, t);
        for i in 0..n {
            let (l, rt) = ((i + n - 1) % n, (i + 1) % n);
            let triple = |y: &[Nucleotide]| (rho(y[l]), y[i], eta(y[rt]));
            let want = triple(&base);
            let far: Vec<usize> = (0..n).filter(|j| ![l, i, rt].contains(j)).collect();
            for trial in 0..8 {
                let mut y = x.clone();
                if y[l].is_purine() && trial & 1 == 1 {
                    y[l] = y[l].star();
                }
                if y[rt].is_pyrimidine() && trial & 2 == 2 {
                    y[rt] = y[rt].star();
                }
                if trial & 4 == 4 {
                    for &j in &far {
                        y[j] = Nucleotide::from_index(r.random_range(0..4));
                    }
                }
                if triple(&run(&rules, &y, 0, &clocks, 0.0, t)) != want {
                    violations += 1;
                }
            }
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn interior_ignores_the_enclosing_circle() {
    let mut r = rng(103);
    let mut violations = 0;
    for k in 0..REALIZATIONS {
        let n = 5 + (k % 3) as usize;
        let p = model(&mut r, k);
        let d = derive(&p).unwrap();
        let rules = MoveRules::new(&p);
        let t = r.random_range(0.5..6.0);
        // one realization covering both circles, so common sites share rings
        let clocks = sample_clocks(&d, -1..n as i64 + 1, 0.0, t, 3000 + k);
        let big = random_seq(&mut r, n + 2);
        let small = big[1..=n].to_vec();
        let out_big = run(&rules, &big, -1, &clocks, 0.0, t);
        let out_small = run(&rules, &small, 0, &clocks, 0.0, t);
        if out_big[2..n] != out_small[1..n - 1] {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
}

#[test]
fn ry_classes_follow_the_u_and_v_rings() {
    let mut r = rng(104);
    for k in 0..REALIZATIONS {
        let n = 3 + (k % 6) as usize;
        let p = model(&mut r, k);
        let d = derive(&p).unwrap();
        let rules = MoveRules::new(&p);
        let clocks = sample_clocks(&d, 0..n as i64, 0.0, 5.0, 4000 + k);
        let x = random_seq(&mut r, n);
        for t in [0.0, 1.0, 2.5, 5.0] {
            let y = run(&rules, &x, 0, &clocks, 0.0, t);
            assert_eq!(ry_project(&y), ry_from_clocks(&x, 0, &clocks, t), "realization {k} t {t}");
        }
    }
}

#[test]
fn flow_and_time_translation() {
    let mut r = rng(105);
    for k in 0..REALIZATIONS {
        let n = 4 + (k % 4) as usize;
        let p = model(&mut r, k);
        let d = derive(&p).unwrap();
        let rules = MoveRules::new(&p);
        let clocks = sample_clocks(&d, 0..n as i64, 0.0, 8.0, 5000 + k);
        let x = random_seq(&mut r, n);
        let (s, t) = (r.random_range(0.0..4.0), r.random_range(4.0..8.0));
        let direct = run(&rules, &x, 0, &clocks, 0.0, t);
        let mid = run(&rules, &x, 0, &clocks, 0.0, s);
        assert_eq!(run(&rules, &mid, 0, &clocks, s, t), direct, "flow, realization {k}");

        let shift = 17.25;
        let moved: Vec<ClockEvent> =
            clocks.events().iter().map(|e| ClockEvent { time: e.time + shift, ..*e }).collect();
        let shifted = ClockRealization::from_events(0, n, shift, 8.0 + shift, moved);
        assert_eq!(run(&rules, &x, 0, &shifted, shift, t + shift), direct, "translation, realization {k}");

        // rings after t are irrelevant
        let cut: Vec<ClockEvent> = clocks.events().iter().filter(|e| e.time <= t).copied().collect();
        let truncated = ClockRealization::from_events(0, n, 0.0, t, cut);
        assert_eq!(run(&rules, &x, 0, &truncated, 0.0, t), direct);
    }
}

#[test]
fn perturbation_smoke() {
    // sanity: a CpG on a fast-decaying model does change something
    let p = simplest(50.0).unwrap();
    let d = derive(&p).unwrap();
    let rules = MoveRules::new(&p);
    let clocks = sample_clocks(&d, 0..4, 0.0, 2.0, 7);
    let x = vec![C, G, A, T];
    assert_ne!(run(&rules, &x, 0, &clocks, 0.0, 2.0), x);
}
