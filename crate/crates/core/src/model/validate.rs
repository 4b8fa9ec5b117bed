use serde::Serialize;

use super::derived::derive_unchecked;
use super::{EdgeKind, RateParameters, YprEdge};
use crate::nucleotide::{Nucleotide, C, G};

/// Everything wrong (or merely limiting) about a rate table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Violations that make the model meaningless; every solver rejects these.
    pub hard_violations: Vec<String>,
    /// All `v_x > 0` and all `c_x > 0`.
    pub nd: bool,
    pub nd_failures: Vec<String>,
    /// The Poisson-clock construction reproduces the generator. Fails only
    /// when both YpR increments toward the same target are negative.
    pub graphical_exact: bool,
    pub cftp_eligible: bool,
    pub cftp_reasons: Vec<String>,
    /// Eligible for the modified coupling sampler.
    pub special_eligible: bool,
    pub special_reasons: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.hard_violations.is_empty()
    }
}

pub fn validate(p: &RateParameters) -> ValidationReport {
    let mut hard = Vec::new();
    if !p.is_finite() {
        hard.push("rates must be finite".to_string());
    }
    for x in Nucleotide::ALL {
        if !(p.v(x) >= 0.0) {
            hard.push(format!("v_{x} = {} is negative", p.v(x)));
        }
        if !(p.w(x) >= 0.0) {
            hard.push(format!("w_{x} = {} is negative", p.w(x)));
        }
    }
    for e in YprEdge::ALL {
        let x = e.target();
        if !(p.w(x) + p.r(e) >= 0.0) {
            hard.push(format!("w_{x} + r[{e}] = {} is negative", p.w(x) + p.r(e)));
        }
    }
    let mut report = ValidationReport {
        hard_violations: hard,
        nd: false,
        nd_failures: Vec::new(),
        graphical_exact: false,
        cftp_eligible: false,
        cftp_reasons: Vec::new(),
        special_eligible: false,
        special_reasons: Vec::new(),
    };
    if !report.is_valid() {
        report.cftp_reasons.push("hard violations".into());
        report.special_reasons.push("hard violations".into());
        return report;
    }

    let d = derive_unchecked(p);
    for x in Nucleotide::ALL {
        if !(p.v(x) > 0.0) {
            report.nd_failures.push(format!("v_{x} = 0"));
        }
        if !(d.c[x.index()] > 0.0) {
            report.nd_failures.push(format!("c_{x} = {}", d.c[x.index()]));
        }
    }
    report.nd = report.nd_failures.is_empty();

    report.graphical_exact = Nucleotide::ALL.iter().all(|&x| {
        let r = p.r(YprEdge::of_kind(x, EdgeKind::R));
        let q = p.r(YprEdge::of_kind(x, EdgeKind::Q));
        !(r < 0.0 && q < 0.0)
    });

    let mut why = Vec::new();
    if !report.nd {
        why.push(format!("(ND) fails: {}", report.nd_failures.join(", ")));
    }
    if !(d.alpha > 0.0) {
        why.push("alpha = 0 (a class has zero transversion rate)".into());
    }
    if !(d.kappa > 0.0) {
        why.push("kappa = 0".into());
    }
    if !report.graphical_exact {
        why.push("both YpR increments toward one target are negative".into());
    }
    report.cftp_eligible = why.is_empty();
    report.cftp_reasons = why;

    let mut sp = Vec::new();
    if !report.cftp_eligible {
        sp.push("not CFTP-eligible".into());
    }
    for x in [C, G] {
        if p.w(x) != p.v(x) {
            sp.push(format!("w_{x} != v_{x}"));
        }
    }
    for e in YprEdge::ALL {
        if !matches!(e, YprEdge::CgCa | YprEdge::CgTg) && p.r(e) != 0.0 {
            sp.push(format!("r[{e}] != 0"));
        }
    }
    report.special_eligible = sp.is_empty();
    report.special_reasons = sp;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simplest;
    use crate::nucleotide::A;

    #[test]
    fn uniform_is_fine() {
        let r = validate(&simplest(0.0).unwrap());
        assert!(r.is_valid() && r.nd && r.cftp_eligible && r.special_eligible && r.graphical_exact);
    }

    #[test]
    fn rho_minus_one_fails_nd_only() {
        let r = validate(&simplest(-1.0).unwrap());
        assert!(r.is_valid());
        assert!(!r.nd);
        assert!(!r.cftp_eligible);
        assert!(r.graphical_exact);
    }

    #[test]
    fn zero_transversion() {
        let mut p = simplest(0.0).unwrap();
        p.set_v(A, 0.0);
        let r = validate(&p);
        assert!(r.is_valid() && !r.nd && !r.cftp_eligible);
    }

    #[test]
    fn hard_violations_listed() {
        let mut p = simplest(0.0).unwrap();
        p.set_w(A, -1.0);
        p.set_r(YprEdge::TaCa, -2.0);
        let r = validate(&p);
        assert!(r.hard_violations.len() >= 3, "{:?}", r.hard_violations);
    }

    #[test]
    fn both_negative_breaks_clocks() {
        let p = simplest(0.0).unwrap().with_r(YprEdge::CgCa, -0.3).with_r(YprEdge::TgTa, -0.2);
        let r = validate(&p);
        assert!(r.is_valid() && r.nd && !r.graphical_exact && !r.cftp_eligible);
    }
}
