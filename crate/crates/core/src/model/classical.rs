use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{validate, RateParameters, YprEdge};
use crate::error::{Error, Result};
use crate::nucleotide::{Nucleotide, A, C, G, T};

/// Classical single-site models (plus Tamura with CpG hypermutability).
///
/// Arguments:
/// - `JC69(mu)`
/// - `K80(v, w)`
/// - `HKY85(v_A, v_T, v_C, v_G, kappa)`: `w_x = kappa v_x`
/// - `F84(v_A, v_T, v_C, v_G, K)`: `w_x = v_x (1 + K v / V_x)` with `V_x` the
///   transversion mass of the class of `x`
/// - `TN93(v_A, v_T, v_C, v_G, kappa_R, kappa_Y)`: `w_x = kappa_class v_x`
/// - `Tamura(v1, v2, kappa)`: `v_C = v_G = v1`, `v_A = v_T = v2`, `w = kappa v`
/// - `TamuraCpG(v1, v2, kappa, rho)`: Tamura plus `r^C_A = r^G_T = rho`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalKind {
    JC69,
    K80,
    HKY85,
    F84,
    TN93,
    Tamura,
    TamuraCpG,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 7] = [
        ClassicalKind::JC69,
        ClassicalKind::K80,
        ClassicalKind::HKY85,
        ClassicalKind::F84,
        ClassicalKind::TN93,
        ClassicalKind::Tamura,
        ClassicalKind::TamuraCpG,
    ];

    pub fn arity(self) -> usize {
        match self {
            ClassicalKind::JC69 => 1,
            ClassicalKind::K80 => 2,
            ClassicalKind::HKY85 | ClassicalKind::F84 => 5,
            ClassicalKind::TN93 => 6,
            ClassicalKind::Tamura => 3,
            ClassicalKind::TamuraCpG => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::JC69 => "jc69",
            ClassicalKind::K80 => "k80",
            ClassicalKind::HKY85 => "hky85",
            ClassicalKind::F84 => "f84",
            ClassicalKind::TN93 => "tn93",
            ClassicalKind::Tamura => "tamura",
            ClassicalKind::TamuraCpG => "tamura_cpg",
        }
    }
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = s.trim().to_ascii_lowercase().replace('-', "_");
        ClassicalKind::ALL
            .into_iter()
            .find(|c| c.name() == k || (k == "tamuracpg" && *c == ClassicalKind::TamuraCpG))
            .ok_or_else(|| Error::Parse(format!("unknown model kind {s:?}")))
    }
}

pub fn from_classical(kind: ClassicalKind, args: &[f64]) -> Result<RateParameters> {
    if args.len() != kind.arity() {
        return Err(Error::InvalidArgument(format!("{kind} takes {} arguments, got {}", kind.arity(), args.len())));
    }
    if let Some(bad) = args.iter().find(|a| !a.is_finite() || **a < 0.0) {
        return Err(Error::InvalidArgument(format!("{kind} arguments must be finite and non-negative, got {bad}")));
    }
    let per_v = |a: &[f64]| {
        let a: [f64; 4] = [a[0], a[1], a[2], a[3]];
        move |x: Nucleotide| a[x.index()]
    };
    let p = match kind {
        ClassicalKind::JC69 => RateParameters::from_vw(|_| args[0], |_| args[0]),
        ClassicalKind::K80 => RateParameters::from_vw(|_| args[0], |_| args[1]),
        ClassicalKind::HKY85 => {
            let v = per_v(&args[..4]);
            RateParameters::from_vw(v, |x| args[4] * v(x))
        }
        ClassicalKind::F84 => {
            let v = per_v(&args[..4]);
            let total: f64 = args[..4].iter().sum();
            let vr = v(A) + v(G);
            let vy = v(C) + v(T);
            let k = args[4];
            RateParameters::from_vw(v, |x| {
                let class = if x.is_purine() { vr } else { vy };
                if class > 0.0 {
                    v(x) * (1.0 + k * total / class)
                } else {
                    0.0
                }
            })
        }
        ClassicalKind::TN93 => {
            let v = per_v(&args[..4]);
            RateParameters::from_vw(v, |x| if x.is_purine() { args[4] * v(x) } else { args[5] * v(x) })
        }
        ClassicalKind::Tamura | ClassicalKind::TamuraCpG => {
            let (v1, v2, kappa) = (args[0], args[1], args[2]);
            let v = move |x: Nucleotide| if matches!(x, C | G) { v1 } else { v2 };
            let mut p = RateParameters::from_vw(v, |x| kappa * v(x));
            if kind == ClassicalKind::TamuraCpG {
                p = p.with_r(YprEdge::CgCa, args[3]).with_r(YprEdge::CgTg, args[3]);
            }
            p
        }
    };
    let report = validate(&p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    Ok(p)
}

fn rel_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

/// Classical kinds whose defining constraints the parameters satisfy.
/// TamuraCpG means Tamura single-site rates with CpG-only, equal increments.
pub fn classify(p: &RateParameters) -> Vec<ClassicalKind> {
    let no_r = p.r.iter().all(|&r| r == 0.0);
    let only_cpg = YprEdge::ALL.iter().all(|&e| matches!(e, YprEdge::CgCa | YprEdge::CgTg) || p.r(e) == 0.0)
        && p.r(YprEdge::CgCa) == p.r(YprEdge::CgTg);
    // w_x v_y == w_y v_x within a class
    let ratio = |x: Nucleotide, y: Nucleotide| rel_eq(p.w(x) * p.v(y), p.w(y) * p.v(x));
    let tn93 = ratio(A, G) && ratio(C, T);
    let hky = tn93 && ratio(A, C);
    let vr = p.v(A) + p.v(G);
    let vy = p.v(C) + p.v(T);
    // F84: w_x / v_x - 1 is proportional to v / V_class with the same K.
    let f84 = tn93
        && vr > 0.0
        && vy > 0.0
        && p.v(A) > 0.0
        && p.v(C) > 0.0
        && rel_eq((p.w(A) / p.v(A) - 1.0) * vr, (p.w(C) / p.v(C) - 1.0) * vy)
        && p.w(A) >= p.v(A);
    let all_eq = |a: &[f64; 4]| a.iter().all(|&x| x == a[0]);
    let k80 = all_eq(&p.v) && all_eq(&p.w);
    let jc = k80 && p.v[0] == p.w[0];
    let tamura_rates = p.v(C) == p.v(G)
        && p.v(A) == p.v(T)
        && p.w(C) == p.w(G)
        && p.w(A) == p.w(T)
        && rel_eq(p.w(C) * p.v(A), p.w(A) * p.v(C));
    let mut out = Vec::new();
    if no_r {
        if jc {
            out.push(ClassicalKind::JC69);
        }
        if k80 {
            out.push(ClassicalKind::K80);
        }
        if hky {
            out.push(ClassicalKind::HKY85);
        }
        if f84 {
            out.push(ClassicalKind::F84);
        }
        if tn93 {
            out.push(ClassicalKind::TN93);
        }
        if tamura_rates {
            out.push(ClassicalKind::Tamura);
        }
    }
    if tamura_rates && only_cpg {
        out.push(ClassicalKind::TamuraCpG);
    }
    out
}
