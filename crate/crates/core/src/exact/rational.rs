//! Exact rational arithmetic: the same systems solved over the rationals
//! with fraction-free (Bareiss) elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::circle::{check_circle, for_each_move};
use super::ypr::{nucleotide_frequencies_generic, ypr_system_generic};
use crate::error::{Error, Result};
use crate::model::{validate, RateParameters, RateTable};
use crate::scalar::Scalar;

pub type Rational = BigRational;

pub fn rational_table(p: &RateParameters) -> RateTable<Rational> {
    p.map(|&x| Rational::from_f64_exact(x))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Solve `A x = b` exactly. Rows are scaled to integers, then reduced
/// with Bareiss' fraction-free elimination.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("system must be square".into()));
    }
    // integer augmented matrix
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = a[i].iter().chain(std::iter::once(&b[i])).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a[i].iter().chain(std::iter::once(&b[i])).map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n).find(|&i| !m[i][k].is_zero()).ok_or_else(|| Error::Solver("singular system".into()))?;
        m.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// Exact `(CG, CA, TG, TA)` frequencies.
pub fn ypr_frequencies_exact(p: &RateParameters) -> Result<[Rational; 4]> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    let sys = ypr_system_generic(&rational_table(p))?;
    let a: Vec<Vec<Rational>> = sys.m.iter().map(|r| r.to_vec()).collect();
    let x = solve_exact(&a, &sys.rhs)?;
    Ok([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()])
}

pub fn nucleotide_frequencies_exact(p: &RateParameters, ypr: &[Rational; 4]) -> Result<[Rational; 4]> {
    nucleotide_frequencies_generic(&rational_table(p), ypr)
}

/// Exact stationary word frequencies of length `len` from a circle of
/// `len + 2` sites, through the rotation-lumped chain. Practical for
/// circles up to 5 sites.
pub fn word_frequencies_exact(p: &RateParameters, len: usize) -> Result<Vec<Rational>> {
    let n = (len + 2).max(3);
    check_circle(n)?;
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidParameters(report.hard_violations));
    }
    let table = rational_table(p);
    let red = super::orbit::lumped_chain(p, n)?;
    if !red.generator.is_irreducible() {
        return Err(Error::Solver("generator is reducible".into()));
    }
    let m = red.num_orbits();
    let mut a = vec![vec![Rational::zero(); m]; m];
    for (o, &rep) in red.reps.iter().enumerate() {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for_each_move(&table, n, rep, |to, r: Rational| {
            let t = red.orbit_of[to as usize] as usize;
            if t != o && r.is_positive() {
                *row.entry(t).or_insert_with(Rational::zero) += r;
            }
        });
        for (t, r) in row {
            // transpose: equation t gets inflow from o
            a[t][o] += &r;
            a[o][o] -= r;
        }
    }
    for j in 0..m {
        a[m - 1][j] = Rational::one();
    }
    let mut b = vec![Rational::zero(); m];
    b[m - 1] = Rational::one();
    let pi_orbit = solve_exact(&a, &b)?;
    let mut out = vec![Rational::zero(); 1 << (2 * len)];
    for code in 0..(1u32 << (2 * n)) {
        let o = red.orbit_of[code as usize] as usize;
        let share = &pi_orbit[o] / Rational::from_integer(BigInt::from(red.sizes[o]));
        let idx = (1..=len).fold(0usize, |acc, i| acc * 4 + super::circle::site(code, n, i).index());
        out[idx] += share;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simplest;

    #[test]
    fn bareiss_small() {
        let a = vec![vec![ratio(2, 1), ratio(1, 3)], vec![ratio(1, 2), ratio(0, 1)]];
        let x = solve_exact(&a, &[ratio(1, 1), ratio(1, 1)]).unwrap();
        assert_eq!(x[0], ratio(2, 1));
        assert_eq!(x[1], ratio(-9, 1));
    }

    #[test]
    fn simplest_exact() {
        let p = simplest(1.0).unwrap();
        let f = ypr_frequencies_exact(&p).unwrap();
        assert_eq!(f, [ratio(1, 21), ratio(23, 336), ratio(23, 336), ratio(11, 168)]);
        let n = nucleotide_frequencies_exact(&p, &f).unwrap();
        assert_eq!(n, [ratio(11, 42), ratio(11, 42), ratio(10, 42), ratio(10, 42)]);
    }

    #[test]
    fn circle_exact_dinucleotides() {
        let p = simplest(1.0).unwrap();
        let f = word_frequencies_exact(&p, 2).unwrap();
        let cg = crate::nucleotide::encode_word(&crate::nucleotide::parse_word("CG").unwrap());
        let at = crate::nucleotide::encode_word(&crate::nucleotide::parse_word("AT").unwrap());
        assert_eq!(f[cg], ratio(1, 21));
        assert_eq!(f[at], ratio(121, 1764));
    }
}
