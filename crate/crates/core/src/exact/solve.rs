use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Systems up to this size are solved by dense LU.
pub const DENSE_LIMIT: usize = 1000;

/// Off-diagonal generator entries in CSR layout plus the exit rates.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGenerator {
    pub row_ptr: Vec<usize>,
    pub cols: Vec<u32>,
    pub vals: Vec<f64>,
    pub exit: Vec<f64>,
}

impl SparseGenerator {
    pub fn from_rows(rows: Vec<Vec<(u32, f64)>>) -> Self {
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut exit = Vec::with_capacity(rows.len());
        for row in rows {
            let mut total = 0.0;
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
                total += v;
            }
            exit.push(total);
            row_ptr.push(cols.len());
        }
        SparseGenerator { row_ptr, cols, vals, exit }
    }

    pub fn from_csr(row_ptr: Vec<usize>, cols: Vec<u32>, vals: Vec<f64>, exit: Vec<f64>) -> Self {
        SparseGenerator { row_ptr, cols, vals, exit }
    }

    pub fn len(&self) -> usize {
        self.exit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exit.is_empty()
    }

    pub fn row(&self, s: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[s]..self.row_ptr[s + 1];
        self.cols[r.clone()].iter().map(|&c| c as usize).zip(self.vals[r].iter().copied())
    }

    /// Infinity norm of the generator, `2 max exit`.
    pub fn norm_inf(&self) -> f64 {
        2.0 * self.exit.iter().cloned().fold(0.0, f64::max)
    }

    /// `||pi Q||_inf`.
    pub fn residual(&self, pi: &[f64]) -> f64 {
        let mut out: Vec<f64> = pi.iter().zip(&self.exit).map(|(p, e)| -p * e).collect();
        for s in 0..self.len() {
            for (c, v) in self.row(s) {
                out[c] += pi[s] * v;
            }
        }
        out.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn transpose(&self) -> Vec<Vec<(usize, f64)>> {
        let mut t = vec![Vec::new(); self.len()];
        for s in 0..self.len() {
            for (c, v) in self.row(s) {
                if v != 0.0 {
                    t[c].push((s, v));
                }
            }
        }
        t
    }

    /// True when the support graph is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let forward: Vec<Vec<usize>> =
            (0..n).map(|s| self.row(s).filter(|&(_, v)| v > 0.0).map(|(c, _)| c).collect()).collect();
        let backward: Vec<Vec<usize>> = self
            .transpose()
            .into_iter()
            .map(|r| r.into_iter().filter(|&(_, v)| v > 0.0).map(|(c, _)| c).collect())
            .collect();
        reaches_all(&forward) && reaches_all(&backward)
    }
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(s) = stack.pop() {
        for &t in &adj[s] {
            if !seen[t] {
                seen[t] = true;
                count += 1;
                stack.push(t);
            }
        }
    }
    count == adj.len()
}

/// Relative residual threshold for accepting a stationary vector.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Unique stationary law of an irreducible generator.
pub fn solve_stationary(g: &SparseGenerator) -> Result<Vec<f64>> {
    if g.len() == 1 {
        return Ok(vec![1.0]);
    }
    if !g.is_irreducible() {
        return Err(Error::Solver("generator is reducible; stationary law is not unique".into()));
    }
    let mut pi = if g.len() <= DENSE_LIMIT { dense(g)? } else { gauss_seidel(g)? };
    clean(&mut pi);
    let res = g.residual(&pi);
    let scale = g.norm_inf().max(f64::MIN_POSITIVE);
    if res > RESIDUAL_TOL * scale {
        return Err(Error::Solver(format!("stationary residual {res:e} exceeds tolerance")));
    }
    Ok(pi)
}

fn clean(pi: &mut [f64]) {
    for p in pi.iter_mut() {
        if *p < 0.0 {
            *p = 0.0;
        }
    }
    let s: f64 = pi.iter().sum();
    for p in pi.iter_mut() {
        *p /= s;
    }
}

fn dense(g: &SparseGenerator) -> Result<Vec<f64>> {
    let n = g.len();
    // Q^T pi = 0 with the last equation replaced by sum(pi) = 1
    let mut a = DMatrix::<f64>::zeros(n, n);
    for s in 0..n {
        a[(s, s)] -= g.exit[s];
        for (c, v) in g.row(s) {
            a[(c, s)] += v;
        }
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(n);
    b[n - 1] = 1.0;
    let lu = a.clone().lu();
    let mut x = lu.solve(&b).ok_or_else(|| Error::Solver("singular stationary system".into()))?;
    // one step of iterative refinement
    let r = &b - &a * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }
    Ok(x.iter().copied().collect())
}

fn gauss_seidel(g: &SparseGenerator) -> Result<Vec<f64>> {
    let n = g.len();
    let incoming = g.transpose();
    let mut pi = vec![1.0 / n as f64; n];
    let scale = g.norm_inf();
    let mut best = f64::INFINITY;
    let mut stalled = 0;
    for _ in 0..2_000 {
        for _ in 0..10 {
            for j in 0..n {
                if g.exit[j] > 0.0 {
                    let inflow: f64 = incoming[j].iter().map(|&(i, v)| pi[i] * v).sum();
                    pi[j] = inflow / g.exit[j];
                }
            }
            let s: f64 = pi.iter().sum();
            for p in pi.iter_mut() {
                *p /= s;
            }
        }
        // iterate to round-off: window sums of tiny entries need it
        let res = g.residual(&pi);
        if res <= 1e-17 * scale {
            return Ok(pi);
        }
        if res < 0.5 * best {
            best = res;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 10 && best <= RESIDUAL_TOL * scale {
                return Ok(pi);
            }
        }
    }
    if best <= RESIDUAL_TOL * scale {
        return Ok(pi);
    }
    Err(Error::Solver("Gauss-Seidel did not converge".into()))
}
