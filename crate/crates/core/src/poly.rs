//! Vector-valued homogeneous polynomials on `S^n`.
//!
//! An element of `V (x) S^d V*` is stored densely as `n * M_d` coefficients,
//! component-major: index `c * M_d + m` is the coefficient of monomial `m` in
//! component `c`. Monomials of one degree are listed in lexicographic order
//! of exponent vectors, largest first (`x1^d` leads).

use std::collections::HashMap;

use crate::scalar::{add_product, zeros, Scalar};

/// Exponent vectors of one degree with their index lookup.
#[derive(Clone, Debug)]
pub struct Monomials {
    vars: usize,
    degree: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Monomials {
    pub fn new(vars: usize, degree: usize) -> Self {
        let mut exps = Vec::new();
        let mut cur = vec![0u32; vars];
        fill(&mut exps, &mut cur, 0, degree as u32);
        let index = exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Monomials {
            vars,
            degree,
            exps,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn exponent(&self, m: usize) -> &[u32] {
        &self.exps[m]
    }

    pub fn index_of(&self, e: &[u32]) -> usize {
        self.index[e]
    }

    /// Human-readable monomial such as `x1^2*x3`.
    pub fn label(&self, m: usize) -> String {
        let parts: Vec<String> = self.exps[m]
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{a}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a;
        fill(out, cur, pos + 1, left - a);
    }
    cur[pos] = 0;
}

/// Monomial tables for every degree up to a bound, on a fixed number of
/// variables.
#[derive(Clone, Debug)]
pub struct PolySpace {
    vars: usize,
    by_degree: Vec<Monomials>,
}

impl PolySpace {
    pub fn new(vars: usize, max_degree: usize) -> Self {
        PolySpace {
            vars,
            by_degree: (0..=max_degree).map(|d| Monomials::new(vars, d)).collect(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn monomials(&self, degree: usize) -> &Monomials {
        &self.by_degree[degree]
    }

    /// Length of a vector-valued polynomial of the given degree.
    pub fn vector_len(&self, degree: usize) -> usize {
        self.vars * self.by_degree[degree].len()
    }

    /// `d/dx_i` of a vector-valued polynomial of degree `degree >= 1`.
    pub fn derivative<S: Scalar>(&self, p: &[S], degree: usize, i: usize) -> Vec<S> {
        let src = &self.by_degree[degree];
        let dst = &self.by_degree[degree - 1];
        let (ms, md) = (src.len(), dst.len());
        let mut out = zeros::<S>(self.vars * md);
        let mut e = vec![0u32; self.vars];
        for m in 0..ms {
            let a = src.exps[m][i];
            if a == 0 {
                continue;
            }
            e.copy_from_slice(&src.exps[m]);
            e[i] -= 1;
            let t = dst.index[&e];
            let factor = S::from_int(a as i64);
            for c in 0..self.vars {
                let v = &p[c * ms + m];
                if !v.is_zero() {
                    out[c * md + t] = out[c * md + t].plus(&v.times(&factor));
                }
            }
        }
        out
    }

    /// Directional derivative `D_v p`.
    pub fn directional<S: Scalar>(&self, p: &[S], degree: usize, v: &[S]) -> Vec<S> {
        let md = self.by_degree[degree - 1].len();
        let mut out = zeros(self.vars * md);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let d = self.derivative(p, degree, i);
            for (o, x) in out.iter_mut().zip(&d) {
                add_product(o, vi, x);
            }
        }
        out
    }

    /// Product of two scalar polynomials given by dense coefficients.
    fn scalar_product<S: Scalar>(&self, f: &[S], a: usize, g: &[S], b: usize, out: &mut [S]) {
        let (fa, gb, ab) = (&self.by_degree[a], &self.by_degree[b], &self.by_degree[a + b]);
        let mut e = vec![0u32; self.vars];
        for (m, fm) in f.iter().enumerate() {
            if fm.is_zero() {
                continue;
            }
            for (k, gk) in g.iter().enumerate() {
                if gk.is_zero() {
                    continue;
                }
                for (t, slot) in e.iter_mut().enumerate() {
                    *slot = fa.exps[m][t] + gb.exps[k][t];
                }
                add_product(&mut out[ab.index[&e]], fm, gk);
            }
        }
    }

    /// `DX.Y - DY.X` for `X` of degree `a` and `Y` of degree `b`; the result
    /// has degree `a + b - 1`. Degree zero inputs are constant vectors.
    pub fn field_bracket<S: Scalar>(&self, x: &[S], a: usize, y: &[S], b: usize) -> Vec<S> {
        let n = self.vars;
        if a + b == 0 {
            return zeros(n);
        }
        let deg = a + b - 1;
        let mo = self.by_degree[deg].len();
        let mut out = zeros(n * mo);
        let my = self.by_degree[b].len();
        let mx = self.by_degree[a].len();
        // (DX.Y)_c = sum_j (d_j X_c) * Y_j
        if a >= 1 {
            let md = self.by_degree[a - 1].len();
            for j in 0..n {
                let yj = &y[j * my..(j + 1) * my];
                if yj.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let dx = self.derivative(x, a, j);
                for c in 0..n {
                    self.scalar_product(&dx[c * md..(c + 1) * md], a - 1, yj, b, &mut out[c * mo..(c + 1) * mo]);
                }
            }
        }
        if b >= 1 {
            let md = self.by_degree[b - 1].len();
            let mut neg = zeros::<S>(n * mo);
            for j in 0..n {
                let xj = &x[j * mx..(j + 1) * mx];
                if xj.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let dy = self.derivative(y, b, j);
                for c in 0..n {
                    self.scalar_product(&dy[c * md..(c + 1) * md], b - 1, xj, a, &mut neg[c * mo..(c + 1) * mo]);
                }
            }
            for (o, v) in out.iter_mut().zip(&neg) {
                *o = o.minus(v);
            }
        }
        out
    }
}
