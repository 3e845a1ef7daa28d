//! Generalized Spencer complexes `C_r^{p,q}(h, W)`.
//!
//! For `p >= 1` a cochain in `C_r^{p,q}` is an alternating `q`-form on `W`
//! with values in `h^{p-1} / c_r^{p-1}`, where `c_r^{p-1}` is the level `r`
//! annihilator of `W` in `h^{p-1}`; `C_r^{0,q}` is `V (x) L^q W*` at every
//! level. The operator is
//!
//! ```text
//! dc(w_1, ..., w_{q+1}) = sum_i (-1)^i p'_r [c(..., ^w_i, ...), w_i]
//! ```
//!
//! with `i` running from 1. On `p = 0` the operator has no target; it is
//! returned as the zero cochain of shape `(0, q + 1)`.
//!
//! Cochains are stored on strictly increasing index tuples of a fixed basis
//! of `W` (the echelon basis of the subspace), lexicographically ordered.
//! Values are kept as canonical coset representatives: vectors over the
//! degree `p - 1` component that vanish at the pivot positions of the
//! annihilator. The remaining positions are the quotient coordinates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, GradingKind};
use crate::linalg::{Factorization, Matrix, Subspace};
use crate::scalar::{add_product, axpy, is_zero_vec, zeros, Scalar};

/// Strictly increasing `q`-subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Subsets {
    list: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Subsets {
    pub fn new(n: usize, q: usize) -> Self {
        let list: Vec<Vec<usize>> = if q > n {
            Vec::new()
        } else {
            (0..n).combinations(q).collect()
        };
        let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Subsets { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.list[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.list.iter().map(Vec::as_slice)
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// Sorts `idx` and returns the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // Insertion sort counting transpositions; tuples are short.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// An element of `C_r^{p,q}(h, W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S> {
    p: usize,
    q: usize,
    level: usize,
    w_dim: usize,
    /// One value per increasing `q`-tuple, over degree `p - 1` coordinates.
    values: Vec<Vec<S>>,
}

impl<S: Scalar> Cochain<S> {
    pub(crate) fn from_parts(p: usize, q: usize, level: usize, w_dim: usize, values: Vec<Vec<S>>) -> Self {
        Cochain {
            p,
            q,
            level,
            w_dim,
            values,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    /// Stored values, one per increasing tuple in lexicographic order.
    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    /// Value on an arbitrary index tuple, with the alternating sign applied.
    pub fn eval(&self, idx: &[usize]) -> Vec<S> {
        assert_eq!(idx.len(), self.q, "tuple length");
        let width = self.values.first().map_or(0, Vec::len);
        match sort_with_sign(idx) {
            None => zeros(width),
            Some((sorted, sign)) => {
                let pos = Subsets::new(self.w_dim, self.q)
                    .position(&sorted)
                    .expect("indices inside W");
                let v = &self.values[pos];
                if sign == 1 {
                    v.clone()
                } else {
                    v.iter().map(Scalar::negated).collect()
                }
            }
        }
    }

    fn same_shape(&self, other: &Cochain<S>) -> Result<()> {
        if (self.p, self.q, self.level, self.w_dim) != (other.p, other.q, other.level, other.w_dim) {
            return Err(Error::DimensionMismatch(format!(
                "cochains of shape ({},{},{}) and ({},{},{})",
                self.p, self.q, self.level, other.p, other.q, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain<S>) -> Result<Cochain<S>> {
        self.same_shape(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.plus(y)).collect())
            .collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn scale(&self, c: &S) -> Cochain<S> {
        Cochain {
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|x| x.times(c)).collect())
                .collect(),
            ..self.clone()
        }
    }

    pub fn negated(&self) -> Cochain<S> {
        self.scale(&S::one().negated())
    }
}

/// Dimensions (and optionally bases) of `Z`, `B` and `H` at one `(p, q, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport<S> {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Cocycles in cochain coordinates, when requested.
    pub z_basis: Option<Subspace<S>>,
    /// Coboundaries in cochain coordinates, when requested.
    pub b_basis: Option<Subspace<S>>,
}

type Key = (usize, usize, usize);

/// A graded algebra together with `W` inside its degree `-1` component.
pub struct SpencerComplex<S> {
    algebra: GradedLieAlgebra<S>,
    w: Subspace<S>,
    /// `ad[d][k]`: matrix of `X -> [X, w_k]` from degree `d >= 0` to `d - 1`,
    /// in component coordinates.
    ad: Vec<Vec<Matrix<S>>>,
    /// `ann[d][r]` for `r = 0..=d+2`.
    ann: Vec<Vec<Subspace<S>>>,
    d_cache: Mutex<HashMap<Key, Arc<Matrix<S>>>>,
    f_cache: Mutex<HashMap<Key, Arc<Factorization<S>>>>,
}

impl<S: Scalar> std::fmt::Debug for SpencerComplex<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpencerComplex")
            .field("algebra", &self.algebra)
            .field("w_dim", &self.w.dim())
            .finish()
    }
}

impl<S: Scalar> SpencerComplex<S> {
    /// `w` is given in coordinates of the degree `-1` component.
    pub fn new(algebra: GradedLieAlgebra<S>, w: Subspace<S>) -> Result<Self> {
        if algebra.kind() != GradingKind::Graded {
            return Err(Error::Precondition(
                "Spencer complexes need a graded (not quasi-graded) algebra".into(),
            ));
        }
        if let Some(v) = algebra.grading_report().first() {
            return Err(Error::Precondition(format!(
                "bracket [{},{}] violates the grading",
                algebra.names()[v.pair.0],
                algebra.names()[v.pair.1]
            )));
        }
        let vdim = algebra.component_dim(-1);
        if w.ambient() != vdim {
            return Err(Error::InvalidInput(format!(
                "W lives in dimension {}, degree -1 component has dimension {vdim}",
                w.ambient()
            )));
        }
        if w.is_zero() {
            return Err(Error::InvalidInput("W must be nonzero".into()));
        }
        let top = algebra.height() as i32 - 1;
        let w_full: Vec<Vec<S>> = w.basis().iter().map(|b| algebra.embed(-1, b)).collect();
        let mut ad = Vec::new();
        for d in 0..=top.max(-1) {
            let src = algebra.component(d);
            let dst = algebra.component(d - 1);
            let pos: HashMap<usize, usize> = dst.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut per_w = Vec::new();
            for wv in &w_full {
                let mut m = Matrix::<S>::zeros(dst.len(), src.len());
                for (col, &x) in src.iter().enumerate() {
                    for (v, wc) in wv.iter().enumerate() {
                        if wc.is_zero() {
                            continue;
                        }
                        for (t, c) in algebra.bracket_basis(x, v) {
                            let row = pos[t];
                            let cur = m[(row, col)].plus(&wc.times(c));
                            m[(row, col)] = cur;
                        }
                    }
                }
                per_w.push(m);
            }
            ad.push(per_w);
        }
        let mut ann: Vec<Vec<Subspace<S>>> = Vec::new();
        for d in 0..=top.max(-1) {
            let n = algebra.component_dim(d);
            let mut levels = vec![Subspace::zero(n)];
            for r in 1..=(d as usize + 2) {
                // c_r^d = {X : [X, w] in c_{r-1}^{d-1} for all w}.
                let below_full = if d == 0 {
                    r >= 2
                } else {
                    ann[d as usize - 1][(r - 1).min(d as usize + 1)].is_full()
                };
                if below_full {
                    levels.push(Subspace::full(n));
                    continue;
                }
                let mut rows = Vec::new();
                for m in &ad[d as usize] {
                    if d == 0 {
                        rows.extend(m.row_vecs());
                    } else {
                        let eq = ann[d as usize - 1][r - 1].equations();
                        rows.extend(eq.mul(m)?.row_vecs());
                    }
                }
                levels.push(Matrix::from_rows(rows, n)?.kernel());
            }
            ann.push(levels);
        }
        Ok(SpencerComplex {
            algebra,
            w,
            ad,
            ann,
            d_cache: Mutex::new(HashMap::new()),
            f_cache: Mutex::new(HashMap::new()),
        })
    }

    /// `W` spanned by the first `n` coordinates of the degree `-1` component.
    pub fn with_leading_w(algebra: GradedLieAlgebra<S>, n: usize) -> Result<Self> {
        let vdim = algebra.component_dim(-1);
        if n == 0 || n > vdim {
            return Err(Error::InvalidInput(format!("W dimension {n} must lie in 1..={vdim}")));
        }
        Self::new(algebra, Subspace::coordinate(vdim, 0..n))
    }

    pub fn algebra(&self) -> &GradedLieAlgebra<S> {
        &self.algebra
    }

    pub fn w(&self) -> &Subspace<S> {
        &self.w
    }

    pub fn w_dim(&self) -> usize {
        self.w.dim()
    }

    pub fn v_dim(&self) -> usize {
        self.algebra.component_dim(-1)
    }

    fn top(&self) -> i32 {
        self.algebra.height() as i32 - 1
    }

    /// Matrix of `X -> [X, w_k]` from degree `d` to degree `d - 1`.
    pub fn ad_w(&self, d: i32, k: usize) -> &Matrix<S> {
        &self.ad[d as usize][k]
    }

    /// Level `r` annihilator `c_r^d` of `W` in `h^d`, in component coordinates.
    ///
    /// `r = 0` gives zero; `r >= d + 2` gives the whole component.
    pub fn annihilator(&self, d: i32, r: usize) -> Result<Subspace<S>> {
        if d < 0 || d > self.top() {
            return Err(Error::InvalidInput(format!("degree {d} outside 0..={}", self.top())));
        }
        let levels = &self.ann[d as usize];
        Ok(levels[r.min(levels.len() - 1)].clone())
    }

    /// The subspace values of `C_r^{p,q}` are reduced against.
    fn quotient(&self, p: usize, r: usize) -> Subspace<S> {
        let d = p as i32 - 1;
        if d < 0 {
            return Subspace::zero(self.v_dim());
        }
        if d > self.top() {
            return Subspace::zero(0);
        }
        self.annihilator(d, r).expect("degree in range")
    }

    fn value_width(&self, p: usize) -> usize {
        self.algebra.component_dim(p as i32 - 1)
    }

    /// Number of quotient coordinates per tuple.
    fn fiber_dim(&self, p: usize, r: usize) -> usize {
        let c = self.quotient(p, r);
        c.ambient() - c.dim()
    }

    pub fn dim_c(&self, p: usize, q: usize, r: usize) -> usize {
        self.fiber_dim(p, r) * Subsets::new(self.w_dim(), q).len()
    }

    pub fn zero_cochain(&self, p: usize, q: usize, r: usize) -> Cochain<S> {
        let width = self.value_width(p);
        Cochain {
            p,
            q,
            level: r,
            w_dim: self.w_dim(),
            values: vec![zeros(width); Subsets::new(self.w_dim(), q).len()],
        }
    }

    /// Builds a cochain from one value per increasing tuple; values are
    /// reduced to canonical coset representatives.
    pub fn cochain(&self, p: usize, q: usize, r: usize, values: Vec<Vec<S>>) -> Result<Cochain<S>> {
        let count = Subsets::new(self.w_dim(), q).len();
        if values.len() != count {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {count} index tuples",
                values.len()
            )));
        }
        let c = self.quotient(p, r);
        let mut reduced = Vec::with_capacity(count);
        for v in values {
            reduced.push(c.reduce(&v)?);
        }
        Ok(Cochain {
            p,
            q,
            level: r,
            w_dim: self.w_dim(),
            values: reduced,
        })
    }

    /// Flat quotient coordinates: tuple-major, then the free positions of
    /// the annihilator.
    pub fn coords(&self, x: &Cochain<S>) -> Vec<S> {
        let free = self.quotient(x.p, x.level).free_positions();
        x.values
            .iter()
            .flat_map(|v| free.iter().map(move |&f| v[f].clone()))
            .collect()
    }

    pub fn from_coords(&self, p: usize, q: usize, r: usize, coords: &[S]) -> Result<Cochain<S>> {
        let free = self.quotient(p, r).free_positions();
        let count = Subsets::new(self.w_dim(), q).len();
        if coords.len() != free.len() * count {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for C^({p},{q}) of dimension {}",
                coords.len(),
                free.len() * count
            )));
        }
        let width = self.value_width(p);
        let values = (0..count)
            .map(|t| {
                let mut v = zeros(width);
                for (k, &f) in free.iter().enumerate() {
                    v[f] = coords[t * free.len() + k].clone();
                }
                v
            })
            .collect();
        Ok(Cochain {
            p,
            q,
            level: r,
            w_dim: self.w_dim(),
            values,
        })
    }

    fn check_cochain(&self, x: &Cochain<S>) -> Result<()> {
        if x.w_dim != self.w_dim() || x.values.len() != Subsets::new(self.w_dim(), x.q).len() {
            return Err(Error::DimensionMismatch("cochain does not match W".into()));
        }
        if x.values.iter().any(|v| v.len() != self.value_width(x.p)) {
            return Err(Error::DimensionMismatch(format!(
                "cochain values do not match the degree {} component",
                x.p as i32 - 1
            )));
        }
        Ok(())
    }

    /// The operator evaluated directly from its defining formula.
    pub fn spencer_d(&self, x: &Cochain<S>) -> Result<Cochain<S>> {
        self.check_cochain(x)?;
        let (p, q, r) = (x.p, x.q, x.level);
        if p == 0 {
            return Ok(self.zero_cochain(0, q + 1, r));
        }
        let d = p as i32 - 1;
        let out_subsets = Subsets::new(self.w_dim(), q + 1);
        let target = self.quotient(p - 1, r);
        let mut values = Vec::with_capacity(out_subsets.len());
        for tuple in out_subsets.iter() {
            let mut acc = zeros::<S>(self.value_width(p - 1));
            if d <= self.top() {
                for (t, &k) in tuple.iter().enumerate() {
                    let rest: Vec<usize> = tuple.iter().copied().filter(|&j| j != k).collect();
                    let val = x.eval(&rest);
                    if is_zero_vec(&val) {
                        continue;
                    }
                    let br = self.ad[d as usize][k].mul_vec(&val)?;
                    // 1-based position t + 1 gives sign (-1)^(t+1).
                    let sign = if t % 2 == 0 { S::one().negated() } else { S::one() };
                    axpy(&mut acc, &sign, &br);
                }
            }
            values.push(target.reduce(&acc)?);
        }
        Ok(Cochain {
            p: p - 1,
            q: q + 1,
            level: r,
            w_dim: self.w_dim(),
            values,
        })
    }

    /// Matrix of the operator `C_r^{p,q} -> C_r^{p-1,q+1}` in quotient
    /// coordinates. Requires `p >= 1`.
    pub fn d_matrix(&self, p: usize, q: usize, r: usize) -> Arc<Matrix<S>> {
        assert!(p >= 1, "the operator on p = 0 has no target");
        let key = (p, q, r);
        if let Some(m) = self.d_cache.lock().expect("cache lock").get(&key) {
            return m.clone();
        }
        let m = Arc::new(self.build_d_matrix(p, q, r));
        self.d_cache.lock().expect("cache lock").insert(key, m.clone());
        m
    }

    fn build_d_matrix(&self, p: usize, q: usize, r: usize) -> Matrix<S> {
        let n = self.w_dim();
        let src_sets = Subsets::new(n, q);
        let dst_sets = Subsets::new(n, q + 1);
        let src_free = self.quotient(p, r).free_positions();
        let target = self.quotient(p - 1, r);
        let dst_free = target.free_positions();
        let (fs, fd) = (src_free.len(), dst_free.len());
        let mut m = Matrix::zeros(dst_sets.len() * fd, src_sets.len() * fs);
        if fs == 0 || fd == 0 {
            return m;
        }
        let d = p as i32 - 1;
        // images[k][f]: quotient coordinates of [e_f, w_k].
        let images: Vec<Vec<Vec<S>>> = (0..n)
            .map(|k| {
                let a = &self.ad[d as usize][k];
                src_free
                    .iter()
                    .map(|&f| {
                        let col = a.column(f);
                        let red = target.reduce(&col).expect("width");
                        dst_free.iter().map(|&g| red[g].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        for (si, set) in src_sets.iter().enumerate() {
            for k in (0..n).filter(|k| !set.contains(k)) {
                let mut joined = set.to_vec();
                joined.push(k);
                joined.sort_unstable();
                let t = joined.iter().position(|&j| j == k).expect("inserted");
                let di = dst_sets.position(&joined).expect("subset");
                let neg = t % 2 == 0;
                for (a, img) in images[k].iter().enumerate() {
                    for (b, v) in img.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let val = if neg { v.negated() } else { v.clone() };
                        m[(di * fd + b, si * fs + a)] = val;
                    }
                }
            }
        }
        m
    }

    fn factorization(&self, p: usize, q: usize, r: usize) -> Arc<Factorization<S>> {
        let key = (p, q, r);
        if let Some(f) = self.f_cache.lock().expect("cache lock").get(&key) {
            return f.clone();
        }
        let f = Arc::new(Factorization::new((*self.d_matrix(p, q, r)).clone()));
        self.f_cache.lock().expect("cache lock").insert(key, f.clone());
        f
    }

    fn rank_out(&self, p: usize, q: usize, r: usize) -> usize {
        if p == 0 || self.dim_c(p, q, r) == 0 {
            0
        } else {
            self.d_matrix(p, q, r).rank()
        }
    }

    fn rank_in(&self, p: usize, q: usize, r: usize) -> usize {
        if q == 0 || self.dim_c(p + 1, q - 1, r) == 0 {
            0
        } else {
            self.d_matrix(p + 1, q - 1, r).rank()
        }
    }

    /// `dim Z`, `dim B`, `dim H` of `C_r^{p,q}`.
    pub fn cohomology_dims(&self, p: usize, q: usize, r: usize) -> CohomologyReport<S> {
        let dim_c = self.dim_c(p, q, r);
        let dim_z = dim_c - self.rank_out(p, q, r);
        let dim_b = self.rank_in(p, q, r);
        CohomologyReport {
            p,
            q,
            r,
            dim_c,
            dim_z,
            dim_b,
            dim_h: dim_z - dim_b,
            z_basis: None,
            b_basis: None,
        }
    }

    /// Like [`Self::cohomology_dims`] with bases of `Z` and `B` attached.
    pub fn cohomology(&self, p: usize, q: usize, r: usize) -> CohomologyReport<S> {
        let mut rep = self.cohomology_dims(p, q, r);
        rep.z_basis = Some(self.cocycles(p, q, r));
        rep.b_basis = Some(self.coboundaries(p, q, r));
        rep
    }

    pub fn cocycles(&self, p: usize, q: usize, r: usize) -> Subspace<S> {
        let n = self.dim_c(p, q, r);
        if p == 0 || n == 0 {
            return Subspace::full(n);
        }
        self.d_matrix(p, q, r).kernel()
    }

    pub fn coboundaries(&self, p: usize, q: usize, r: usize) -> Subspace<S> {
        let n = self.dim_c(p, q, r);
        if q == 0 || self.dim_c(p + 1, q - 1, r) == 0 {
            return Subspace::zero(n);
        }
        self.d_matrix(p + 1, q - 1, r).image()
    }

    fn require_cocycle(&self, z: &Cochain<S>) -> Result<()> {
        let dz = self.spencer_d(z)?;
        if dz.is_zero() {
            return Ok(());
        }
        let sets = Subsets::new(self.w_dim(), dz.q);
        let bad: Vec<String> = dz
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !is_zero_vec(v))
            .map(|(i, _)| format!("{:?}", sets.get(i).iter().map(|j| j + 1).collect::<Vec<_>>()))
            .collect();
        Err(Error::Precondition(format!(
            "cochain is not a cocycle; its differential is nonzero on {}",
            bad.join(", ")
        )))
    }

    /// Some `y` with `dy = z`, or `None` if the class of `z` is nonzero.
    ///
    /// The particular solution sets every free variable to zero.
    pub fn is_coboundary(&self, z: &Cochain<S>) -> Result<Option<Cochain<S>>> {
        self.check_cochain(z)?;
        if z.q == 0 {
            return Err(Error::InvalidInput("no coboundaries in q = 0".into()));
        }
        self.require_cocycle(z)?;
        let (p, q, r) = (z.p + 1, z.q - 1, z.level);
        if self.dim_c(p, q, r) == 0 {
            return Ok(z.is_zero().then(|| self.zero_cochain(p, q, r)));
        }
        let f = self.factorization(p, q, r);
        match f.solve(&self.coords(z))? {
            None => Ok(None),
            Some(y) => Ok(Some(self.from_coords(p, q, r, &y)?)),
        }
    }

    /// Projection of a cocycle onto the greedy complement of `B` in `Z`,
    /// along `B`. Zero exactly when `z` is a coboundary.
    pub fn class_representative(&self, z: &Cochain<S>) -> Result<Cochain<S>> {
        self.check_cochain(z)?;
        self.require_cocycle(z)?;
        let (p, q, r) = (z.p, z.q, z.level);
        let zs = self.cocycles(p, q, r);
        let bs = self.coboundaries(p, q, r);
        let comp = bs.complement_in(&zs)?;
        let mut cols: Vec<Vec<S>> = bs.basis().to_vec();
        cols.extend(comp.basis().iter().cloned());
        let m = Matrix::from_columns(&cols, self.dim_c(p, q, r))?;
        let coeffs = Factorization::new(m)
            .solve(&self.coords(z))?
            .ok_or_else(|| Error::Invariant("cocycle outside B + complement".into()))?;
        let rep = comp.combine(&coeffs[bs.dim()..]);
        self.from_coords(p, q, r, &rep)
    }

    /// Reduces a level-0 cochain to level `r`.
    pub fn project_to_level(&self, x: &Cochain<S>, r: usize) -> Result<Cochain<S>> {
        self.check_cochain(x)?;
        self.cochain(x.p, x.q, r, x.values.clone())
    }

    /// The `W` basis vector `w_k` in degree `-1` coordinates.
    pub fn w_vector(&self, k: usize) -> &[S] {
        &self.w.basis()[k]
    }

    /// Infinitesimal action of `X` in `g#` on a level-0 cochain:
    /// `(X.x)(w_1..w_q) = [X, x(w_1..w_q)] - sum_i x(.., [X, w_i], ..)`.
    ///
    /// `x_elem` is a full algebra element of degree 0.
    pub fn g_sharp_act(&self, x_elem: &[S], x: &Cochain<S>) -> Result<Cochain<S>> {
        self.check_cochain(x)?;
        if x.level != 0 {
            return Err(Error::InvalidInput("g# acts on level 0 cochains only".into()));
        }
        let alg = &self.algebra;
        if x_elem.len() != alg.dim() {
            return Err(Error::DimensionMismatch("element length".into()));
        }
        if !is_zero_vec(&alg.project_degree(x_elem, -1)?)
            || (0..alg.dim()).any(|i| alg.degree_of(i) > 0 && !x_elem[i].is_zero())
        {
            return Err(Error::InvalidInput("element must lie in degree 0".into()));
        }
        let gsharp = alg.g_sharp_subalgebra(&self.w)?;
        if !gsharp.contains(&alg.restrict(0, x_elem))? {
            return Err(Error::InvalidInput("element does not preserve W".into()));
        }
        let n = self.w_dim();
        // [X, w_k] expanded in the W basis.
        let mut act_w: Vec<Vec<S>> = Vec::with_capacity(n);
        for k in 0..n {
            let wk = alg.embed(-1, self.w_vector(k));
            let img = alg.restrict(-1, &alg.bracket(x_elem, &wk)?);
            act_w.push(self.w.coordinates(&img)?.expect("g# preserves W"));
        }
        let d = x.p as i32 - 1;
        let sets = Subsets::new(n, x.q);
        let mut values = Vec::with_capacity(sets.len());
        for set in sets.iter() {
            let val = x.eval(set);
            let mut acc = if d <= self.top() && !is_zero_vec(&val) {
                let full = alg.embed(d, &val);
                alg.restrict(d, &alg.bracket(x_elem, &full)?)
            } else {
                zeros(val.len())
            };
            for (i, &wi) in set.iter().enumerate() {
                for (k, c) in act_w[wi].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut idx = set.to_vec();
                    idx[i] = k;
                    let v = x.eval(&idx);
                    for (a, b) in acc.iter_mut().zip(&v) {
                        add_product(a, &c.negated(), b);
                    }
                }
            }
            values.push(acc);
        }
        self.cochain(x.p, x.q, 0, values)
    }
}
