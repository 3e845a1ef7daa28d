//! Graded and quasi-graded Lie algebras of depth one given by structure
//! constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{add_product, is_zero_vec, zeros, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingKind {
    Graded,
    /// The grading rule may fail for brackets of two degree `-1` elements.
    QuasiGraded,
}

impl fmt::Display for GradingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradingKind::Graded => "graded",
            GradingKind::QuasiGraded => "quasi_graded",
        })
    }
}

/// Sparse linear combination of basis elements.
pub type Terms<S> = Vec<(usize, S)>;

/// A Lie algebra `h = h^{-1} + h^0 + ... + h^{k-1}` with a fixed basis.
///
/// Only brackets `[e_i, e_j]` with `i < j` are supplied; the opposite
/// orientation and the diagonal are synthesized. Algebras built from a finite
/// prolongation of an infinite-type algebra carry a `truncation` degree:
/// brackets that would land above it were not computed and read as zero.
#[derive(Clone, PartialEq)]
pub struct GradedLieAlgebra<S> {
    name: String,
    names: Vec<String>,
    degrees: Vec<i32>,
    height: usize,
    kind: GradingKind,
    truncation: Option<i32>,
    /// Dense `dim x dim` table of sparse brackets, both orientations.
    table: Vec<Terms<S>>,
}

/// A basis triple on which the Jacobi identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation<S> {
    pub triple: (usize, usize, usize),
    pub residual: Vec<S>,
}

/// A basis pair whose bracket has components outside the allowed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradingViolation {
    pub pair: (usize, usize),
    pub expected_degree: Option<i32>,
    pub offending: Vec<usize>,
}

impl<S: Scalar> GradedLieAlgebra<S> {
    /// Builds an algebra from basis `(name, degree)` pairs and brackets.
    ///
    /// Brackets may be listed in either orientation but each unordered pair at
    /// most once. Jacobi and the grading rule are not checked here; see
    /// [`Self::jacobi_report`] and [`Self::grading_report`].
    pub fn new(
        name: impl Into<String>,
        basis: Vec<(String, i32)>,
        kind: GradingKind,
        height: usize,
        brackets: Vec<((usize, usize), Terms<S>)>,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut seen = BTreeMap::new();
        for (i, (n, d)) in basis.iter().enumerate() {
            if *d < -1 || *d > height as i32 - 1 {
                return Err(Error::InvalidInput(format!(
                    "basis element {n} has degree {d}, outside -1..={}",
                    height as i32 - 1
                )));
            }
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate basis name {n}")));
            }
        }
        if !basis.iter().any(|(_, d)| *d == -1) {
            return Err(Error::InvalidInput("degree -1 component must be nonempty".into()));
        }
        let mut table: Vec<Terms<S>> = vec![Vec::new(); dim * dim];
        let mut given = vec![false; dim * dim];
        for ((i, j), terms) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidInput(format!("bracket index ({i},{j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidInput(format!(
                    "bracket of {} with itself must not be listed",
                    basis[i].0
                )));
            }
            let (a, b) = (i.min(j), i.max(j));
            if given[a * dim + b] {
                return Err(Error::InvalidInput(format!(
                    "bracket [{},{}] listed more than once",
                    basis[a].0, basis[b].0
                )));
            }
            given[a * dim + b] = true;
            let mut dense = zeros::<S>(dim);
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::InvalidInput(format!("term index {k} out of range")));
                }
                dense[k] = dense[k].plus(&c);
            }
            let sign_for_ab = i < j;
            let forward = sparse(&dense);
            let backward: Terms<S> = forward.iter().map(|(k, c)| (*k, c.negated())).collect();
            if sign_for_ab {
                table[a * dim + b] = forward;
                table[b * dim + a] = backward;
            } else {
                table[a * dim + b] = backward;
                table[b * dim + a] = forward;
            }
        }
        Ok(GradedLieAlgebra {
            name: name.into(),
            names: basis.iter().map(|(n, _)| n.clone()).collect(),
            degrees: basis.iter().map(|(_, d)| *d).collect(),
            height,
            kind,
            truncation: None,
            table,
        })
    }

    pub(crate) fn with_truncation(mut self, degree: i32) -> Self {
        self.truncation = Some(degree);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree_of(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    /// Degree above which brackets were not computed, if any.
    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Basis indices of the degree `p` component, in basis order.
    pub fn component(&self, p: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == p).collect()
    }

    pub fn component_dim(&self, p: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == p).count()
    }

    /// `[e_i, e_j]` as sparse terms.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim() + j]
    }

    /// Pairs `i < j` with nonzero bracket, in lexicographic order.
    pub fn structure(&self) -> impl Iterator<Item = ((usize, usize), &[(usize, S)])> + '_ {
        let n = self.dim();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(move |(i, j)| {
                let t = self.bracket_basis(i, j);
                (!t.is_empty()).then_some(((i, j), t))
            })
    }

    fn check_element(&self, x: &[S]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in algebra of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = zeros(self.dim());
        let ys: Vec<usize> = (0..y.len()).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ys {
                let terms = self.bracket_basis(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = xi.times(&y[j]);
                for (k, v) in terms {
                    add_product(&mut out[*k], &c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x = [x, .]` on the whole algebra.
    pub fn ad_matrix(&self, x: &[S]) -> Result<Matrix<S>> {
        self.check_element(x)?;
        let n = self.dim();
        let mut m = Matrix::<S>::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, v) in self.bracket_basis(i, j) {
                    let cur = m[(*k, j)].plus(&xi.times(v));
                    m[(*k, j)] = cur;
                }
            }
        }
        Ok(m)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = zeros(self.dim());
        v[i] = S::one();
        v
    }

    /// Zeroes every coefficient whose basis element is not of degree `p`.
    pub fn project_degree(&self, x: &[S], p: i32) -> Result<Vec<S>> {
        self.check_element(x)?;
        if p < -1 || p > self.height as i32 - 1 {
            return Err(Error::InvalidInput(format!(
                "degree {p} outside -1..={}",
                self.height as i32 - 1
            )));
        }
        Ok(x.iter()
            .zip(&self.degrees)
            .map(|(c, &d)| if d == p { c.clone() } else { S::zero() })
            .collect())
    }

    /// Embeds component coordinates of degree `p` into the full algebra.
    pub fn embed(&self, p: i32, coords: &[S]) -> Vec<S> {
        let idx = self.component(p);
        assert_eq!(idx.len(), coords.len(), "component coordinate count");
        let mut out = zeros(self.dim());
        for (k, &i) in idx.iter().enumerate() {
            out[i] = coords[k].clone();
        }
        out
    }

    /// Coordinates of `x` on the degree `p` component (other degrees dropped).
    pub fn restrict(&self, p: i32, x: &[S]) -> Vec<S> {
        self.component(p).into_iter().map(|i| x[i].clone()).collect()
    }

    /// Whether a triple lies inside the range where brackets are known.
    fn triple_in_range(&self, i: usize, j: usize, k: usize) -> bool {
        match self.truncation {
            None => true,
            Some(t) => {
                let (a, b, c) = (self.degrees[i], self.degrees[j], self.degrees[k]);
                a + b <= t && a + c <= t && b + c <= t && a + b + c <= t
            }
        }
    }

    /// Every basis triple `i < j < k` with nonzero Jacobi residual
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    ///
    /// For truncated algebras only triples whose brackets stay inside the
    /// computed degrees are checked.
    pub fn jacobi_report(&self) -> Vec<JacobiViolation<S>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut residual = zeros::<S>(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.triple_in_range(i, j, k) {
                        continue;
                    }
                    residual.iter_mut().for_each(|x| *x = S::zero());
                    for &(a, b, c) in &[(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, s) in self.bracket_basis(a, b) {
                            for (l, t) in self.bracket_basis(*m, c) {
                                add_product(&mut residual[*l], s, t);
                            }
                        }
                    }
                    if !is_zero_vec(&residual) {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual: residual.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Basis pairs violating the grading rule for this algebra's kind.
    pub fn grading_report(&self) -> Vec<GradingViolation> {
        self.grading_report_as(self.kind)
    }

    /// Grading check against an explicitly chosen kind.
    pub fn grading_report_as(&self, kind: GradingKind) -> Vec<GradingViolation> {
        let n = self.dim();
        let top = self.height as i32 - 1;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.degrees[i], self.degrees[j]);
                if kind == GradingKind::QuasiGraded && a == -1 && b == -1 {
                    continue;
                }
                let target = a + b;
                let expected = (-1..=top).contains(&target).then_some(target);
                let offending: Vec<usize> = self
                    .bracket_basis(i, j)
                    .iter()
                    .map(|(k, _)| *k)
                    .filter(|&k| Some(self.degrees[k]) != expected)
                    .collect();
                if !offending.is_empty() {
                    out.push(GradingViolation {
                        pair: (i, j),
                        expected_degree: expected,
                        offending,
                    });
                }
            }
        }
        out
    }

    /// Elements of nonnegative degree acting trivially on `h^{-1}`.
    ///
    /// Effective (transitive) algebras return the zero subspace. The result
    /// lives in full algebra coordinates.
    pub fn ineffective_kernel(&self) -> Subspace<S> {
        let n = self.dim();
        let neg = self.component(-1);
        let mut rows = Vec::new();
        for &v in &neg {
            // Row block: coefficient of e_k in [X, e_v] as a function of X.
            let mut block = vec![zeros::<S>(n); n];
            for x in 0..n {
                for (k, c) in self.bracket_basis(x, v) {
                    block[*k][x] = c.clone();
                }
            }
            rows.extend(block);
        }
        for (x, &d) in self.degrees.iter().enumerate() {
            if d == -1 {
                let mut r = zeros::<S>(n);
                r[x] = S::one();
                rows.push(r);
            }
        }
        Matrix::from_rows(rows, n)
            .expect("rows have the algebra dimension")
            .kernel()
    }

    /// Basis pairs `(i, j)`, `i < j`, with `phi[e_i, e_j] != [phi e_i, phi e_j]`.
    ///
    /// `phi` maps this algebra into `target`: column `i` is the image of
    /// basis element `i`.
    pub fn homomorphism_defects(&self, target: &GradedLieAlgebra<S>, phi: &Matrix<S>) -> Result<Vec<(usize, usize)>> {
        if phi.rows() != target.dim() || phi.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map must be {}x{}, got {}x{}",
                target.dim(),
                self.dim(),
                phi.rows(),
                phi.cols()
            )));
        }
        let images: Vec<Vec<S>> = (0..self.dim()).map(|i| phi.column(i)).collect();
        let mut bad = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let lhs = phi.mul_vec(&self.bracket(&self.basis_vector(i), &self.basis_vector(j))?)?;
                let rhs = target.bracket(&images[i], &images[j])?;
                if lhs != rhs {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }

    /// `{X in h^0 : [X, W] in W}` in degree-0 component coordinates.
    ///
    /// `w` is a subspace of the degree `-1` component, in its coordinates.
    pub fn g_sharp_subalgebra(&self, w: &Subspace<S>) -> Result<Subspace<S>> {
        let neg = self.component(-1);
        let zero = self.component(0);
        if w.ambient() != neg.len() {
            return Err(Error::InvalidInput(format!(
                "W lives in dimension {}, degree -1 component has dimension {}",
                w.ambient(),
                neg.len()
            )));
        }
        let eq = w.equations();
        let mut rows = Vec::new();
        for wv in w.basis() {
            let wfull = self.embed(-1, wv);
            // Column x: degree -1 part of [e_x, w].
            let cols: Vec<Vec<S>> = zero
                .iter()
                .map(|&x| {
                    let b = self.bracket(&self.basis_vector(x), &wfull).expect("sizes match");
                    self.restrict(-1, &b)
                })
                .collect();
            let m = Matrix::from_columns(&cols, neg.len())?;
            let constraint = eq.mul(&m)?;
            rows.extend(constraint.row_vecs());
        }
        Ok(Matrix::from_rows(rows, zero.len())?.kernel())
    }
}

fn sparse<S: Scalar>(v: &[S]) -> Terms<S> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl<S> fmt::Debug for GradedLieAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedLieAlgebra")
            .field("name", &self.name)
            .field("dim", &self.names.len())
            .field("height", &self.height)
            .field("kind", &self.kind)
            .field("truncation", &self.truncation)
            .finish()
    }
}
