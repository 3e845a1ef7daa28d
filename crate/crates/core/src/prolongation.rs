//! Maximal transitive prolongation of a linear Lie algebra `h^0 < gl(V)`.
//!
//! The `p`-th prolongation is realized inside `V (x) S^{p+1} V*`, i.e. as
//! vector-valued homogeneous polynomials of degree `p + 1` (see [`crate::poly`]).
//! Under this identification `[X, v] = D_v X`, and the bracket of two
//! nonnegative-degree elements is `DX.Y - DY.X`, which restricts to the
//! matrix commutator on `h^0` and to evaluation `[A, v] = Av`.
//!
//! The recursion `h^{p+1} = {P : D_i P in h^p for all i}` is the symmetric
//! part of `(h^p (x) V*)` cut out directly in polynomial coordinates.

use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, GradingKind, Terms};
use crate::linalg::{Factorization, Matrix, Subspace};
use crate::poly::PolySpace;
use crate::scalar::{is_zero_vec, zeros, Scalar};

/// A linear Lie algebra spanned by `dim V x dim V` matrices.
#[derive(Clone)]
pub struct LinearLieAlgebra<S> {
    v_dim: usize,
    names: Vec<String>,
    generators: Vec<Matrix<S>>,
}

impl<S: Scalar> LinearLieAlgebra<S> {
    /// Validates shapes and linear independence. Closure under the
    /// commutator is reported separately by [`Self::closure_report`].
    pub fn new(v_dim: usize, names: Vec<String>, generators: Vec<Matrix<S>>) -> Result<Self> {
        if v_dim == 0 {
            return Err(Error::InvalidInput("V must be nonzero".into()));
        }
        if names.len() != generators.len() {
            return Err(Error::InvalidInput(format!(
                "{} names for {} generators",
                names.len(),
                generators.len()
            )));
        }
        for (n, g) in names.iter().zip(&generators) {
            if g.rows() != v_dim || g.cols() != v_dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {n} is {}x{}, expected {v_dim}x{v_dim}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let flat: Vec<Vec<S>> = generators.iter().map(|g| g.entries().to_vec()).collect();
        if Subspace::span(v_dim * v_dim, flat)?.dim() != generators.len() {
            return Err(Error::InvalidInput("generators are linearly dependent".into()));
        }
        Ok(LinearLieAlgebra {
            v_dim,
            names,
            generators,
        })
    }

    /// `so(n)`: `E_ij - E_ji` for `i < j` in lexicographic order.
    pub fn so(n: usize) -> Self {
        let mut names = Vec::new();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                names.push(format!("b{}{}", i + 1, j + 1));
                gens.push(elementary_antisymmetric(n, i, j));
            }
        }
        Self::new(n, names, gens).expect("so(n) basis is independent")
    }

    /// `co(n) = so(n) + R.I`, scaling element last.
    pub fn co(n: usize) -> Self {
        let mut a = Self::so(n);
        a.names.push("I".into());
        a.generators.push(Matrix::identity(n));
        a
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Matrix<S>] {
        &self.generators
    }

    /// `h^0` as a subspace of `V (x) V*` in polynomial coordinates, which for
    /// linear polynomials are the row-major matrix entries.
    pub fn as_subspace(&self) -> Subspace<S> {
        let flat = self.generators.iter().map(|g| g.entries().to_vec()).collect();
        Subspace::span(self.v_dim * self.v_dim, flat).expect("generator shapes checked")
    }

    /// Generator pairs whose commutator leaves the span.
    pub fn closure_report(&self) -> Vec<(usize, usize)> {
        let span = self.as_subspace();
        let mut bad = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let c = self.generators[i]
                    .commutator(&self.generators[j])
                    .expect("square generators");
                if !span.contains(c.entries()).expect("shape") {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

impl<S: Scalar> std::fmt::Debug for LinearLieAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearLieAlgebra")
            .field("v_dim", &self.v_dim)
            .field("names", &self.names)
            .finish()
    }
}

/// `E_ij - E_ji` in `gl(n)`.
pub fn elementary_antisymmetric<S: Scalar>(n: usize, i: usize, j: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = S::one();
    m[(j, i)] = S::one().negated();
    m
}

/// One prolongation step: `h^{p+1}` from `h^p` (given in degree `p + 1`
/// polynomial coordinates).
pub fn prolong_step<S: Scalar>(ps: &PolySpace, h_p: &Subspace<S>, p: usize) -> Subspace<S> {
    let n = ps.vars();
    let src = ps.monomials(p + 2);
    let dst = ps.monomials(p + 1);
    let (ms, md) = (src.len(), dst.len());
    let unknowns = n * ms;
    if h_p.is_zero() {
        return Subspace::zero(unknowns);
    }
    let eq = h_p.equations();
    let mut rows = Vec::with_capacity(eq.rows() * n);
    let mut e = vec![0u32; n];
    // Constraint for variable i and equation row r:
    // sum_{c,m'} r[c, idx(m' - e_i)] * a_i(m') * P[c, m'] = 0.
    for i in 0..n {
        let mut lower = vec![None; ms];
        for (m, slot) in lower.iter_mut().enumerate() {
            let a = src.exponent(m)[i];
            if a > 0 {
                e.copy_from_slice(src.exponent(m));
                e[i] -= 1;
                *slot = Some((dst.index_of(&e), S::from_int(a as i64)));
            }
        }
        for r in 0..eq.rows() {
            let er = eq.row(r);
            let mut row = zeros::<S>(unknowns);
            let mut any = false;
            for c in 0..n {
                for (m, slot) in lower.iter().enumerate() {
                    if let Some((t, a)) = slot {
                        let v = &er[c * md + t];
                        if !v.is_zero() {
                            row[c * ms + m] = v.times(a);
                            any = true;
                        }
                    }
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows, unknowns)
        .expect("constraint rows have the unknown count")
        .kernel()
}

/// Outcome of iterated prolongation.
#[derive(Clone)]
pub struct ProlongationResult<S> {
    pub v_dim: usize,
    /// `orders[p]` is `h^p` inside `V (x) S^{p+1} V*`; `orders[0]` is the
    /// input algebra.
    pub orders: Vec<Subspace<S>>,
    pub max_order: usize,
    /// First order at which the prolongation vanished, if within range.
    pub stabilization_order: Option<usize>,
    pub assembled: Option<GradedLieAlgebra<S>>,
}

impl<S: Scalar> ProlongationResult<S> {
    pub fn dims(&self) -> Vec<usize> {
        self.orders.iter().map(Subspace::dim).collect()
    }

    /// True iff some computed order vanished.
    pub fn is_finite_type(&self) -> bool {
        self.stabilization_order.is_some()
    }
}

impl<S: Scalar> std::fmt::Debug for ProlongationResult<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProlongationResult")
            .field("dims", &self.dims())
            .field("max_order", &self.max_order)
            .field("stabilization_order", &self.stabilization_order)
            .field("assembled", &self.assembled)
            .finish()
    }
}

/// Iterates [`prolong_step`] up to `max_order` (or until an order vanishes)
/// without assembling brackets.
pub fn prolong_dims<S: Scalar>(h0: &LinearLieAlgebra<S>, max_order: usize) -> ProlongationResult<S> {
    let ps = PolySpace::new(h0.v_dim(), max_order + 1);
    let mut orders = vec![h0.as_subspace()];
    let mut stabilization = None;
    for p in 0..max_order {
        let next = prolong_step(&ps, &orders[p], p);
        let zero = next.is_zero();
        orders.push(next);
        if zero {
            stabilization = Some(p + 1);
            break;
        }
    }
    ProlongationResult {
        v_dim: h0.v_dim(),
        orders,
        max_order,
        stabilization_order: stabilization,
        assembled: None,
    }
}

/// Prolongs `h0` up to `max_order` and assembles the graded Lie algebra
/// `V + h^0 + h^1 + ...`.
///
/// Basis order: `e1..en` in degree `-1`, the generators of `h0` in degree 0,
/// then the echelon basis of each `h^p` (named `h<p>_<i>`). If no order
/// vanished, the algebra is truncated at degree `max_order` and brackets
/// landing above it are left zero.
pub fn build_graded_algebra<S: Scalar>(h0: &LinearLieAlgebra<S>, max_order: usize) -> Result<ProlongationResult<S>> {
    let bad = h0.closure_report();
    if let Some(&(i, j)) = bad.first() {
        return Err(Error::Invariant(format!(
            "h0 is not closed: [{}, {}] leaves the span",
            h0.names[i], h0.names[j]
        )));
    }
    let mut res = prolong_dims(h0, max_order);
    let alg = assemble(h0, &res)?;
    res.assembled = Some(alg);
    Ok(res)
}

fn assemble<S: Scalar>(h0: &LinearLieAlgebra<S>, res: &ProlongationResult<S>) -> Result<GradedLieAlgebra<S>> {
    let n = h0.v_dim();
    // Last nonzero order.
    let top = res.orders.iter().rposition(|s| !s.is_zero()).unwrap_or(0);
    let truncated = res.stabilization_order.is_none();
    let ps = PolySpace::new(n, top + 2);

    // Basis vectors in polynomial form, grouped by degree.
    let mut basis: Vec<(String, i32)> = (0..n).map(|i| (format!("e{}", i + 1), -1)).collect();
    let mut polys: Vec<Vec<Vec<S>>> = Vec::new();
    polys.push(h0.generators.iter().map(|g| g.entries().to_vec()).collect());
    for name in &h0.names {
        basis.push((name.clone(), 0));
    }
    for p in 1..=top {
        let b = res.orders[p].basis().to_vec();
        for i in 0..b.len() {
            basis.push((format!("h{p}_{}", i + 1), p as i32));
        }
        polys.push(b);
    }
    let mut offsets = vec![n];
    for p in 0..top {
        offsets.push(offsets[p] + polys[p].len());
    }

    let h0_coords = Factorization::new(Matrix::from_columns(&polys[0], n * n).expect("generator lengths"));
    let coords_in = |p: usize, v: &[S]| -> Result<Vec<S>> {
        if p == 0 {
            h0_coords
                .solve(v)?
                .ok_or_else(|| Error::Invariant("bracket left h^0".into()))
        } else {
            res.orders[p]
                .coordinates(v)?
                .ok_or_else(|| Error::Invariant(format!("bracket left h^{p}")))
        }
    };
    let to_terms = |offset: usize, c: Vec<S>| -> Terms<S> {
        c.into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (offset + k, x))
            .collect()
    };

    let mut brackets = Vec::new();
    // [X, e_i] = d_i X.
    for p in 0..=top {
        for (a, x) in polys[p].iter().enumerate() {
            for i in 0..n {
                let d = ps.derivative(x, p + 1, i);
                if is_zero_vec(&d) {
                    continue;
                }
                let terms = if p == 0 {
                    to_terms(0, d)
                } else {
                    to_terms(offsets[p - 1], coords_in(p - 1, &d)?)
                };
                brackets.push(((offsets[p] + a, i), terms));
            }
        }
    }
    // Nonnegative degrees.
    for p in 0..=top {
        for q in p..=top {
            let s = p + q;
            // Above the top degree of a finite-type algebra the bracket must
            // vanish; checked below when the polynomial degree is available.
            if s > top && truncated {
                continue;
            }
            for (a, x) in polys[p].iter().enumerate() {
                let start = if p == q { a + 1 } else { 0 };
                for (b, y) in polys[q].iter().enumerate().skip(start) {
                    if s > top {
                        if s < ps.max_degree() {
                            let z = ps.field_bracket(x, p + 1, y, q + 1);
                            if !is_zero_vec(&z) {
                                return Err(Error::Invariant(format!(
                                    "bracket of degrees {p} and {q} nonzero above the top degree"
                                )));
                            }
                        }
                        continue;
                    }
                    let z = ps.field_bracket(x, p + 1, y, q + 1);
                    if is_zero_vec(&z) {
                        continue;
                    }
                    let t = to_terms(offsets[s], coords_in(s, &z)?);
                    brackets.push(((offsets[p] + a, offsets[q] + b), t));
                }
            }
        }
    }
    let name = format!("prolongation of {}-dim h0 on R^{n}", h0.dim());
    let alg = GradedLieAlgebra::new(name, basis, GradingKind::Graded, top + 1, brackets)?;
    Ok(if truncated {
        alg.with_truncation(top as i32)
    } else {
        alg
    })
}

/// Certifies the defining property of assembled brackets: for basis elements
/// `X, Y` of nonnegative degree and every `e_i`,
/// `[[X,Y],e_i] = [[X,e_i],Y] + [X,[Y,e_i]]`. Returns the failing triples.
pub fn bracket_certificate<S: Scalar>(alg: &GradedLieAlgebra<S>) -> Vec<(usize, usize, usize)> {
    let neg = alg.component(-1);
    let nonneg: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree_of(i) >= 0).collect();
    let trunc = alg.truncation();
    let mut bad = Vec::new();
    for (ai, &x) in nonneg.iter().enumerate() {
        for &y in &nonneg[ai + 1..] {
            if let Some(t) = trunc {
                if alg.degree_of(x) + alg.degree_of(y) > t {
                    continue;
                }
            }
            let xv = alg.basis_vector(x);
            let yv = alg.basis_vector(y);
            let xy = alg.bracket(&xv, &yv).expect("sizes");
            for &e in &neg {
                let ev = alg.basis_vector(e);
                let lhs = alg.bracket(&xy, &ev).expect("sizes");
                let a = alg.bracket(&alg.bracket(&xv, &ev).expect("sizes"), &yv).expect("sizes");
                let b = alg.bracket(&xv, &alg.bracket(&yv, &ev).expect("sizes")).expect("sizes");
                let rhs: Vec<S> = a.iter().zip(&b).map(|(u, v)| u.plus(v)).collect();
                if lhs != rhs {
                    bad.push((x, y, e));
                }
            }
        }
    }
    bad
}
