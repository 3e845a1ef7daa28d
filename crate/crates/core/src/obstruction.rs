//! Order-by-order immersibility on constant-coefficient data.
//!
//! A form `w^p` is a linear map `W -> h^p`, stored as a matrix whose columns
//! are the images of the `W` basis. With all exterior derivatives zero the
//! structure equations become, order by order,
//! `[w^-1, w^p] = -Omega^{p-1}` with
//! `Omega^{p-1} = 1/2 sum_{r=0}^{p-1} [w^r, w^{p-1-r}] + 1/2 [w^-1, w^-1]_{p-1}`,
//! and `[w^-1, w^p]` is the Spencer operator applied to `w^p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::GradedLieAlgebra;
use crate::linalg::{Factorization, Matrix, Subspace};
use crate::scalar::{axpy, is_zero_vec, zeros, Scalar};
use crate::spencer::{Cochain, SpencerComplex, Subsets};

/// A constant linear map `W -> h^p`.
#[derive(Clone, PartialEq)]
pub struct ConstantForm<S> {
    degree: i32,
    /// `dim h^p` rows, `dim W` columns.
    matrix: Matrix<S>,
}

impl<S: fmt::Display> fmt::Debug for ConstantForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstantForm")
            .field("degree", &self.degree)
            .field("matrix", &self.matrix)
            .finish()
    }
}

impl<S: Scalar> ConstantForm<S> {
    /// Checks that `matrix` maps `W` into the degree `degree` component.
    pub fn new(c: &SpencerComplex<S>, degree: i32, matrix: Matrix<S>) -> Result<Self> {
        let rows = c.algebra().component_dim(degree);
        if matrix.rows() != rows || matrix.cols() != c.w_dim() {
            return Err(Error::DimensionMismatch(format!(
                "form of degree {degree} needs a {rows}x{} matrix, got {}x{}",
                c.w_dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(ConstantForm { degree, matrix })
    }

    pub fn zero(c: &SpencerComplex<S>, degree: i32) -> Self {
        ConstantForm {
            degree,
            matrix: Matrix::zeros(c.algebra().component_dim(degree), c.w_dim()),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// Image of the `k`-th `W` basis vector, in component coordinates.
    pub fn value(&self, k: usize) -> Vec<S> {
        self.matrix.column(k)
    }

    /// The same map read as a cochain in `C_0^{p+1,1}`.
    pub fn to_cochain(&self, c: &SpencerComplex<S>) -> Result<Cochain<S>> {
        if self.degree < 0 {
            return Err(Error::InvalidInput("degree -1 forms are not cochains".into()));
        }
        let values = (0..self.matrix.cols()).map(|k| self.value(k)).collect();
        c.cochain(self.degree as usize + 1, 1, 0, values)
    }

    pub fn from_cochain(c: &SpencerComplex<S>, x: &Cochain<S>) -> Result<Self> {
        if x.q() != 1 || x.level() != 0 || x.p() == 0 {
            return Err(Error::InvalidInput(
                "a form comes from a level-0 one-cochain with p >= 1".into(),
            ));
        }
        let degree = x.p() as i32 - 1;
        let rows = c.algebra().component_dim(degree);
        let m = Matrix::from_columns(x.values(), rows)?;
        ConstantForm::new(c, degree, m)
    }

    pub fn add(&self, other: &ConstantForm<S>) -> Result<ConstantForm<S>> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch("forms of different degrees".into()));
        }
        Ok(ConstantForm {
            degree: self.degree,
            matrix: self.matrix.add(&other.matrix)?,
        })
    }
}

/// The inclusion `W -> V` in coordinates: column `k` is the `k`-th basis
/// vector of `W`.
pub fn canonical_omega_minus1<S: Scalar>(c: &SpencerComplex<S>) -> ConstantForm<S> {
    let cols: Vec<Vec<S>> = (0..c.w_dim()).map(|k| c.w_vector(k).to_vec()).collect();
    ConstantForm {
        degree: -1,
        matrix: Matrix::from_columns(&cols, c.v_dim()).expect("W basis has V length"),
    }
}

/// Forms `w^0, ..., w^{p-1}`; `w^-1` is the inclusion of `W`.
///
/// Construction does not check admissibility; see [`admissibility_residuals`].
#[derive(Clone, PartialEq)]
pub struct AdmissibleTuple<S> {
    forms: Vec<ConstantForm<S>>,
}

impl<S: fmt::Display> fmt::Debug for AdmissibleTuple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.forms).finish()
    }
}

impl<S: Scalar> AdmissibleTuple<S> {
    pub fn new(forms: Vec<ConstantForm<S>>) -> Result<Self> {
        for (p, f) in forms.iter().enumerate() {
            if f.degree != p as i32 {
                return Err(Error::InvalidInput(format!("form {p} has degree {}", f.degree)));
            }
        }
        Ok(AdmissibleTuple { forms })
    }

    pub fn empty() -> Self {
        AdmissibleTuple { forms: Vec::new() }
    }

    /// Number of forms, i.e. the order `p` up to which the tuple is given.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[ConstantForm<S>] {
        &self.forms
    }

    pub fn form(&self, p: usize) -> &ConstantForm<S> {
        &self.forms[p]
    }

    pub fn push(&mut self, f: ConstantForm<S>) -> Result<()> {
        if f.degree != self.forms.len() as i32 {
            return Err(Error::InvalidInput(format!(
                "expected a form of degree {}, got {}",
                self.forms.len(),
                f.degree
            )));
        }
        self.forms.push(f);
        Ok(())
    }
}

/// Total curvature `Omega^{p-1}` as a cochain in `C_0^{p,2}`, for any
/// algebra (quasi-graded allowed) and `W` in degree `-1` coordinates.
pub fn total_curvature_in<S: Scalar>(
    alg: &GradedLieAlgebra<S>,
    w: &Subspace<S>,
    t: &AdmissibleTuple<S>,
    p: usize,
) -> Result<Cochain<S>> {
    if t.len() < p {
        return Err(Error::InvalidInput(format!(
            "curvature of order {} needs forms up to degree {}, tuple has {}",
            p + 1,
            p as i32 - 1,
            t.len()
        )));
    }
    if w.ambient() != alg.component_dim(-1) {
        return Err(Error::DimensionMismatch("W does not live in degree -1".into()));
    }
    let d = p as i32 - 1;
    if let Some(top) = alg.truncation() {
        if d > top {
            return Err(Error::InvalidInput(format!(
                "degree {d} lies above the truncation {top}"
            )));
        }
    }
    let n = w.dim();
    let width = alg.component_dim(d);
    let half = S::one().over(&S::from_int(2));
    let wv: Vec<Vec<S>> = w.basis().iter().map(|b| alg.embed(-1, b)).collect();
    let val = |r: usize, k: usize| -> Vec<S> {
        let f = &t.forms[r];
        alg.embed(f.degree, &f.value(k))
    };
    let mut values = Vec::new();
    for set in Subsets::new(n, 2).iter() {
        let (a, b) = (set[0], set[1]);
        let mut acc = zeros::<S>(alg.dim());
        for r in 0..p {
            let s = p - 1 - r;
            let ab = alg.bracket(&val(r, a), &val(s, b))?;
            let ba = alg.bracket(&val(r, b), &val(s, a))?;
            axpy(&mut acc, &half, &ab);
            axpy(&mut acc, &half.negated(), &ba);
        }
        acc = alg.restrict(d, &acc);
        let ww = alg.restrict(d, &alg.bracket(&wv[a], &wv[b])?);
        let mut out = zeros::<S>(width);
        for (o, (x, y)) in out.iter_mut().zip(acc.iter().zip(&ww)) {
            *o = x.plus(y);
        }
        values.push(out);
    }
    Ok(Cochain::from_parts(p, 2, 0, n, values))
}

/// Total curvature `Omega^{p-1}` over a graded complex.
pub fn total_curvature<S: Scalar>(c: &SpencerComplex<S>, t: &AdmissibleTuple<S>, p: usize) -> Result<Cochain<S>> {
    total_curvature_in(c.algebra(), c.w(), t, p)
}

/// `[w^-1, w^s] + Omega^{s-1}` for `s = 0..t.len()`; all zero exactly when
/// the tuple is admissible.
pub fn admissibility_residuals<S: Scalar>(c: &SpencerComplex<S>, t: &AdmissibleTuple<S>) -> Result<Vec<Cochain<S>>> {
    let mut out = Vec::with_capacity(t.len());
    for s in 0..t.len() {
        let omega = total_curvature(c, t, s)?;
        let dw = c.spencer_d(&t.forms[s].to_cochain(c)?)?;
        out.push(dw.add(&omega)?);
    }
    Ok(out)
}

fn require_admissible<S: Scalar>(c: &SpencerComplex<S>, t: &AdmissibleTuple<S>) -> Result<()> {
    for (s, res) in admissibility_residuals(c, t)?.iter().enumerate() {
        if !res.is_zero() {
            return Err(Error::Precondition(format!(
                "tuple is not admissible: equation of order {s} fails"
            )));
        }
    }
    Ok(())
}

/// Outcome of the Bianchi check: the differential of the total curvature
/// and the `W` index triples (0-based) where it is nonzero.
#[derive(Clone, Debug)]
pub struct BianchiReport<S> {
    pub residual: Cochain<S>,
    pub violations: Vec<Vec<usize>>,
}

impl<S> BianchiReport<S> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates `d Omega^{p-1}` for a tuple admissible through order `p - 1`.
pub fn bianchi_check<S: Scalar>(c: &SpencerComplex<S>, t: &AdmissibleTuple<S>, p: usize) -> Result<BianchiReport<S>> {
    if t.len() != p {
        return Err(Error::InvalidInput(format!(
            "order {p} check needs exactly {p} forms, tuple has {}",
            t.len()
        )));
    }
    require_admissible(c, t)?;
    let omega = total_curvature(c, t, p)?;
    let residual = c.spencer_d(&omega)?;
    let sets = Subsets::new(c.w_dim(), 3);
    let violations = residual
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| !is_zero_vec(v))
        .map(|(i, _)| sets.get(i).to_vec())
        .collect();
    Ok(BianchiReport { residual, violations })
}

/// Result of one solving step.
#[derive(Clone)]
pub enum SolveOutcome<S> {
    /// A form `w^p` with `[w^-1, w^p] = -Omega^{p-1}`.
    Solved(ConstantForm<S>),
    /// The nonzero class representative of `Omega^{p-1}`.
    Obstructed(Cochain<S>),
}

impl<S: fmt::Display + fmt::Debug> fmt::Debug for SolveOutcome<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Solved(x) => f.debug_tuple("Solved").field(x).finish(),
            SolveOutcome::Obstructed(x) => f.debug_tuple("Obstructed").field(x).finish(),
        }
    }
}

impl<S> SolveOutcome<S> {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }
}

/// Solves `[w^-1, w^p] = -omega` for a level-0 curvature cocycle `omega` in
/// `C^{p,2}`, re-verifying any solution exactly.
pub fn solve_against<S: Scalar>(c: &SpencerComplex<S>, omega: &Cochain<S>) -> Result<SolveOutcome<S>> {
    if omega.q() != 2 || omega.level() != 0 {
        return Err(Error::InvalidInput("curvature must be a level-0 two-cochain".into()));
    }
    match c.is_coboundary(&omega.negated())? {
        Some(x) => {
            let residual = c.spencer_d(&x)?.add(omega)?;
            if !residual.is_zero() {
                return Err(Error::Invariant("solution fails re-verification".into()));
            }
            Ok(SolveOutcome::Solved(ConstantForm::from_cochain(c, &x)?))
        }
        None => {
            let rep = c.class_representative(omega)?;
            if rep.is_zero() {
                return Err(Error::Invariant(
                    "no solution but the class representative vanishes".into(),
                ));
            }
            Ok(SolveOutcome::Obstructed(rep))
        }
    }
}

/// Extends a tuple admissible through order `p - 1` by one form, or returns
/// the obstruction.
pub fn solve_next<S: Scalar>(c: &SpencerComplex<S>, t: &AdmissibleTuple<S>, p: usize) -> Result<SolveOutcome<S>> {
    if t.len() != p {
        return Err(Error::InvalidInput(format!(
            "solving order {p} needs exactly {p} forms, tuple has {}",
            t.len()
        )));
    }
    require_admissible(c, t)?;
    let omega = total_curvature(c, t, p)?;
    solve_against(c, &omega)
}

/// Splitting of a curvature cochain along the annihilator filtration.
///
/// With complements `m_s` of `c_s` in `c_{s+1}`, the value space is
/// `m_0 + m_1 + ...`; the pieces for `s < r` are the complementary
/// curvatures and the remainder is the level `r` part.
#[derive(Clone, Debug)]
pub struct CurvatureDecomposition<S> {
    pub level: usize,
    /// The level `r` curvature as a coset-valued cochain.
    pub hat: Cochain<S>,
    /// Its lift into `m_r + m_{r+1} + ...`, at level 0.
    pub hat_lift: Cochain<S>,
    /// `complementary[s]` takes values in `m_s`, for `s < r`.
    pub complementary: Vec<Cochain<S>>,
}

impl<S: Scalar> CurvatureDecomposition<S> {
    pub fn reassemble(&self) -> Result<Cochain<S>> {
        let mut acc = self.hat_lift.clone();
        for piece in &self.complementary {
            acc = acc.add(piece)?;
        }
        Ok(acc)
    }
}

/// Complements `m_s` of `c_s` in `c_{s+1}` for every level of degree `d`.
pub fn filtration_complements<S: Scalar>(c: &SpencerComplex<S>, d: i32) -> Result<Vec<Subspace<S>>> {
    let mut out = Vec::new();
    for s in 0..=(d as usize + 1) {
        let lo = c.annihilator(d, s)?;
        let hi = c.annihilator(d, s + 1)?;
        out.push(lo.complement_in(&hi)?);
    }
    Ok(out)
}

pub fn level_decompose<S: Scalar>(
    c: &SpencerComplex<S>,
    omega: &Cochain<S>,
    r: usize,
) -> Result<CurvatureDecomposition<S>> {
    if omega.q() != 2 || omega.level() != 0 {
        return Err(Error::InvalidInput("expected a level-0 two-cochain".into()));
    }
    let d = omega.p() as i32 - 1;
    let max_r = if d < 0 { 0 } else { d as usize + 2 };
    if r > max_r {
        return Err(Error::InvalidInput(format!(
            "level {r} out of range 0..={max_r} for degree {d}"
        )));
    }
    if r == 0 {
        return Ok(CurvatureDecomposition {
            level: 0,
            hat: omega.clone(),
            hat_lift: omega.clone(),
            complementary: Vec::new(),
        });
    }
    let comps = filtration_complements(c, d)?;
    let width = c.algebra().component_dim(d);
    let mut cols = Vec::new();
    let mut ranges = Vec::new();
    for m in &comps {
        let start = cols.len();
        cols.extend(m.basis().iter().cloned());
        ranges.push(start..cols.len());
    }
    let f = Factorization::new(Matrix::from_columns(&cols, width)?);
    let n_sets = omega.values().len();
    let mut pieces: Vec<Vec<Vec<S>>> = vec![Vec::with_capacity(n_sets); r];
    let mut rest_vals = Vec::with_capacity(n_sets);
    for v in omega.values() {
        let coeffs = f
            .solve(v)?
            .ok_or_else(|| Error::Invariant("complements do not span the component".into()))?;
        let mut rest = v.clone();
        for (s, piece) in pieces.iter_mut().enumerate() {
            let part = comps[s].combine(&coeffs[ranges[s].clone()]);
            for (x, y) in rest.iter_mut().zip(&part) {
                *x = x.minus(y);
            }
            piece.push(part);
        }
        rest_vals.push(rest);
    }
    let complementary = pieces
        .into_iter()
        .map(|vals| Cochain::from_parts(omega.p(), 2, 0, omega.w_dim(), vals))
        .collect();
    let hat_lift = Cochain::from_parts(omega.p(), 2, 0, omega.w_dim(), rest_vals);
    let hat = c.project_to_level(omega, r)?;
    Ok(CurvatureDecomposition {
        level: r,
        hat,
        hat_lift,
        complementary,
    })
}

/// Gauge transport by `varpi` in degree 1 for a height 2 algebra:
/// `w'^0 = w^0 + [w^-1, varpi]` and
/// `e^1 = [w^0, varpi] + 1/2 [[w^-1, varpi], varpi]`.
///
/// Requires `w^0` admissible; the identity `Omega'^0 = Omega^0 - [w^-1, e^1]`
/// is re-evaluated before returning.
pub fn strong_equiv_transport<S: Scalar>(
    c: &SpencerComplex<S>,
    omega0: &ConstantForm<S>,
    varpi: &[S],
) -> Result<(ConstantForm<S>, ConstantForm<S>)> {
    let alg = c.algebra();
    if alg.height() != 2 {
        return Err(Error::InvalidInput(format!(
            "transport needs height 2, algebra has height {}",
            alg.height()
        )));
    }
    if omega0.degree != 0 {
        return Err(Error::InvalidInput("first form must have degree 0".into()));
    }
    if varpi.len() != alg.component_dim(1) {
        return Err(Error::DimensionMismatch("varpi must lie in degree 1".into()));
    }
    let t = AdmissibleTuple::new(vec![omega0.clone()])?;
    require_admissible(c, &t)?;
    let v = alg.embed(1, varpi);
    let half = S::one().over(&S::from_int(2));
    let n = c.w_dim();
    let mut new0 = Vec::with_capacity(n);
    let mut eps = Vec::with_capacity(n);
    for k in 0..n {
        let wk = alg.embed(-1, c.w_vector(k));
        let xk = alg.embed(0, &omega0.value(k));
        let wv = alg.bracket(&wk, &v)?;
        let mut y = xk.clone();
        axpy(&mut y, &S::one(), &wv);
        new0.push(alg.restrict(0, &y));
        let mut e = alg.bracket(&xk, &v)?;
        axpy(&mut e, &half, &alg.bracket(&wv, &v)?);
        eps.push(alg.restrict(1, &e));
    }
    let w0 = ConstantForm::new(c, 0, Matrix::from_columns(&new0, alg.component_dim(0))?)?;
    let e1 = ConstantForm::new(c, 1, Matrix::from_columns(&eps, alg.component_dim(1))?)?;
    let before = total_curvature(c, &t, 1)?;
    let after = total_curvature(c, &AdmissibleTuple::new(vec![w0.clone()])?, 1)?;
    let de = c.spencer_d(&e1.to_cochain(c)?)?;
    if after != before.add(&de.negated())? {
        return Err(Error::Invariant("transport identity fails".into()));
    }
    Ok((w0, e1))
}
