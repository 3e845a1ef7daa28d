//! Model algebras: flat and curved space forms, the conformal algebra, and
//! truncated prolongations of `gl_m(C)` with the complex-structure data used
//! for CR submanifolds.
//!
//! Basis orders are fixed:
//! - space forms: `e1..en` (degree -1), then `b_ij = E_ij - E_ji` for `i < j`
//!   in lexicographic order (degree 0);
//! - conformal: `e1..en`, the `b_ij`, then `I`, then the dual basis
//!   `f1..fn` of `V*` (degree 1);
//! - `gl_m(C)`: `E_ab` for all `(a, b)` in lexicographic order, then
//!   `iE_ab` in the same order, acting on `R^{2m}` through the coordinate
//!   arrangement of [`ComplexStructureData`].

use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, GradingKind, Terms};
use crate::linalg::{Factorization, Matrix, Subspace};
use crate::poly::PolySpace;
use crate::prolongation::{build_graded_algebra, LinearLieAlgebra};
use crate::scalar::{axpy, zeros, Scalar};
use crate::spencer::{Cochain, SpencerComplex, Subsets};

fn so_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Index of `b_ij` (or `-b_ji`) inside the so-block, with its sign.
fn so_index(n: usize, i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    // Pairs before row a: sum_{t<a} (n - 1 - t).
    let before = a * (2 * n - a - 1) / 2;
    Some((before + (b - a - 1), s))
}

/// Brackets of the flat Euclidean part shared by both model families:
/// `[A, v] = Av` and the commutator on `so(n)`, with the so-block starting
/// at `off`.
fn euclidean_brackets<S: Scalar>(n: usize, off: usize) -> Vec<((usize, usize), Terms<S>)> {
    let pairs = so_pairs(n);
    let mut br = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        // b_ij e_j = e_i, b_ij e_i = -e_j
        br.push(((off + k, j), vec![(i, S::one())]));
        br.push(((off + k, i), vec![(j, S::one().negated())]));
    }
    // [b_ij, b_kl] = d_jk b_il - d_ik b_jl - d_jl b_ik + d_il b_jk
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for (y, &(k, l)) in pairs.iter().enumerate().skip(x + 1) {
            let mut terms: Vec<(usize, S)> = Vec::new();
            let mut push = |a: usize, b: usize, s: i64| {
                if let Some((idx, t)) = so_index(n, a, b) {
                    terms.push((off + idx, S::from_int(s * t)));
                }
            };
            if j == k {
                push(i, l, 1);
            }
            if i == k {
                push(j, l, -1);
            }
            if j == l {
                push(i, k, -1);
            }
            if i == l {
                push(j, k, 1);
            }
            if !terms.is_empty() {
                br.push(((off + x, off + y), terms));
            }
        }
    }
    br
}

/// `R^n + so(n)` with `[v1, v2] = k0 (v2 <v1,.> - v1 <v2,.>)`.
///
/// Graded when `k0 = 0`, quasi-graded otherwise.
pub fn space_form_algebra<S: Scalar>(n: usize, k0: i64) -> Result<GradedLieAlgebra<S>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension {n} must be at least 2")));
    }
    let mut basis: Vec<(String, i32)> = (0..n).map(|i| (format!("e{}", i + 1), -1)).collect();
    for (i, j) in so_pairs(n) {
        basis.push((format!("b{}{}", i + 1, j + 1), 0));
    }
    let mut br = euclidean_brackets::<S>(n, n);
    if k0 != 0 {
        // [e_i, e_j] = k0 (E_ji - E_ij) = -k0 b_ij
        for (k, (i, j)) in so_pairs(n).into_iter().enumerate() {
            br.push(((i, j), vec![(n + k, S::from_int(-k0))]));
        }
    }
    let kind = if k0 == 0 {
        GradingKind::Graded
    } else {
        GradingKind::QuasiGraded
    };
    let name = format!("space form n={n} k0={k0}");
    GradedLieAlgebra::new(name, basis, kind, 1, br)
}

/// `V + co(V) + V*` with `[a, v] = v (x) a - nat(a (x) v) + a(v) I`.
pub fn conformal_algebra<S: Scalar>(n: usize) -> Result<GradedLieAlgebra<S>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension {n} must be at least 2")));
    }
    let pairs = so_pairs(n);
    let id = n + pairs.len();
    let dual = id + 1;
    let mut basis: Vec<(String, i32)> = (0..n).map(|i| (format!("e{}", i + 1), -1)).collect();
    for &(i, j) in &pairs {
        basis.push((format!("b{}{}", i + 1, j + 1), 0));
    }
    basis.push(("I".into(), 0));
    for i in 0..n {
        basis.push((format!("f{}", i + 1), 1));
    }
    let mut br = euclidean_brackets::<S>(n, n);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        // On V* the action is -A^t = A for antisymmetric A.
        br.push(((n + k, dual + j), vec![(dual + i, S::one())]));
        br.push(((n + k, dual + i), vec![(dual + j, S::one().negated())]));
    }
    for i in 0..n {
        br.push(((id, i), vec![(i, S::one())]));
        br.push(((id, dual + i), vec![(dual + i, S::one().negated())]));
    }
    // [f_j, e_i] = E_ij - E_ji + d_ij I
    for j in 0..n {
        for i in 0..n {
            let terms = match so_index(n, i, j) {
                Some((idx, s)) => vec![(n + idx, S::from_int(s))],
                None => vec![(id, S::one())],
            };
            br.push(((dual + j, i), terms));
        }
    }
    GradedLieAlgebra::new(format!("conformal n={n}"), basis, GradingKind::Graded, 2, br)
}

/// The maximal prolongation of `co(n)` together with the map from
/// [`conformal_algebra`] into it.
///
/// The map is the identity on `V` and `co(n)` (both use the same names and
/// order) and sends `f_j` to the unique degree 1 element `T_j` with
/// `[T_j, e_i] = E_ij - E_ji + d_ij I` for every `i`. Column `k` of the
/// returned matrix is the image of conformal basis element `k`.
pub fn conformal_identification<S: Scalar>(n: usize) -> Result<(GradedLieAlgebra<S>, Matrix<S>)> {
    let conf = conformal_algebra::<S>(n)?;
    let res = build_graded_algebra(&LinearLieAlgebra::<S>::co(n), 2)?;
    let pro = res.assembled.expect("assembled by build_graded_algebra");
    if pro.dim() != conf.dim() {
        return Err(Error::Invariant(format!(
            "prolongation has dimension {}, conformal algebra {}",
            pro.dim(),
            conf.dim()
        )));
    }
    let low = n + n * (n - 1) / 2 + 1;
    let deg1 = pro.component(1);
    let deg0 = pro.component(0);
    // Stack the maps T -> [T, e_i] (degree 1 -> degree 0) over i.
    let mut rows = Vec::new();
    for i in 0..n {
        for &z in &deg0 {
            rows.push(
                deg1.iter()
                    .map(|&t| {
                        pro.bracket_basis(t, i)
                            .iter()
                            .find(|(k, _)| *k == z)
                            .map_or(S::zero(), |(_, c)| c.clone())
                    })
                    .collect(),
            );
        }
    }
    let system = Factorization::new(Matrix::from_rows(rows, deg1.len())?);
    let mut phi = Matrix::zeros(pro.dim(), conf.dim());
    for k in 0..low {
        phi[(k, k)] = S::one();
    }
    for j in 0..n {
        let fj = low + j;
        let mut rhs = Vec::new();
        for i in 0..n {
            let br = conf.bracket(&conf.basis_vector(fj), &conf.basis_vector(i))?;
            // Degree 0 coordinates agree between the two algebras.
            rhs.extend(deg0.iter().map(|&z| br[z].clone()));
        }
        let t = system
            .solve(&rhs)?
            .ok_or_else(|| Error::Invariant(format!("no degree 1 element matches f{}", j + 1)))?;
        for (c, &idx) in t.iter().zip(&deg1) {
            phi[(idx, fj)] = c.clone();
        }
    }
    Ok((pro, phi))
}

/// The complex structure on `R^{2m}` and the distinguished subspaces.
///
/// With `l = m - k` (1-based indices): `J e_i = e_{l+i}` for `i <= l`, and
/// `J e_{2l+i} = e_{2m-k+i}` for `i <= k`. `W` is cut out by the last `k`
/// coordinates, `U` by the last `2k`; `U^perp` is spanned by coordinates
/// `2l+1..2l+k` and `W^perp` by the last `k`.
#[derive(Clone)]
pub struct ComplexStructureData<S> {
    pub m: usize,
    pub k: usize,
    pub j: Matrix<S>,
    /// Real coordinate carrying the real (resp. imaginary) part of each
    /// complex coordinate.
    pub re: Vec<usize>,
    pub im: Vec<usize>,
    pub u: Vec<usize>,
    pub u_perp: Vec<usize>,
    pub w: Vec<usize>,
    pub w_perp: Vec<usize>,
    /// Multiplication by `i` on each degree `d` component, in component
    /// coordinates, for `d = -1, 0, 1, ...`.
    pub i_action: Vec<Matrix<S>>,
}

impl<S: Scalar> std::fmt::Debug for ComplexStructureData<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComplexStructureData")
            .field("m", &self.m)
            .field("k", &self.k)
            .field("w", &self.w)
            .field("u", &self.u)
            .finish()
    }
}

impl<S: Scalar> ComplexStructureData<S> {
    fn arrangement(m: usize, k: usize) -> Self {
        let l = m - k;
        let mut re = Vec::new();
        let mut im = Vec::new();
        for a in 0..l {
            re.push(a);
            im.push(l + a);
        }
        for i in 0..k {
            re.push(2 * l + i);
            im.push(2 * m - k + i);
        }
        let mut j = Matrix::zeros(2 * m, 2 * m);
        for a in 0..m {
            j[(im[a], re[a])] = S::one();
            j[(re[a], im[a])] = S::one().negated();
        }
        ComplexStructureData {
            m,
            k,
            j,
            re,
            im,
            u: (0..2 * l).collect(),
            u_perp: (2 * l..2 * m - k).collect(),
            w: (0..2 * m - k).collect(),
            w_perp: (2 * m - k..2 * m).collect(),
            i_action: Vec::new(),
        }
    }

    /// Multiplication by `i` on the degree `d` component.
    pub fn i_on(&self, d: i32) -> &Matrix<S> {
        &self.i_action[(d + 1) as usize]
    }
}

/// `gl_m(C)` as a real linear Lie algebra on `R^{2m}` in the arrangement
/// `(m, k)`.
pub fn gl_complex<S: Scalar>(m: usize, k: usize) -> Result<(LinearLieAlgebra<S>, ComplexStructureData<S>)> {
    if m == 0 || k >= m {
        return Err(Error::InvalidInput(format!(
            "need m >= 1 and 0 <= k <= m - 1, got m={m} k={k}"
        )));
    }
    let cs = ComplexStructureData::<S>::arrangement(m, k);
    let n = 2 * m;
    let mut names = Vec::new();
    let mut gens = Vec::new();
    for imag in [false, true] {
        for a in 0..m {
            for b in 0..m {
                let mut g = Matrix::zeros(n, n);
                if imag {
                    // f_b -> i f_a
                    g[(cs.im[a], cs.re[b])] = S::one();
                    g[(cs.re[a], cs.im[b])] = S::one().negated();
                    names.push(format!("iE{}{}", a + 1, b + 1));
                } else {
                    g[(cs.re[a], cs.re[b])] = S::one();
                    g[(cs.im[a], cs.im[b])] = S::one();
                    names.push(format!("E{}{}", a + 1, b + 1));
                }
                gens.push(g);
            }
        }
    }
    Ok((LinearLieAlgebra::new(n, names, gens)?, cs))
}

/// Prolongation of `gl_m(C)` truncated at degree `max_order`, with the
/// complex-structure data (including multiplication by `i` per degree).
pub fn cr_algebra<S: Scalar>(
    m: usize,
    k: usize,
    max_order: usize,
) -> Result<(GradedLieAlgebra<S>, ComplexStructureData<S>)> {
    if max_order < 1 {
        return Err(Error::InvalidInput("max_order must be at least 1".into()));
    }
    let (gl, mut cs) = gl_complex::<S>(m, k)?;
    let res = build_graded_algebra(&gl, max_order)?;
    let alg = res.assembled.expect("assembled by build_graded_algebra");
    let n = 2 * m;
    let ps = PolySpace::new(n, max_order + 1);
    // Multiplication by i is J applied to the vector values.
    let apply_j = |poly: &[S], deg: usize| -> Vec<S> {
        let mlen = ps.monomials(deg).len();
        let mut out = zeros(poly.len());
        for a in 0..n {
            for b in 0..n {
                let c = &cs.j[(a, b)];
                if !c.is_zero() {
                    axpy(&mut out[a * mlen..(a + 1) * mlen], c, &poly[b * mlen..(b + 1) * mlen]);
                }
            }
        }
        out
    };
    let mut i_action = vec![cs.j.clone()];
    let h0_polys: Vec<Vec<S>> = gl.generators().iter().map(|g| g.entries().to_vec()).collect();
    let f0 = Factorization::new(Matrix::from_columns(&h0_polys, n * n)?);
    let cols0: Vec<Vec<S>> = h0_polys
        .iter()
        .map(|p| f0.solve(&apply_j(p, 1)).expect("shape").expect("gl_m(C) is complex"))
        .collect();
    i_action.push(Matrix::from_columns(&cols0, h0_polys.len())?);
    for p in 1..res.orders.len() {
        let sp = &res.orders[p];
        if sp.is_zero() {
            break;
        }
        let cols: Vec<Vec<S>> = sp
            .basis()
            .iter()
            .map(|b| {
                sp.coordinates(&apply_j(b, p + 1))
                    .expect("shape")
                    .expect("prolongation is complex")
            })
            .collect();
        i_action.push(Matrix::from_columns(&cols, sp.dim())?);
    }
    cs.i_action = i_action;
    Ok((alg, cs))
}

/// Extends a level-0 two-form on `W` to all of `V` by
/// `x~(v1, v2) = -x(J v1, J v2)` on `W^perp` and `x~(v1, w2) = -i x(J v1, w2)`.
///
/// `on_w` and `on_v` are the complexes over `W` and over `V = W + W^perp`.
pub fn cr_extend_cochain<S: Scalar>(
    on_w: &SpencerComplex<S>,
    on_v: &SpencerComplex<S>,
    x: &Cochain<S>,
    cs: &ComplexStructureData<S>,
) -> Result<Cochain<S>> {
    if x.q() != 2 || x.level() != 0 {
        return Err(Error::InvalidInput("extension needs a level-0 two-form".into()));
    }
    let n = 2 * cs.m;
    let nw = 2 * cs.m - cs.k;
    if on_w.v_dim() != n
        || on_w.w() != &Subspace::coordinate(n, cs.w.iter().copied())
        || !on_v.w().is_full()
        || on_v.v_dim() != n
    {
        return Err(Error::InvalidInput("complexes do not match the CR arrangement".into()));
    }
    let d = x.p() as i32 - 1;
    if d < -1 || d as usize + 1 >= cs.i_action.len() {
        return Err(Error::InvalidInput(format!("degree {d} outside the CR truncation")));
    }
    let width = x.values().first().map_or(0, Vec::len);
    // x on two vectors of W given in W coordinates.
    let bilinear = |a: &[S], b: &[S]| -> Vec<S> {
        let mut out = zeros::<S>(width);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() || i == j {
                    continue;
                }
                let v = x.eval(&[i, j]);
                axpy(&mut out, &ai.times(bj), &v);
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<S> {
        let mut e = zeros::<S>(nw);
        e[i] = S::one();
        e
    };
    // J e_i for i in W^perp, which lies in W.
    let j_of = |i: usize| -> Vec<S> { cs.j.column(i)[..nw].to_vec() };
    let imult = cs.i_on(d);
    let mut values = Vec::new();
    for set in Subsets::new(n, 2).iter() {
        let (a, b) = (set[0], set[1]);
        let val = match (a < nw, b < nw) {
            (true, true) => x.eval(&[a, b]),
            // a in W, b in W^perp: x~(a, b) = -x~(b, a) = i x(J b, a)
            (true, false) => imult.mul_vec(&bilinear(&j_of(b), &unit(a)))?,
            (false, true) => unreachable!("indices are increasing"),
            (false, false) => bilinear(&j_of(a), &j_of(b)).into_iter().map(|c| c.negated()).collect(),
        };
        values.push(val);
    }
    on_v.cochain(x.p(), 2, 0, values)
}

/// Residual of the CR integrability conditions on a basis of `U`: for each
/// pair `u1 < u2`, the components of `T(u1,u2) - T(Ju1,Ju2)` outside `U`,
/// then `T(u1,u2) - T(Ju1,Ju2) + J T(Ju1,u2) + J T(u1,Ju2)`.
///
/// Linear in `t`, a `(0, 2)` cochain over `W` with values in `V`.
pub fn cr_integrability_residual<S: Scalar>(t: &Cochain<S>, cs: &ComplexStructureData<S>) -> Result<Vec<S>> {
    let n = 2 * cs.m;
    let nw = 2 * cs.m - cs.k;
    if t.p() != 0 || t.q() != 2 || t.w_dim() != nw || t.values().iter().any(|v| v.len() != n) {
        return Err(Error::InvalidInput("expected a V-valued two-form on W".into()));
    }
    let eval = |a: &[S], b: &[S]| -> Vec<S> {
        let mut out = zeros::<S>(n);
        for i in 0..nw {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..nw {
                if b[j].is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &a[i].times(&b[j]), &t.eval(&[i, j]));
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<S> {
        let mut e = zeros::<S>(n);
        e[i] = S::one();
        e
    };
    let jv = |v: &[S]| cs.j.mul_vec(v).expect("shape");
    let l = cs.m - cs.k;
    let mut out = Vec::new();
    for &a in &cs.u {
        for &b in cs.u.iter().filter(|&&b| b > a) {
            let (u1, u2) = (unit(a), unit(b));
            let (ju1, ju2) = (jv(&u1), jv(&u2));
            let lhs: Vec<S> = eval(&u1, &u2)
                .iter()
                .zip(eval(&ju1, &ju2))
                .map(|(x, y)| x.minus(&y))
                .collect();
            out.extend(lhs[2 * l..].iter().cloned());
            let mut s = eval(&ju1, &u2);
            axpy(&mut s, &S::one(), &eval(&u1, &ju2));
            let js = jv(&s);
            out.extend(lhs.iter().zip(&js).map(|(x, y)| x.plus(y)));
        }
    }
    Ok(out)
}

/// True when a `W`-valued two-form on `W` satisfies the CR integrability
/// conditions.
pub fn cr_integrability_test<S: Scalar>(t: &Cochain<S>, cs: &ComplexStructureData<S>) -> Result<bool> {
    if t.values()
        .iter()
        .any(|v| cs.w_perp.iter().any(|&i| v.get(i).is_some_and(|x| !x.is_zero())))
    {
        return Err(Error::InvalidInput("T must take values in W".into()));
    }
    Ok(cr_integrability_residual(t, cs)?.iter().all(|x| x.is_zero()))
}

/// The `W`-valued two-forms passing [`cr_integrability_test`], in the flat
/// coordinates of `C^{0,2}` over `W` (tuple-major, then `V` coordinates).
pub fn cr_integrable_subspace<S: Scalar>(cs: &ComplexStructureData<S>) -> Result<Subspace<S>> {
    let n = 2 * cs.m;
    let nw = 2 * cs.m - cs.k;
    let sets = Subsets::new(nw, 2).len();
    let dim = sets * n;
    let mut columns = Vec::with_capacity(dim);
    for idx in 0..dim {
        let mut values = vec![zeros::<S>(n); sets];
        values[idx / n][idx % n] = S::one();
        let t = Cochain::from_parts(0, 2, 0, nw, values);
        columns.push(cr_integrability_residual(&t, cs)?);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let mut m = if rows == 0 {
        Matrix::zeros(0, dim)
    } else {
        Matrix::from_columns(&columns, rows)?
    };
    // W-valued: the W^perp coordinate of every tuple vanishes.
    for t in 0..sets {
        for &i in &cs.w_perp {
            let mut row = Matrix::zeros(1, dim);
            row[(0, t * n + i)] = S::one();
            m = m.vstack(&row)?;
        }
    }
    Ok(m.kernel())
}

/// Kernel of the alternation `W* (x) L^2 W* -> L^3 W*` for `dim W = n`.
///
/// Coordinates: index `i * C(n,2) + s` for `e^i (x) e^{jk}`, `s` the
/// lexicographic position of `j < k`.
pub fn r21_submodule<S: Scalar>(n: usize) -> Result<Subspace<S>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension {n} must be at least 2")));
    }
    let pairs = Subsets::new(n, 2);
    let triples = Subsets::new(n, 3);
    let cols = n * pairs.len();
    let mut m = Matrix::<S>::zeros(triples.len(), cols);
    for i in 0..n {
        for (s, jk) in pairs.iter().enumerate() {
            if let Some((sorted, sign)) = crate::spencer::sort_with_sign(&[i, jk[0], jk[1]]) {
                let row = triples.position(&sorted).expect("triple");
                m[(row, i * pairs.len() + s)] = S::from_int(sign);
            }
        }
    }
    Ok(m.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn supported_on(v: &[Rational], keep: &[usize]) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, x)| keep.contains(&i) || num_traits::Zero::is_zero(x))
    }

    #[test]
    fn space_form_dims_and_brackets() {
        let a = space_form_algebra::<Rational>(3, 1).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.kind(), GradingKind::QuasiGraded);
        // [e1, e2] = E21 - E12 = -b12 when k0 = 1.
        assert_eq!(a.bracket_basis(0, 1), &[(3, r(-1))]);
        let b = space_form_algebra::<Rational>(3, -1).unwrap();
        assert_eq!(b.bracket_basis(0, 1), &[(3, r(1))]);
        let flat = space_form_algebra::<Rational>(4, 0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(flat.bracket_basis(i, j).is_empty());
            }
        }
        assert!(space_form_algebra::<Rational>(1, 0).is_err());
    }

    #[test]
    fn rotation_acts_as_matrix() {
        let a = space_form_algebra::<Rational>(3, 0).unwrap();
        // b13 = E13 - E31: b13 e3 = e1, b13 e1 = -e3
        let b13 = a.index_of("b13").unwrap();
        assert_eq!(a.bracket_basis(b13, 2), &[(0, r(1))]);
        assert_eq!(a.bracket_basis(b13, 0), &[(2, r(-1))]);
    }

    #[test]
    fn curved_space_forms_are_lie_algebras() {
        for n in 2..=4 {
            for k0 in [-1, 0, 1] {
                let a = space_form_algebra::<Rational>(n, k0).unwrap();
                assert!(a.jacobi_report().is_empty(), "n={n} k0={k0}");
                assert!(a.grading_report().is_empty());
            }
        }
        let a = space_form_algebra::<Rational>(3, 1).unwrap();
        assert!(!a.grading_report_as(GradingKind::Graded).is_empty());
    }

    #[test]
    fn conformal_small_cases() {
        let a = conformal_algebra::<Rational>(3).unwrap();
        assert_eq!(a.dim(), 10);
        let c2 = conformal_algebra::<Rational>(2).unwrap();
        let f1 = c2.index_of("f1").unwrap();
        let i = c2.index_of("I").unwrap();
        assert_eq!(c2.bracket_basis(f1, 0), &[(i, r(1))]);
        for n in 2..=4 {
            let a = conformal_algebra::<Rational>(n).unwrap();
            assert!(a.jacobi_report().is_empty(), "n={n}");
            assert!(a.grading_report().is_empty());
        }
    }

    #[test]
    fn conformal_restricts_to_flat_space_form() {
        let c = conformal_algebra::<Rational>(4).unwrap();
        let s = space_form_algebra::<Rational>(4, 0).unwrap();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                assert_eq!(c.bracket_basis(i, j), s.bracket_basis(i, j));
            }
        }
    }

    #[test]
    fn conformal_is_the_prolongation_of_co() {
        for n in 3..=4 {
            let (pro, phi) = conformal_identification::<Rational>(n).unwrap();
            let conf = conformal_algebra::<Rational>(n).unwrap();
            assert_eq!(phi.rank(), conf.dim());
            assert!(conf.homomorphism_defects(&pro, &phi).unwrap().is_empty());
        }
    }

    #[test]
    fn complex_structure_arrangement() {
        let (gl, cs) = gl_complex::<Rational>(2, 1).unwrap();
        assert_eq!(gl.dim(), 8);
        let j2 = cs.j.mul(&cs.j).unwrap();
        assert_eq!(j2, Matrix::identity(4).scale(&r(-1)));
        for g in gl.generators() {
            assert!(g.commutator(&cs.j).unwrap().is_zero());
        }
        assert_eq!(cs.w, vec![0, 1, 2]);
        assert_eq!(cs.u, vec![0, 1]);
        // J maps W^perp into U^perp.
        let jw = cs.j.column(cs.w_perp[0]);
        assert!(supported_on(&jw, &cs.u_perp));
        // J(W) is not inside W.
        let je = cs.j.column(cs.u_perp[0]);
        assert!(!supported_on(&je, &cs.w));
        assert!(gl_complex::<Rational>(2, 2).is_err());
    }

    #[test]
    fn r21_dimensions() {
        assert_eq!(r21_submodule::<Rational>(2).unwrap().dim(), 2);
        assert_eq!(r21_submodule::<Rational>(3).unwrap().dim(), 8);
    }
}
