use crate::error::{Error, Result};
use crate::linalg::matrix::{kernel_from_rref, rref_rows};
use crate::linalg::Matrix;
use crate::scalar::{axpy, is_zero_vec, zeros, Scalar};

/// A linear subspace of `S^n`, stored as the nonzero rows of a reduced
/// row-echelon basis.
///
/// Storing the reduced basis (one row per basis vector) is the transpose of a
/// reduced column-echelon basis matrix, so two subspaces are equal exactly
/// when their stored rows are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_rref_unchecked(
            ambient,
            Matrix::<S>::identity(ambient).row_vecs(),
            (0..ambient).collect(),
        )
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<S>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {ambient}",
                v.len()
            )));
        }
        let (mut rows, pivots) = rref_rows(vectors, ambient);
        rows.truncate(pivots.len());
        Ok(Self::from_rref_unchecked(ambient, rows, pivots))
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices
            .into_iter()
            .map(|i| {
                let mut v = zeros(ambient);
                v[i] = S::one();
                v
            })
            .collect();
        Self::span(ambient, vectors).expect("indices inside the ambient space")
    }

    fn from_rref_unchecked(ambient: usize, rows: Vec<Vec<S>>, pivots: Vec<usize>) -> Self {
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Echelon basis vectors, in pivot order.
    pub fn basis(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Positions that are not pivots. Reduced vectors are supported here, so
    /// these serve as coordinates on the quotient `S^n / self`.
    pub fn free_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_fn(self.ambient, self.dim(), |i, j| self.rows[j][i].clone())
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace<S>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Canonical representative of `v + self`: the unique element of the
    /// coset vanishing at every pivot position.
    pub fn reduce(&self, v: &[S]) -> Result<Vec<S>> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].negated();
                axpy(&mut out, &c, row);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[S]) -> Result<bool> {
        Ok(is_zero_vec(&self.reduce(v)?))
    }

    /// Coefficients of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[S]) -> Result<Option<Vec<S>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the echelon basis.
    pub fn combine(&self, coeffs: &[S]) -> Vec<S> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut out = zeros(self.ambient);
        for (c, row) in coeffs.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    /// Matrix `E` with `self = ker E`; its rows span the annihilator.
    pub fn equations(&self) -> Matrix<S> {
        let k = kernel_from_rref(&self.rows, &self.pivots, self.ambient);
        Matrix::from_rows(k.rows, self.ambient).expect("kernel rows have the ambient length")
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other)?;
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, vectors)
    }

    pub fn intersection(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        Ok(self.equations().vstack(&other.equations())?.kernel())
    }

    pub fn is_subspace_of(&self, other: &Subspace<S>) -> Result<bool> {
        self.check_ambient(other)?;
        for v in &self.rows {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complement of `self` inside `sup`, built greedily: the echelon basis of
    /// `sup` is scanned in order and each vector independent of `self` plus
    /// the vectors kept so far is kept.
    pub fn complement_in(&self, sup: &Subspace<S>) -> Result<Subspace<S>> {
        if !self.is_subspace_of(sup)? {
            return Err(Error::InvalidInput(
                "subspace is not contained in the given superspace".into(),
            ));
        }
        let mut running = self.clone();
        let mut kept = Vec::new();
        for v in &sup.rows {
            if running.dim() == sup.dim() {
                break;
            }
            if !running.contains(v)? {
                running = running.sum(&Subspace::span(self.ambient, vec![v.clone()])?)?;
                kept.push(v.clone());
            }
        }
        Subspace::span(self.ambient, kept)
    }

    /// Image of `self` under `m`.
    pub fn image_under(&self, m: &Matrix<S>) -> Result<Subspace<S>> {
        let mut images = Vec::with_capacity(self.dim());
        for v in &self.rows {
            images.push(m.mul_vec(v)?);
        }
        Subspace::span(m.rows(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    fn sp(n: usize, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::span(n, vs.iter().map(|x| v(x)).collect()).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let a = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), sp(3, &[&[0, 1, 0]]));
        assert_eq!(a.intersection(&a).unwrap(), a);
        let e1 = sp(3, &[&[1, 0, 0]]);
        let e2 = sp(3, &[&[0, 1, 0]]);
        assert!(e1.intersection(&e2).unwrap().is_zero());
        assert!(a.intersection(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn complement_examples() {
        let full = Subspace::<Rational>::full(2);
        assert_eq!(Subspace::zero(2).complement_in(&full).unwrap(), full);
        let e1 = sp(2, &[&[1, 0]]);
        assert_eq!(e1.complement_in(&full).unwrap(), sp(2, &[&[0, 1]]));
        assert!(e1.complement_in(&e1).unwrap().is_zero());
        assert!(full.complement_in(&e1).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(sp(2, &[&[1, 1]]).contains(&v(&[1, 1])).unwrap());
        assert!(!sp(2, &[&[0, 1]]).contains(&v(&[1, 0])).unwrap());
        assert!(Subspace::<Rational>::zero(4).contains(&v(&[0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn reduce_and_coordinates() {
        let s = sp(3, &[&[1, 2, 0], &[0, 0, 1]]);
        let x = v(&[2, 4, -3]);
        assert_eq!(s.coordinates(&x).unwrap(), Some(v(&[2, -3])));
        assert_eq!(s.combine(&v(&[2, -3])), x);
        assert_eq!(s.free_positions(), vec![1]);
        assert_eq!(s.reduce(&v(&[1, 0, 5])).unwrap(), v(&[0, -2, 0]));
    }

    #[test]
    fn equations_cut_out_subspace() {
        let s = sp(4, &[&[1, 2, 0, 1], &[0, 1, 1, 1]]);
        assert_eq!(s.equations().kernel(), s);
    }
}
