//! Subspaces of `K^n` held as orthonormal bases.
//!
//! A basis is only defined up to right multiplication by a unitary, so two
//! subspaces are never compared entrywise. Equality means both mutual
//! projection residuals are within tolerance.

use crate::error::{check_dim, Result};
use crate::field::{CMatrix, CVector};
use crate::linalg::{self, Cutoff};

/// Comparison and rank tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Rank cutoff for a span of user vectors: `max(tol, n * eps) * sigma_max`.
pub(crate) fn rank_cutoff(tol: f64, ambient_dim: usize) -> Cutoff {
    Cutoff::Relative(tol.max(ambient_dim.max(1) as f64 * f64::EPSILON))
}

#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: CMatrix,
    tol: f64,
}

impl Subspace {
    /// The zero subspace of `K^ambient_dim`.
    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Subspace {
            ambient_dim,
            basis: CMatrix::zeros(ambient_dim, 0),
            tol,
        }
    }

    /// The whole space `K^ambient_dim`.
    pub fn full(ambient_dim: usize, tol: f64) -> Self {
        Subspace {
            ambient_dim,
            basis: CMatrix::identity(ambient_dim, ambient_dim),
            tol,
        }
    }

    /// Orthonormalized span of `vectors`.
    ///
    /// Numerical rank counts singular values above `tol * sigma_max`, with
    /// `tol` never below `ambient_dim * eps`.
    pub fn span(vectors: &[CVector], ambient_dim: usize, tol: Option<f64>) -> Result<Self> {
        for v in vectors {
            check_dim("span", ambient_dim, v.len())?;
        }
        let tol = tol.unwrap_or(DEFAULT_TOL);
        let stacked = linalg::stack_columns(vectors, ambient_dim);
        Ok(Self::from_columns(&stacked, tol))
    }

    /// Orthonormalized span of the columns of `m`.
    pub fn from_columns(m: &CMatrix, tol: f64) -> Self {
        let basis = linalg::column_basis(m, rank_cutoff(tol, m.nrows()));
        Subspace {
            ambient_dim: m.nrows(),
            basis,
            tol,
        }
    }

    /// Span of columns that are blocks of orthonormal data: the cutoff is
    /// floored at scale one so rounding noise never counts as a direction.
    pub(crate) fn from_columns_floored(m: &CMatrix, tol: f64) -> Self {
        let basis = linalg::column_basis(m, Cutoff::Floored(tol));
        Subspace {
            ambient_dim: m.nrows(),
            basis,
            tol,
        }
    }

    /// Wraps a basis already known to be orthonormal.
    pub(crate) fn from_orthonormal(basis: CMatrix, tol: f64) -> Self {
        debug_assert!(linalg::orthonormality_defect(&basis) < 1e-8);
        Subspace {
            ambient_dim: basis.nrows(),
            basis,
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Orthogonal projection `B B^H v`.
    pub fn project(&self, v: &CVector) -> Result<CVector> {
        check_dim("project", self.ambient_dim, v.len())?;
        Ok(&self.basis * (self.basis.adjoint() * v))
    }

    /// Residual `v - P v`.
    pub fn reject(&self, v: &CVector) -> Result<CVector> {
        Ok(v - self.project(v)?)
    }

    /// `d(v, E) = inf { |v - e| : e in E }`.
    pub fn distance(&self, v: &CVector) -> Result<f64> {
        Ok(self.reject(v)?.norm())
    }

    /// Membership test `|v - P v| <= tol * max(1, |v|)`.
    pub fn contains(&self, v: &CVector) -> Result<bool> {
        let r = self.distance(v)?;
        Ok(r <= self.tol * v.norm().max(1.0))
    }

    /// `(I - P) M` for a matrix of column vectors.
    pub(crate) fn reject_columns(&self, m: &CMatrix) -> CMatrix {
        m - &self.basis * (self.basis.adjoint() * m)
    }

    /// Largest sine of the principal angles from `self` into `other`:
    /// `|(I - P_other) B_self|_2`. Zero exactly when `self ⊆ other`.
    pub fn containment_residual(&self, other: &Subspace) -> Result<f64> {
        check_dim("containment", self.ambient_dim, other.ambient_dim)?;
        Ok(linalg::spectral_norm(&other.reject_columns(&self.basis)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        Ok(self.containment_residual(other)? <= self.tol.max(other.tol))
    }

    /// Maximum of both mutual projection residuals.
    pub fn equality_residual(&self, other: &Subspace) -> Result<f64> {
        Ok(self
            .containment_residual(other)?
            .max(other.containment_residual(self)?))
    }

    /// Subspace equality by mutual projection.
    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        Ok(self.equality_residual(other)? <= self.tol.max(other.tol))
    }

    /// `|B_self^H B_other|_2`; zero exactly for orthogonal subspaces.
    pub fn orthogonality_residual(&self, other: &Subspace) -> Result<f64> {
        check_dim("orthogonality", self.ambient_dim, other.ambient_dim)?;
        Ok(linalg::spectral_norm(&(self.basis.adjoint() * &other.basis)))
    }

    /// `E ∩ F`, from the null space of `[B_E, -B_F]` mapped through `B_E`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_dim("intersect", self.ambient_dim, other.ambient_dim)?;
        let tol = self.tol.max(other.tol);
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim, tol));
        }
        let stacked = linalg::hstack(&self.basis, &(-&other.basis));
        let null = linalg::null_basis(&stacked, Cutoff::Floored(tol));
        let coeffs = null.rows(0, self.dim()).into_owned();
        let vectors = &self.basis * coeffs;
        Ok(Subspace::from_columns_floored(&vectors, tol))
    }

    /// `E + F`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim("subspace_sum", self.ambient_dim, other.ambient_dim)?;
        let tol = self.tol.max(other.tol);
        let stacked = linalg::hstack(&self.basis, &other.basis);
        Ok(Subspace::from_columns_floored(&stacked, tol))
    }

    /// Orthogonal complement; its dimension is always `ambient_dim - dim`.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient_dim;
        let k = n - self.dim();
        let projector = CMatrix::identity(n, n) - &self.basis * self.basis.adjoint();
        let basis = linalg::leading_left_vectors(&projector, k);
        Subspace {
            ambient_dim: n,
            basis,
            tol: self.tol,
        }
    }

    /// Image of the subspace under `m`, re-orthonormalized.
    pub fn image_under(&self, m: &CMatrix) -> Result<Subspace> {
        check_dim("image_under", self.ambient_dim, m.ncols())?;
        Ok(Subspace::from_columns_floored(&(m * &self.basis), self.tol))
    }

    /// Same subspace with a real basis; valid when the subspace is closed
    /// under complex conjugation.
    pub(crate) fn realified(&self) -> Subspace {
        Subspace {
            ambient_dim: self.ambient_dim,
            basis: linalg::realify(&self.basis),
            tol: self.tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{real_vector, Field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: &[f64]) -> CVector {
        real_vector(x)
    }

    fn random_subspace(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Subspace {
        let m = Field::Complex.gaussian_matrix(rng, n, d);
        Subspace::from_columns(&m, DEFAULT_TOL)
    }

    #[test]
    fn span_examples() {
        let s = Subspace::span(&[v(&[1.0, 0.0]), v(&[2.0, 0.0])], 2, None).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v(&[1.0, 0.0])).unwrap());

        let s = Subspace::span(&[], 3, None).unwrap();
        assert_eq!(s.dim(), 0);

        let s = Subspace::span(&[v(&[1.0, 1.0]), v(&[1.0, -1.0])], 2, None).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.equals(&Subspace::full(2, DEFAULT_TOL)).unwrap());
    }

    #[test]
    fn span_rejects_wrong_length() {
        assert!(Subspace::span(&[v(&[1.0, 0.0, 0.0])], 2, None).is_err());
    }

    #[test]
    fn contains_examples() {
        let e = Subspace::span(&[v(&[1.0, 0.0])], 2, None).unwrap();
        assert!(e.contains(&v(&[2.0, 0.0])).unwrap());
        assert!(!e.contains(&v(&[0.0, 1.0])).unwrap());
        let z = Subspace::zero(2, DEFAULT_TOL);
        assert!(z.contains(&v(&[0.0, 0.0])).unwrap());
        assert!(e.contains(&v(&[1.0])).is_err());
    }

    #[test]
    fn intersect_examples() {
        let x = Subspace::span(&[v(&[1.0, 0.0])], 2, None).unwrap();
        let y = Subspace::span(&[v(&[0.0, 1.0])], 2, None).unwrap();
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        assert!(x.intersect(&x).unwrap().equals(&x).unwrap());
        let full = Subspace::span(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], 2, None).unwrap();
        let diag = Subspace::span(&[v(&[1.0, 1.0])], 2, None).unwrap();
        assert!(full.intersect(&diag).unwrap().equals(&diag).unwrap());
    }

    #[test]
    fn sum_complement_distance_examples() {
        let x = Subspace::span(&[v(&[1.0, 0.0])], 2, None).unwrap();
        assert!((x.distance(&v(&[3.0, 4.0])).unwrap() - 4.0).abs() < 1e-14);
        let z = Subspace::zero(3, DEFAULT_TOL);
        assert!(z.complement().equals(&Subspace::full(3, DEFAULT_TOL)).unwrap());
        let y = Subspace::span(&[v(&[0.0, 1.0])], 2, None).unwrap();
        assert!(x.sum(&y).unwrap().equals(&Subspace::full(2, DEFAULT_TOL)).unwrap());
    }

    #[test]
    fn unequal_dimensions_are_never_equal() {
        let x = Subspace::span(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], 3, None).unwrap();
        let d = Subspace::span(&[v(&[1.0, 1.0, 0.0])], 3, None).unwrap();
        assert!(d.is_subspace_of(&x).unwrap());
        assert!(!x.equals(&d).unwrap());
        assert!((x.equality_residual(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grassmann_identity_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=7 {
            for de in 0..=n {
                for df in 0..=n {
                    let e = random_subspace(&mut rng, n, de);
                    let f = random_subspace(&mut rng, n, df);
                    let cap = e.intersect(&f).unwrap();
                    let cup = e.sum(&f).unwrap();
                    assert_eq!(de + df, cap.dim() + cup.dim(), "n={n} de={de} df={df}");
                    assert!(cap.is_subspace_of(&e).unwrap() && cap.is_subspace_of(&f).unwrap());
                    assert!(e.is_subspace_of(&cup).unwrap() && f.is_subspace_of(&cup).unwrap());
                    assert_eq!(e.dim() + e.complement().dim(), n);
                }
            }
        }
    }

    #[test]
    fn intersection_of_overlapping_subspaces() {
        // E and F share a planted common direction.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let common = Field::Complex.gaussian_vector(&mut rng, 6);
        let mut ve = vec![common.clone()];
        let mut vf = vec![common.clone()];
        for _ in 0..2 {
            ve.push(Field::Complex.gaussian_vector(&mut rng, 6));
            vf.push(Field::Complex.gaussian_vector(&mut rng, 6));
        }
        let e = Subspace::span(&ve, 6, None).unwrap();
        let f = Subspace::span(&vf, 6, None).unwrap();
        let cap = e.intersect(&f).unwrap();
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&common).unwrap());
    }
}
