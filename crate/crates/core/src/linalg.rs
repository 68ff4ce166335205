//! Dense kernels shared by the subspace and relation code: SVD-based column
//! and null spaces, pseudo-inverse solves, Hermitian spectra.

use faer::{Mat, MatRef, Side};

use crate::field::{CMatrix, CVector, C64};

/// Column space and null space of `a` taken from a single SVD.
///
/// A singular value counts as nonzero when it exceeds `cutoff`. The two
/// returned bases therefore always have complementary dimensions:
/// `col.ncols() + null.ncols() == a.ncols()`.
pub(crate) struct SvdSplit {
    pub col: CMatrix,
    pub null: CMatrix,
}

/// How the cutoff for "numerically zero" singular values is formed.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Cutoff {
    /// `tol * sigma_max`
    Relative(f64),
    /// `tol * max(sigma_max, 1)`, for blocks of orthonormal matrices whose natural scale is 1
    Floored(f64),
}

impl Cutoff {
    fn resolve(self, sigma_max: f64) -> f64 {
        match self {
            Cutoff::Relative(t) => t * sigma_max,
            Cutoff::Floored(t) => t * sigma_max.max(1.0),
        }
    }
}

/// Full SVD `a = U diag(s) V^H` with `U` and `V` square and `s` descending.
///
/// Real input is decomposed in real arithmetic so that real subspaces keep
/// real bases.
pub(crate) struct FullSvd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

fn is_real(a: &CMatrix) -> bool {
    a.iter().all(|z| z.im == 0.0)
}

fn to_faer_real(a: &CMatrix) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)].re)
}

fn to_faer(a: &CMatrix) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer_real(a: MatRef<'_, f64>) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| C64::new(a[(i, j)], 0.0))
}

fn from_faer(a: MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

pub(crate) fn full_svd(a: &CMatrix) -> FullSvd {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return FullSvd {
            u: CMatrix::identity(rows, rows),
            s: Vec::new(),
            v: CMatrix::identity(cols, cols),
        };
    }
    if is_real(a) {
        let svd = to_faer_real(a).svd().expect("svd converges");
        FullSvd {
            u: from_faer_real(svd.U()),
            s: svd.S().column_vector().iter().copied().collect(),
            v: from_faer_real(svd.V()),
        }
    } else {
        let svd = to_faer(a).svd().expect("svd converges");
        FullSvd {
            u: from_faer(svd.U()),
            s: svd.S().column_vector().iter().map(|z| z.re).collect(),
            v: from_faer(svd.V()),
        }
    }
}

pub(crate) fn svd_split(a: &CMatrix, cutoff: Cutoff) -> SvdSplit {
    let cols = a.ncols();
    let svd = full_svd(a);
    let sigma_max = svd.s.first().copied().unwrap_or(0.0);
    let cut = cutoff.resolve(sigma_max);
    let rank = svd.s.iter().filter(|&&s| s > cut).count();
    SvdSplit {
        col: svd.u.columns(0, rank).into_owned(),
        null: svd.v.columns(rank, cols - rank).into_owned(),
    }
}

/// Orthonormal basis for the column space of `a`.
pub(crate) fn column_basis(a: &CMatrix, cutoff: Cutoff) -> CMatrix {
    svd_split(a, cutoff).col
}

/// Orthonormal basis for the null space of `a`.
pub(crate) fn null_basis(a: &CMatrix, cutoff: Cutoff) -> CMatrix {
    svd_split(a, cutoff).null
}

/// The `k` leading left singular vectors of `a`.
pub(crate) fn leading_left_vectors(a: &CMatrix, k: usize) -> CMatrix {
    let rows = a.nrows();
    if k == 0 || a.ncols() == 0 {
        return CMatrix::zeros(rows, 0);
    }
    full_svd(a).u.columns(0, k.min(rows)).into_owned()
}

/// Least-squares solution of `a * x = b` through the SVD pseudo-inverse,
/// discarding singular values at or below the cutoff.
pub(crate) fn pinv_solve(a: &CMatrix, b: &CMatrix, cutoff: Cutoff) -> CMatrix {
    let (rows, cols) = a.shape();
    if cols == 0 || rows == 0 {
        return CMatrix::zeros(cols, b.ncols());
    }
    let svd = full_svd(a);
    let cut = cutoff.resolve(svd.s[0]);
    let mut out = CMatrix::zeros(cols, b.ncols());
    for (i, &s) in svd.s.iter().enumerate() {
        if s > cut {
            // x += v_i (u_i^H b) / s
            let coeff = svd.u.column(i).adjoint() * b / C64::new(s, 0.0);
            out += svd.v.column(i) * coeff;
        }
    }
    out
}

/// Largest singular value, zero for empty matrices.
pub(crate) fn spectral_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Singular values in descending order.
pub(crate) fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    if is_real(a) {
        to_faer_real(a).singular_values().expect("svd converges")
    } else {
        to_faer(a).singular_values().expect("svd converges")
    }
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = m.nrows();
    if d == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    if is_real(&h) {
        let eig = to_faer_real(&h).self_adjoint_eigen(Side::Lower).expect("eigensolver converges");
        let values = eig.S().column_vector().iter().copied().collect();
        (values, from_faer_real(eig.U()))
    } else {
        let eig = to_faer(&h).self_adjoint_eigen(Side::Lower).expect("eigensolver converges");
        let values = eig.S().column_vector().iter().map(|z| z.re).collect();
        (values, from_faer(eig.U()))
    }
}

/// Spectral norm of `basis^H basis - I`.
pub(crate) fn orthonormality_defect(basis: &CMatrix) -> f64 {
    let d = basis.ncols();
    if d == 0 {
        return 0.0;
    }
    let g = basis.adjoint() * basis - CMatrix::identity(d, d);
    spectral_norm(&g)
}

/// Replaces a basis of a conjugation-invariant subspace by a real one.
///
/// The span of the real and imaginary parts of the columns equals the
/// original span whenever that span is closed under conjugation.
pub(crate) fn realify(basis: &CMatrix) -> CMatrix {
    let max_im = basis.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_im == 0.0 {
        return basis.clone();
    }
    let d = basis.ncols();
    let rows = basis.nrows();
    let mut parts = CMatrix::zeros(rows, 2 * d);
    for j in 0..d {
        for i in 0..rows {
            parts[(i, j)] = C64::new(basis[(i, j)].re, 0.0);
            parts[(i, d + j)] = C64::new(basis[(i, j)].im, 0.0);
        }
    }
    let b = leading_left_vectors(&parts, d);
    b.map(|z| C64::new(z.re, 0.0))
}

pub(crate) fn stack_columns(vectors: &[CVector], rows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

pub(crate) fn hstack(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.nrows(), b.nrows());
    let rows = a.nrows();
    let mut m = CMatrix::zeros(rows, a.ncols() + b.ncols());
    m.view_mut((0, 0), (rows, a.ncols())).copy_from(a);
    m.view_mut((0, a.ncols()), (rows, b.ncols())).copy_from(b);
    m
}

pub(crate) fn vstack(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.ncols());
    let cols = a.ncols();
    let mut m = CMatrix::zeros(a.nrows() + b.nrows(), cols);
    m.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    m.view_mut((a.nrows(), 0), (b.nrows(), cols)).copy_from(b);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::real_matrix;

    #[test]
    fn split_dimensions_are_complementary() {
        let a = real_matrix(2, 4, &[1.0, 2.0, 0.0, 1.0, 2.0, 4.0, 0.0, 2.0]);
        let s = svd_split(&a, Cutoff::Relative(1e-12));
        assert_eq!(s.col.ncols(), 1);
        assert_eq!(s.null.ncols(), 3);
        assert!((&a * &s.null).norm() < 1e-12);
    }

    #[test]
    fn empty_shapes() {
        let a = CMatrix::zeros(3, 0);
        let s = svd_split(&a, Cutoff::Floored(1e-10));
        assert_eq!(s.col.shape(), (3, 0));
        let a = CMatrix::zeros(0, 2);
        let s = svd_split(&a, Cutoff::Floored(1e-10));
        assert_eq!(s.null.ncols(), 2);
    }

    #[test]
    fn pinv_solves_consistent_system() {
        let a = real_matrix(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let x = real_matrix(2, 1, &[2.0, -1.0]);
        let b = &a * &x;
        let got = pinv_solve(&a, &b, Cutoff::Relative(1e-12));
        assert!((got - x).norm() < 1e-12);
    }

    #[test]
    fn real_input_keeps_real_bases() {
        let a = real_matrix(3, 3, &[1.0, 2.0, 3.0, 0.5, -1.0, 2.0, 1.5, 1.0, 5.0]);
        let s = svd_split(&a, Cutoff::Relative(1e-12));
        let im = s.col.iter().chain(s.null.iter()).map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(im < 1e-14, "imaginary leakage {im}");
    }

    #[test]
    fn hermitian_eigen_is_sorted() {
        let m = real_matrix(2, 2, &[2.0, 0.0, 0.0, -3.0]);
        let (vals, _) = hermitian_eigen(&m);
        assert_eq!(vals.len(), 2);
        assert!((vals[0] + 3.0).abs() < 1e-14 && (vals[1] - 2.0).abs() < 1e-14);
    }
}
