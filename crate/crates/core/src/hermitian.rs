//! Hermitian relations, their lower/upper bounds and definiteness, and the
//! numerical-radius constants `Ĉ(T) = C̃(T)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{CMatrix, C64};
use crate::linalg;
use crate::relation::{InducedOperator, LinearRelation};

/// Definiteness classes of a Hermitian relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
    #[serde(rename = "nonneg")]
    NonNegative,
    #[serde(rename = "nonpos")]
    NonPositive,
    Indefinite,
    /// `D(T) = {0}`: there is no `x ≠ 0` to test.
    None,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::Positive => "positive",
            Definiteness::Negative => "negative",
            Definiteness::NonNegative => "nonneg",
            Definiteness::NonPositive => "nonpos",
            Definiteness::Indefinite => "indefinite",
            Definiteness::None => "none",
        }
    }
}

impl std::str::FromStr for Definiteness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Definiteness::Positive,
            Definiteness::Negative,
            Definiteness::NonNegative,
            Definiteness::NonPositive,
            Definiteness::Indefinite,
            Definiteness::None,
        ]
        .into_iter()
        .find(|d| d.as_str() == s)
        .ok_or_else(|| Error::Parse(format!("unknown definiteness class '{s}'")))
    }
}

impl std::fmt::Display for Definiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HermitianReport {
    pub is_hermitian: bool,
    /// Largest `C` with `<y, x> >= C |x|^2` on the graph.
    pub lower_bound: f64,
    /// Smallest `C` with `<y, x> <= C |x|^2` on the graph.
    pub upper_bound: f64,
    pub class: Definiteness,
    /// Eigenvalues of the compression `D^H T̂_s D`, ascending.
    pub compression_eigs: Vec<f64>,
}

fn require_square(t: &LinearRelation) -> Result<()> {
    if t.n() == t.m() {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "expected a relation in X × X, got dimensions {} × {}",
            t.n(),
            t.m()
        )))
    }
}

/// `|X^H Y - Y^H X|_2` over the graph basis; zero exactly when
/// `<y2, x1> = <x2, y1>` for all graph pairs.
pub fn hermitian_residual(t: &LinearRelation) -> Result<f64> {
    require_square(t)?;
    let x = t.x_block();
    let y = t.y_block();
    let form = x.adjoint() * &y;
    Ok(linalg::spectral_norm(&(&form - form.adjoint())))
}

pub fn is_hermitian(t: &LinearRelation) -> Result<bool> {
    Ok(hermitian_residual(t)? <= t.tol())
}

/// Sign classification of the eigenvalues with a dead band of `band`
/// around zero. Values inside the band fall to the semi-definite class.
pub fn classify(eigs: &[f64], band: f64) -> Definiteness {
    let (Some(&lo), Some(&hi)) = (eigs.first(), eigs.last()) else {
        return Definiteness::None;
    };
    if lo > band {
        Definiteness::Positive
    } else if hi < -band {
        Definiteness::Negative
    } else if lo >= -band {
        Definiteness::NonNegative
    } else if hi <= band {
        Definiteness::NonPositive
    } else {
        Definiteness::Indefinite
    }
}

pub fn hermitian_report(t: &LinearRelation) -> Result<HermitianReport> {
    if !is_hermitian(t)? {
        return Err(Error::Precondition("relation is not Hermitian".into()));
    }
    let m = t.induced_hat().compression()?;
    Ok(report_from_compression(&m, t.tol()))
}

pub(crate) fn report_from_compression(m: &CMatrix, tol: f64) -> HermitianReport {
    let (eigs, _) = linalg::hermitian_eigen(m);
    let band = tol * linalg::spectral_norm(m).max(1.0);
    let (lower_bound, upper_bound) = match (eigs.first(), eigs.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0.0, 0.0),
    };
    HermitianReport {
        is_hermitian: true,
        lower_bound,
        upper_bound,
        class: classify(&eigs, band),
        compression_eigs: eigs,
    }
}

const RADIUS_GRID: usize = 64;
const RADIUS_REFINED: usize = 3;
const RADIUS_TOL: f64 = 1e-10;

/// `λ_max((e^{iθ} M + e^{-iθ} M^H) / 2)`.
fn rotated_lambda_max(m: &CMatrix, theta: f64) -> f64 {
    let rotated = m * C64::from_polar(1.0, theta);
    let (eigs, _) = linalg::hermitian_eigen(&rotated);
    eigs.last().copied().unwrap_or(0.0)
}

/// Numerical radius `w(M) = max_θ λ_max(Re(e^{iθ} M))`.
///
/// A 64-point grid in θ locates the best candidates, each of which is then
/// refined by golden-section search on its two neighbouring grid cells
/// until the bracket is narrower than 1e-10.
pub fn numerical_radius(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let step = std::f64::consts::TAU / RADIUS_GRID as f64;
    let grid: Vec<f64> = (0..RADIUS_GRID)
        .map(|k| rotated_lambda_max(m, k as f64 * step))
        .collect();
    let mut order: Vec<usize> = (0..RADIUS_GRID).collect();
    order.sort_by(|&i, &j| grid[j].total_cmp(&grid[i]));
    let mut best = grid[order[0]];
    for &k in order.iter().take(RADIUS_REFINED) {
        let centre = k as f64 * step;
        let refined = golden_max(|th| rotated_lambda_max(m, th), centre - step, centre + step);
        best = best.max(refined);
    }
    best.max(0.0)
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = f1.max(f2);
    while hi - lo > RADIUS_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// `Ĉ(T) = sup { |<x, T̂_s x>| : x ∈ D(T), |x| <= 1 }`.
///
/// Evaluated in complex arithmetic regardless of the field tag, so real
/// relations are treated through their complexification.
pub fn c_constant(t: &LinearRelation) -> Result<f64> {
    require_square(t)?;
    Ok(numerical_radius(&t.induced_hat().compression()?))
}

/// `C̃(T) = sup |<[x], T̃_s x>|`, evaluated in quotient coordinates: with `W`
/// an orthonormal basis of `T(0)^⊥`, `<[x], [y]> = <W^H x, W^H y>`.
pub fn c_constant_tilde(t: &LinearRelation) -> Result<f64> {
    require_square(t)?;
    Ok(numerical_radius(&tilde_compression(&t.induced_tilde())))
}

/// Compression `(W^H D)^H Q` of the quotient operator.
pub(crate) fn tilde_compression(tilde: &InducedOperator) -> CMatrix {
    let coords = tilde
        .quotient_coordinates()
        .expect("quotient variant carries coordinates");
    let w = tilde.mulpart().complement();
    let classes = w.basis().adjoint() * tilde.domain_basis();
    classes.adjoint() * coords
}

/// `C(T)` through the operator part of the orthogonal splitting.
pub fn c_constant_arens(t: &LinearRelation) -> Result<f64> {
    require_square(t)?;
    Ok(numerical_radius(&t.induced_arens().compression()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{real_matrix, real_vector, CVector, Field};
    use crate::subspace::DEFAULT_TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(x: &[f64]) -> CVector {
        real_vector(x)
    }

    fn graph(rows: usize, a: &[f64]) -> LinearRelation {
        LinearRelation::operator_graph(&real_matrix(rows, rows, a), Field::Real, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn hermitian_examples() {
        assert!(is_hermitian(&graph(2, &[2.0, 0.0, 0.0, -3.0])).unwrap());
        let e1 = LinearRelation::new(
            &[(v(&[1.0, 0.0]), v(&[0.0, 1.0])), (v(&[0.0, 0.0]), v(&[1.0, 0.0]))],
            2,
            2,
            Field::Real,
            None,
        )
        .unwrap();
        assert!(!is_hermitian(&e1).unwrap());
        let pure = LinearRelation::new(&[(v(&[0.0, 0.0]), v(&[1.0, 0.0]))], 2, 2, Field::Real, None).unwrap();
        assert!(is_hermitian(&pure).unwrap());
        assert!(pure.domain().is_subspace_of(&pure.mulpart().complement()).unwrap());
        let rect = LinearRelation::zero(2, 3, Field::Real, DEFAULT_TOL);
        assert!(matches!(is_hermitian(&rect), Err(Error::Shape(_))));
    }

    #[test]
    fn report_examples() {
        let r = hermitian_report(&graph(2, &[2.0, 0.0, 0.0, -3.0])).unwrap();
        assert!((r.lower_bound + 3.0).abs() < 1e-12 && (r.upper_bound - 2.0).abs() < 1e-12);
        assert_eq!(r.class, Definiteness::Indefinite);

        let r = hermitian_report(&graph(2, &[1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.class, Definiteness::Positive);
        assert!((r.lower_bound - 1.0).abs() < 1e-12 && (r.upper_bound - 1.0).abs() < 1e-12);

        // T(0) = span{e1}, D(T) = span{e2}, T(e2) = {2 e2} + T(0)
        let t = LinearRelation::new(
            &[
                (v(&[0.0, 1.0, 0.0]), v(&[0.0, 2.0, 0.0])),
                (v(&[0.0, 0.0, 0.0]), v(&[1.0, 0.0, 0.0])),
            ],
            3,
            3,
            Field::Real,
            None,
        )
        .unwrap();
        let r = hermitian_report(&t).unwrap();
        assert!((r.lower_bound - 2.0).abs() < 1e-12 && (r.upper_bound - 2.0).abs() < 1e-12);
        assert_eq!(r.class, Definiteness::Positive);
    }

    #[test]
    fn report_rejects_non_hermitian() {
        let t = graph(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_report(&t), Err(Error::Precondition(_))));
    }

    #[test]
    fn classification_band() {
        assert_eq!(classify(&[0.0, 1.0], 1e-10), Definiteness::NonNegative);
        assert_eq!(classify(&[-1e-12, 1.0], 1e-10), Definiteness::NonNegative);
        assert_eq!(classify(&[-1.0, 1e-12], 1e-10), Definiteness::NonPositive);
        assert_eq!(classify(&[-1.0, -0.5], 1e-10), Definiteness::Negative);
        assert_eq!(classify(&[], 1e-10), Definiteness::None);
    }

    #[test]
    fn nilpotent_shift_radius_is_one_half() {
        let shift = graph(2, &[0.0, 1.0, 0.0, 0.0]);
        let c = c_constant(&shift).unwrap();
        assert!((c - 0.5).abs() < 1e-12, "c = {c}");
    }

    #[test]
    fn hermitian_radius_is_norm() {
        let c = c_constant(&graph(2, &[2.0, 0.0, 0.0, -3.0])).unwrap();
        assert!((c - 3.0).abs() < 1e-10);
        let z = LinearRelation::zero(3, 3, Field::Complex, DEFAULT_TOL);
        assert_eq!(c_constant(&z).unwrap(), 0.0);
    }

    /// Dense θ grid and random unit vectors bracket the refined radius.
    #[test]
    fn radius_against_sampling_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=4 {
            let m = Field::Complex.gaussian_matrix(&mut rng, d, d);
            let w = numerical_radius(&m);
            let dense = (0..20_000)
                .map(|k| rotated_lambda_max(&m, k as f64 * std::f64::consts::TAU / 20_000.0))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(w >= dense - 1e-12 && w - dense < 1e-6, "d={d}: {w} vs {dense}");
            for _ in 0..2000 {
                let x = Field::Complex.gaussian_vector(&mut rng, d).normalize();
                let q = x.dotc(&(&m * &x)).norm();
                assert!(q <= w + 1e-12);
            }
        }
    }
}
