//! Point norms, the relation norm, and the graph norm / inner product.
//!
//! `|T(x)|` is the quotient norm of `[y]` in `Y / T(0)` for any `y ∈ T(x)`,
//! which equals `|T̂_s(x)|`. Both routes are exposed so callers can check one
//! against the other.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{inner, to_pairs, CVector, C64};
use crate::linalg;
use crate::relation::LinearRelation;

#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub relation_norm: f64,
    /// Unit vector of `D(T)` where the norm is attained.
    #[serde(serialize_with = "serialize_opt_vector")]
    pub achieved_at: Option<CVector>,
    /// Singular values of the induced matrix, descending.
    pub sigma_values: Vec<f64>,
    /// Set when `D(T) = {0}`; the norm is then reported as 0.
    pub empty_domain: bool,
}

fn serialize_opt_vector<S: serde::Serializer>(
    v: &Option<CVector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&to_pairs(v)),
        None => s.serialize_none(),
    }
}

/// `|T(x)| = |T̂_s(x)|` for `x ∈ D(T)`.
pub fn point_norm(t: &LinearRelation, x: &CVector) -> Result<f64> {
    Ok(t.induced_hat().apply(x)?.norm())
}

/// `|T(x)|` as the distance `d(y, T(0))` from a representative `y ∈ T(x)`.
pub fn point_norm_from_representative(
    t: &LinearRelation,
    x: &CVector,
    y: &CVector,
) -> Result<f64> {
    if !t.contains_pair(x, y)? {
        return Err(Error::Precondition("(x, y) is not in the relation".into()));
    }
    t.mulpart().distance(y)
}

/// `|T| = sup { |T(x)| : x ∈ D(T), |x| <= 1 }`, exactly the top singular
/// value of the induced matrix because domain coordinates are orthonormal.
pub fn relation_norm(t: &LinearRelation) -> NormReport {
    let hat = t.induced_hat();
    let a = hat.map_matrix();
    if a.ncols() == 0 {
        return NormReport {
            relation_norm: 0.0,
            achieved_at: None,
            sigma_values: Vec::new(),
            empty_domain: true,
        };
    }
    let sigma_values = linalg::singular_values(a);
    let relation_norm = sigma_values.first().copied().unwrap_or(0.0);
    // with m = 0 every domain vector attains the (zero) norm
    let coords = top_right_singular_vector(a).unwrap_or_else(|| {
        let mut e = CVector::zeros(a.ncols());
        e[0] = C64::new(1.0, 0.0);
        e
    });
    NormReport {
        relation_norm,
        achieved_at: Some(hat.domain_basis() * coords),
        sigma_values,
        empty_domain: false,
    }
}

pub(crate) fn top_right_singular_vector(a: &crate::field::CMatrix) -> Option<CVector> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return None;
    }
    Some(crate::linalg::full_svd(a).v.column(0).into_owned())
}

/// `|x|_T = |x| + |T(x)|`.
pub fn graph_norm(t: &LinearRelation, x: &CVector) -> Result<f64> {
    Ok(x.norm() + point_norm(t, x)?)
}

/// `<x1, x2>_T = <x1, x2> + <T̂_s x1, T̂_s x2>`.
pub fn graph_inner(t: &LinearRelation, x1: &CVector, x2: &CVector) -> Result<C64> {
    let hat = t.induced_hat();
    let y1 = hat.apply(x1)?;
    let y2 = hat.apply(x2)?;
    Ok(inner(x1, x2) + inner(&y1, &y2))
}
