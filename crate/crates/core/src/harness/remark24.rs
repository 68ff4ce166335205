//! Truncations of the diagonal operator `x ↦ (n x(n))` on `ℓ²` to `C^N`.
//!
//! With `T_N = diag(1, …, N)`, `S1_N = C^N × C^N` and
//! `S2_N(x) = {x} + span{e1}`, the norms are `(N, 0, 1, 0, N - 1)`: the
//! differences stay bounded for `S1` and grow without bound for `S2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CMatrix, Field, C64};
use crate::norms::relation_norm;
use crate::relation::LinearRelation;
use crate::subspace::{Subspace, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Remark24Row {
    pub n: usize,
    pub t_norm: f64,
    pub s1_norm: f64,
    pub s2_norm: f64,
    pub s1_minus_t_norm: f64,
    pub s2_minus_t_norm: f64,
}

impl Remark24Row {
    pub fn values(&self) -> [f64; 5] {
        [self.t_norm, self.s1_norm, self.s2_norm, self.s1_minus_t_norm, self.s2_minus_t_norm]
    }
}

pub fn remark24_row(n: usize) -> Result<Remark24Row> {
    if n < 2 {
        return Err(Error::Precondition(format!("truncation order must be at least 2, got {n}")));
    }
    let field = Field::Complex;
    let diag = CMatrix::from_fn(n, n, |i, j| if i == j { C64::new((i + 1) as f64, 0.0) } else { C64::new(0.0, 0.0) });
    let t = LinearRelation::operator_graph(&diag, field, DEFAULT_TOL)?;
    let s1 = LinearRelation::from_graph(Subspace::full(2 * n, DEFAULT_TOL), n, n, field)?;
    let mut e1 = CMatrix::zeros(n, 1);
    e1[(0, 0)] = C64::new(1.0, 0.0);
    let identity = CMatrix::identity(n, n);
    let s2 = LinearRelation::from_parts(&identity, &identity, &e1, field, DEFAULT_TOL)?;
    let norm = |r: &LinearRelation| relation_norm(r).relation_norm;
    Ok(Remark24Row {
        n,
        t_norm: norm(&t),
        s1_norm: norm(&s1),
        s2_norm: norm(&s2),
        s1_minus_t_norm: norm(&s1.difference(&t)?),
        s2_minus_t_norm: norm(&s2.difference(&t)?),
    })
}

/// One row per truncation order.
pub fn remark24_demo(orders: &[usize]) -> Result<Vec<Remark24Row>> {
    orders.iter().map(|&n| remark24_row(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_match_closed_form() {
        for n in [2, 4, 16] {
            let row = remark24_row(n).unwrap();
            let expected = [n as f64, 0.0, 1.0, 0.0, n as f64 - 1.0];
            for (got, want) in row.values().into_iter().zip(expected) {
                assert!((got - want).abs() <= 1e-9, "N = {n}: {got} vs {want}");
            }
        }
        assert!(remark24_row(1).is_err());
    }
}
