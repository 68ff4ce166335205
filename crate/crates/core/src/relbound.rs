//! Relative boundedness: `|S(x)| <= a |x| + b |T(x)|` on `D(T)`.
//!
//! Feasibility of a pair `(a, b)` is decided by maximizing
//! `g(x) = |S(x)| - a - b |T(x)|` over the unit sphere of `D(T)`. The
//! maximization is a multi-start projected gradient ascent seeded from a
//! fixed random sample, so it is deterministic but heuristic. Every report
//! also carries the certified bound `a <= |S restricted to D(T)|`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{to_pairs, CMatrix, CVector, Field, C64};
use crate::linalg;
use crate::norms::top_right_singular_vector;
use crate::relation::LinearRelation;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OptimOptions {
    pub seed: u64,
    pub samples: usize,
    pub starts: usize,
    pub max_iters: usize,
}

impl Default for OptimOptions {
    fn default() -> Self {
        OptimOptions {
            seed: 0x5eed,
            samples: 2000,
            starts: 20,
            max_iters: 200,
        }
    }
}

/// Verdict of [`t_bound_feasible`].
#[derive(Debug, Clone)]
pub struct Feasibility {
    pub feasible: bool,
    /// Largest `g(x)` found; `-inf` on a trivial domain.
    pub max_violation: f64,
    /// Unit vector of `D(T)` where the largest value was found.
    pub witness: Option<CVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundSample {
    pub b: f64,
    /// Heuristic `min { a >= 0 : |S(x)| <= a |x| + b |T(x)| }`.
    pub min_a: f64,
    /// `|S restricted to D(T)|`, always a valid `a`.
    pub certified_a: f64,
    pub witness: Option<Vec<[f64; 2]>>,
}

/// Verdict for one `(a, b)` on both the relation pair and the induced pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairVerdict {
    pub a: f64,
    pub b: f64,
    pub feasible: bool,
    pub induced_feasible: bool,
    pub max_violation: f64,
    pub induced_max_violation: f64,
    pub witness: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelBoundReport {
    pub samples: Vec<BoundSample>,
    pub feasible_pairs: Vec<PairVerdict>,
    pub t_bound_estimate: f64,
    /// Largest difference between the `min_a` curves of `(T, S)` and of the
    /// induced operator pair `(T̂_s, Ŝ_s)`.
    pub induced_pair_discrepancy: f64,
}

impl RelBoundReport {
    pub fn min_a_given_b(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.b, s.min_a)).collect()
    }

    /// True when every checked pair got the same verdict on both pairs.
    pub fn verdicts_agree(&self) -> bool {
        self.feasible_pairs.iter().all(|p| p.feasible == p.induced_feasible)
    }
}

/// `|S(x)|` and `|T(x)|` for `x = D_T c`, as matrices acting on `c`.
struct PairProblem {
    field: Field,
    domain_basis: CMatrix,
    s_map: CMatrix,
    t_map: CMatrix,
    tol: f64,
}

impl PairProblem {
    fn new(t: &LinearRelation, s: &LinearRelation) -> Result<Self> {
        if t.n() != s.n() {
            return Err(Error::DimensionMismatch {
                context: "relative bound: T and S must share X",
                expected: t.n(),
                found: s.n(),
            });
        }
        if t.field() != s.field() {
            return Err(Error::FieldMismatch);
        }
        let t_hat = t.induced_hat();
        let s_hat = s.induced_hat();
        let tol = t.tol().max(s.tol());
        let residual = t_hat.domain().containment_residual(s_hat.domain())?;
        if residual > tol {
            return Err(Error::Precondition(format!(
                "D(T) is not contained in D(S) (residual {residual:.3e})"
            )));
        }
        let d = t_hat.domain_basis().clone();
        let s_map = s_hat.map_matrix() * (s_hat.domain_basis().adjoint() * &d);
        Ok(PairProblem {
            field: t.field(),
            domain_basis: d,
            s_map,
            t_map: t_hat.map_matrix().clone(),
            tol,
        })
    }

    fn dim(&self) -> usize {
        self.domain_basis.ncols()
    }

    fn objective(&self, c: &CVector, a: f64, b: f64) -> f64 {
        (&self.s_map * c).norm() - a - b * (&self.t_map * c).norm()
    }

    fn gradient(&self, c: &CVector, b: f64) -> CVector {
        let mut g = norm_gradient(&self.s_map, c);
        if b != 0.0 {
            g -= norm_gradient(&self.t_map, c) * C64::new(b, 0.0);
        }
        g
    }

    fn certified_a(&self) -> f64 {
        linalg::spectral_norm(&self.s_map)
    }

    /// Sample points in domain coordinates, drawn in the ambient space and
    /// projected, so the draw does not depend on the choice of basis.
    fn sample_points(&self, opts: &OptimOptions) -> Vec<CVector> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let n = self.domain_basis.nrows();
        (0..opts.samples)
            .filter_map(|_| {
                let z = self.field.gaussian_vector(&mut rng, n);
                let c = self.domain_basis.adjoint() * z;
                let norm = c.norm();
                (norm > 1e-12).then(|| c / C64::new(norm, 0.0))
            })
            .collect()
    }

    /// Largest `g` found; `None` on a trivial domain.
    fn maximize(&self, points: &[CVector], a: f64, b: f64, opts: &OptimOptions) -> Option<(f64, CVector)> {
        if self.dim() == 0 {
            return None;
        }
        let mut scored: Vec<(f64, &CVector)> =
            points.iter().map(|c| (self.objective(c, a, b), c)).collect();
        scored.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut starts: Vec<CVector> = scored.iter().take(opts.starts).map(|(_, c)| (*c).clone()).collect();
        if let Some(top) = top_right_singular_vector(&self.s_map) {
            starts.push(top);
        }
        if starts.is_empty() {
            let mut e = CVector::zeros(self.dim());
            e[0] = C64::new(1.0, 0.0);
            starts.push(e);
        }
        starts
            .into_iter()
            .map(|c| self.ascend(c, a, b, opts.max_iters))
            .max_by(|x, y| x.0.total_cmp(&y.0))
    }

    fn ascend(&self, mut c: CVector, a: f64, b: f64, max_iters: usize) -> (f64, CVector) {
        let mut value = self.objective(&c, a, b);
        let mut step = 0.5;
        for _ in 0..max_iters {
            let g = self.gradient(&c, b);
            let radial = c.dotc(&g).re;
            let tangent = g - &c * C64::new(radial, 0.0);
            if tangent.norm() < 1e-13 {
                break;
            }
            let mut improved = false;
            while step > 1e-12 {
                let cand = (&c + &tangent * C64::new(step, 0.0)).normalize();
                let cand_value = self.objective(&cand, a, b);
                if cand_value > value {
                    c = cand;
                    value = cand_value;
                    step = (step * 1.5).min(4.0);
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        (value, c)
    }
}

/// Real gradient of `c ↦ |B c|`: `B^H B c / |B c|`, zero where `B c = 0`.
fn norm_gradient(b: &CMatrix, c: &CVector) -> CVector {
    let bc = b * c;
    let norm = bc.norm();
    if norm < 1e-300 {
        return CVector::zeros(c.len());
    }
    (b.adjoint() * bc) / C64::new(norm, 0.0)
}

/// `|S restricted to D(T)|`, the certified `a` for `b = 0`.
pub fn restricted_norm(t: &LinearRelation, s: &LinearRelation) -> Result<f64> {
    Ok(PairProblem::new(t, s)?.certified_a())
}

/// Decides whether `|S(x)| <= a |x| + b |T(x)|` on `D(T)` within tolerance.
pub fn t_bound_feasible(t: &LinearRelation, s: &LinearRelation, a: f64, b: f64) -> Result<Feasibility> {
    t_bound_feasible_with(t, s, a, b, &OptimOptions::default())
}

pub fn t_bound_feasible_with(
    t: &LinearRelation,
    s: &LinearRelation,
    a: f64,
    b: f64,
    opts: &OptimOptions,
) -> Result<Feasibility> {
    let problem = PairProblem::new(t, s)?;
    let points = problem.sample_points(opts);
    Ok(match problem.maximize(&points, a, b, opts) {
        None => Feasibility {
            feasible: true,
            max_violation: f64::NEG_INFINITY,
            witness: None,
        },
        Some((value, c)) => Feasibility {
            feasible: value <= problem.tol,
            max_violation: value,
            witness: Some(&problem.domain_basis * c),
        },
    })
}

/// Grid of `b` values used by [`rel_bound_report`]: `0, 0.1, ..., 2`.
pub fn b_grid() -> Vec<f64> {
    (0..=20).map(|k| k as f64 / 10.0).collect()
}

fn min_a_curve(problem: &PairProblem, opts: &OptimOptions) -> Vec<BoundSample> {
    let points = problem.sample_points(opts);
    let certified_a = problem.certified_a();
    let mut samples: Vec<BoundSample> = b_grid()
        .into_iter()
        .map(|b| match problem.maximize(&points, 0.0, b, opts) {
            None => BoundSample {
                b,
                min_a: 0.0,
                certified_a,
                witness: None,
            },
            Some((value, c)) => BoundSample {
                b,
                min_a: value.max(0.0),
                certified_a,
                witness: Some(to_pairs(&(&problem.domain_basis * c))),
            },
        })
        .collect();
    // The exact curve is non-increasing in b, so a value found at a larger b
    // is a valid lower bound for every smaller b.
    for k in (0..samples.len().saturating_sub(1)).rev() {
        if samples[k + 1].min_a > samples[k].min_a {
            samples[k].min_a = samples[k + 1].min_a;
            samples[k].witness = samples[k + 1].witness.clone();
        }
    }
    samples
}

/// Samples `min_a_given_b` on [`b_grid`] and estimates the `T`-bound.
pub fn rel_bound_report(t: &LinearRelation, s: &LinearRelation) -> Result<RelBoundReport> {
    rel_bound_report_with(t, s, &OptimOptions::default())
}

pub fn rel_bound_report_with(
    t: &LinearRelation,
    s: &LinearRelation,
    opts: &OptimOptions,
) -> Result<RelBoundReport> {
    let problem = PairProblem::new(t, s)?;
    let samples = min_a_curve(&problem, opts);
    let induced = PairProblem::new(&t.induced_hat().as_relation(), &s.induced_hat().as_relation())?;
    let induced_samples = min_a_curve(&induced, opts);
    let induced_pair_discrepancy = samples
        .iter()
        .zip(&induced_samples)
        .map(|(x, y)| (x.min_a - y.min_a).abs())
        .fold(0.0, f64::max);
    // smallest grid b admitting a finite a; S is always bounded here
    let t_bound_estimate = samples
        .iter()
        .find(|s| s.min_a.is_finite())
        .map(|s| s.b)
        .unwrap_or(f64::INFINITY);
    let feasible_pairs = probe_pairs(&samples)
        .into_iter()
        .map(|(a, b)| {
            let (feasible, violation, witness) = verdict(&problem, a, b, opts);
            let (induced_feasible, induced_violation, _) = verdict(&induced, a, b, opts);
            PairVerdict {
                a,
                b,
                feasible,
                induced_feasible,
                max_violation: violation,
                induced_max_violation: induced_violation,
                witness,
            }
        })
        .collect();
    Ok(RelBoundReport {
        samples,
        feasible_pairs,
        t_bound_estimate,
        induced_pair_discrepancy,
    })
}

/// `(|S|, 0)` plus pairs 5% above and below the sampled curve at `b = 0, 1/2, 1`.
fn probe_pairs(samples: &[BoundSample]) -> Vec<(f64, f64)> {
    let mut pairs = vec![(samples[0].certified_a, 0.0)];
    for s in samples.iter().filter(|s| [0.0, 0.5, 1.0].iter().any(|b| (s.b - b).abs() < 1e-12)) {
        pairs.push((s.min_a * 1.05 + 1e-6, s.b));
        if s.min_a > 1e-4 {
            pairs.push((s.min_a * 0.95, s.b));
        }
    }
    pairs
}

fn verdict(problem: &PairProblem, a: f64, b: f64, opts: &OptimOptions) -> (bool, f64, Option<Vec<[f64; 2]>>) {
    let points = problem.sample_points(opts);
    match problem.maximize(&points, a, b, opts) {
        None => (true, f64::NEG_INFINITY, None),
        Some((value, c)) => (
            value <= problem.tol,
            value,
            Some(to_pairs(&(&problem.domain_basis * c))),
        ),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumInequalityReport {
    pub a: f64,
    pub b: f64,
    pub points: usize,
    /// `max |S(x)| - a - b |T(x)|` over the sampled unit vectors.
    pub bound_residual: f64,
    /// `max |(T+S)(x)| - a - (b+1) |T(x)|`.
    pub upper_residual: f64,
    /// `max |T(x)| - (a + |(T+S)(x)|) / (1 - b)`.
    pub lower_residual: f64,
    /// Equality residual between `(T+S)(0)` and `T(0)`.
    pub mulpart_residual: f64,
    pub witness: Option<Vec<[f64; 2]>>,
}

impl SumInequalityReport {
    pub fn worst(&self) -> f64 {
        self.upper_residual
            .max(self.lower_residual)
            .max(self.mulpart_residual)
    }
}

/// Checks the two-sided estimates for `T + S` under a relative bound
/// `(a, b)` with `b < 1`, and `(T+S)(0) = T(0)`.
///
/// Without a supplied bound the certified pair `(|S restricted to D(T)|, 0)` is used.
pub fn verify_sum_inequalities(
    t: &LinearRelation,
    s: &LinearRelation,
    bound: Option<(f64, f64)>,
    points: usize,
    seed: u64,
) -> Result<SumInequalityReport> {
    if t.m() != s.m() {
        return Err(Error::DimensionMismatch {
            context: "sum inequalities: T and S must share Y",
            expected: t.m(),
            found: s.m(),
        });
    }
    let problem = PairProblem::new(t, s)?;
    let tol = problem.tol;
    let s_mul = s.mulpart();
    let t_mul = t.mulpart();
    let mul_res = s_mul.containment_residual(&t_mul)?;
    if mul_res > tol {
        return Err(Error::Precondition(format!(
            "S(0) is not contained in T(0) (residual {mul_res:.3e})"
        )));
    }
    let (a, b) = match bound {
        Some((a, b)) => {
            if !(0.0..1.0).contains(&b) || a < 0.0 {
                return Err(Error::Precondition(format!(
                    "relative bound needs a >= 0 and 0 <= b < 1, got ({a}, {b})"
                )));
            }
            let verdict = t_bound_feasible(t, s, a, b)?;
            if !verdict.feasible {
                return Err(Error::Precondition(format!(
                    "({a}, {b}) is not a relative bound of S (violation {:.3e})",
                    verdict.max_violation
                )));
            }
            (a, b)
        }
        None => (problem.certified_a(), 0.0),
    };

    let sum = t.sum(s)?;
    let mulpart_residual = sum.mulpart().equality_residual(&t_mul)?;
    let sum_hat = sum.induced_hat();
    let sum_map = sum_hat.map_matrix() * (sum_hat.domain_basis().adjoint() * &problem.domain_basis);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = problem.dim();
    let mut coords: Vec<CVector> = (0..d)
        .map(|j| {
            let mut e = CVector::zeros(d);
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    if d > 0 {
        for _ in 0..points {
            let c = problem.field.gaussian_vector(&mut rng, d);
            let norm = c.norm();
            if norm > 1e-12 {
                coords.push(c / C64::new(norm, 0.0));
            }
        }
    }

    let mut bound_residual = f64::NEG_INFINITY;
    let mut upper_residual = f64::NEG_INFINITY;
    let mut lower_residual = f64::NEG_INFINITY;
    let mut witness = None;
    let mut worst = f64::NEG_INFINITY;
    for c in &coords {
        let nt = (&problem.t_map * c).norm();
        let ns = (&problem.s_map * c).norm();
        let nts = (&sum_map * c).norm();
        let r1 = ns - a - b * nt;
        let r2 = nts - a - (b + 1.0) * nt;
        let r4 = nt - (a + nts) / (1.0 - b);
        bound_residual = bound_residual.max(r1);
        upper_residual = upper_residual.max(r2);
        lower_residual = lower_residual.max(r4);
        if r2.max(r4) > worst {
            worst = r2.max(r4);
            witness = Some(to_pairs(&(&problem.domain_basis * c)));
        }
    }
    if coords.is_empty() {
        bound_residual = 0.0;
        upper_residual = 0.0;
        lower_residual = 0.0;
    }
    Ok(SumInequalityReport {
        a,
        b,
        points: coords.len(),
        bound_residual,
        upper_residual,
        lower_residual,
        mulpart_residual,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::real_matrix;
    use crate::subspace::DEFAULT_TOL;

    fn graph(a: &[f64]) -> LinearRelation {
        LinearRelation::operator_graph(&real_matrix(2, 2, a), Field::Real, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let t = graph(&[2.0, 0.0, 0.0, -3.0]);
        let s = graph(&[1.0, 0.0, 0.0, 1.0]);
        assert!(t_bound_feasible(&t, &s, 0.0, 0.5).unwrap().feasible);
        let bad = t_bound_feasible(&t, &s, 0.0, 0.1).unwrap();
        assert!(!bad.feasible);
        // worst direction is the eigenvector with the smaller |eigenvalue|
        let w = bad.witness.unwrap();
        assert!((w[0].norm() - 1.0).abs() < 1e-6);
        assert!(t_bound_feasible(&t, &s, 1.0, 0.0).unwrap().feasible);
    }

    #[test]
    fn domain_containment_is_required() {
        let t = graph(&[1.0, 0.0, 0.0, 1.0]);
        let s = LinearRelation::new(
            &[(crate::field::real_vector(&[1.0, 0.0]), crate::field::real_vector(&[0.0, 0.0]))],
            2,
            2,
            Field::Real,
            None,
        )
        .unwrap();
        assert!(matches!(t_bound_feasible(&t, &s, 1.0, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_examples() {
        let t = graph(&[2.0, 0.0, 0.0, -3.0]);
        let s = graph(&[1.0, 0.0, 0.0, 1.0]);
        let r = rel_bound_report(&t, &s).unwrap();
        assert_eq!(r.t_bound_estimate, 0.0);
        assert!((r.samples[0].min_a - 1.0).abs() < 1e-10);
        let half = r.samples.iter().find(|x| (x.b - 0.5).abs() < 1e-12).unwrap();
        assert!(half.min_a.abs() < 1e-10);
        for w in r.samples.windows(2) {
            assert!(w[1].min_a <= w[0].min_a);
        }
        assert!(r.induced_pair_discrepancy < 1e-10);
    }

    #[test]
    fn sum_inequality_example() {
        let t = graph(&[2.0, 0.0, 0.0, -3.0]);
        let s = graph(&[0.5, 0.0, 0.0, 0.5]);
        let r = verify_sum_inequalities(&t, &s, Some((0.0, 0.25)), 200, 1).unwrap();
        assert!(r.upper_residual <= 1e-12, "{}", r.upper_residual);
        assert!(r.lower_residual <= 1e-12, "{}", r.lower_residual);
        assert!(r.mulpart_residual <= 1e-12);
    }

    #[test]
    fn sum_inequality_preconditions() {
        let t = graph(&[2.0, 0.0, 0.0, -3.0]);
        let s = graph(&[0.5, 0.0, 0.0, 0.5]);
        assert!(matches!(
            verify_sum_inequalities(&t, &s, Some((0.0, 1.0)), 10, 1),
            Err(Error::Precondition(_))
        ));
        let multi = LinearRelation::from_parts(
            &real_matrix(2, 2, &[1.0, 0.0, 0.0, 1.0]),
            &real_matrix(2, 2, &[0.0; 4]),
            &real_matrix(2, 1, &[1.0, 0.0]),
            Field::Real,
            DEFAULT_TOL,
        );
        // multi has D = {0}? no: the generators (e_j, 0) and (0, e1) give D = K^2, S(0) = span{e1}
        let multi = multi.unwrap();
        assert!(matches!(
            verify_sum_inequalities(&t, &multi, None, 10, 1),
            Err(Error::Precondition(_))
        ));
    }
}
