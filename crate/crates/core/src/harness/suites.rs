//! Trial instances and the checks run on them.
//!
//! An [`Instance`] holds everything a trial needs: the generated relations
//! and a few scalar parameters. [`evaluate`] only reads the instance, so a
//! serialized instance reproduces its checks exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gen::{gen_pair, gen_relation, GenOptions, Nesting};
use super::remark24::remark24_row;
use super::SuiteId;
use crate::error::{Error, Result};
use crate::field::{inner, real_matrix, to_pairs, CMatrix, CVector, Field, C64};
use crate::hermitian::{
    c_constant, c_constant_arens, c_constant_tilde, hermitian_report, hermitian_residual, Definiteness,
};
use crate::linalg;
use crate::norms::relation_norm;
use crate::relation::{InducedOperator, LinearRelation};
use crate::relbound::{rel_bound_report, restricted_norm, t_bound_feasible, verify_sum_inequalities};
use crate::subspace::{Subspace, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Signed violation; the check passes iff `residual <= tolerance`.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub suite: SuiteId,
    pub n: usize,
    pub m: usize,
    pub field: Field,
    pub trial: usize,
    pub seed: u64,
    pub relations: Vec<(String, LinearRelation)>,
    pub params: Vec<(String, f64)>,
}

impl Instance {
    fn relation(&self, name: &str) -> Result<&LinearRelation> {
        self.relations
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::Parse(format!("instance has no relation '{name}'")))
    }

    fn param(&self, name: &str) -> Result<f64> {
        self.params
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("instance has no parameter '{name}'")))
    }

    /// Generator for the sampling done while checking, independent of the
    /// one that built the relations.
    fn check_rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1);
        rng
    }
}

const CLASSES: [Definiteness; 5] = [
    Definiteness::Positive,
    Definiteness::Negative,
    Definiteness::NonNegative,
    Definiteness::NonPositive,
    Definiteness::Indefinite,
];

/// Random trial `trial` of `suite` on `K^n × K^m`.
pub fn generate(suite: SuiteId, n: usize, m: usize, field: Field, trial: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let tol = DEFAULT_TOL;
    let (m, field) = match suite {
        SuiteId::NumericalRadius => (n, Field::Complex),
        s if s.square() => (n, field),
        _ => (m, field),
    };
    let mut relations = Vec::new();
    let mut params = Vec::new();
    match suite {
        SuiteId::OrthogonalSplit | SuiteId::InducedNorms => {
            relations.push(("T".into(), gen_relation(rng, n, m, field, &GenOptions::default(), tol)?));
        }
        SuiteId::NormLaws => {
            let (t, s) = gen_pair(rng, n, m, field, Nesting::Contains, Nesting::Free, tol)?;
            relations.push(("T".into(), t));
            relations.push(("S".into(), s));
            let alpha = field.gaussian(rng);
            params.push(("alpha_re".into(), alpha.re));
            params.push(("alpha_im".into(), alpha.im));
        }
        SuiteId::SumDecomposition => {
            let (t, s) = gen_pair(rng, n, m, field, Nesting::Inside, Nesting::Contains, tol)?;
            let break_domain = trial % 2 == 0;
            let (bt, bs) = if break_domain {
                gen_pair(rng, n, m, field, Nesting::NotInside, Nesting::Contains, tol)?
            } else {
                gen_pair(rng, n, m, field, Nesting::Inside, Nesting::NotContaining, tol)?
            };
            relations.extend([("T".into(), t), ("S".into(), s), ("T_broken".into(), bt), ("S_broken".into(), bs)]);
            params.push(("broken_domain".into(), if break_domain { 1.0 } else { 0.0 }));
        }
        SuiteId::DifferenceBounds => {
            let (t, s) = gen_pair(rng, n, m, field, Nesting::Inside, Nesting::Contains, tol)?;
            relations.extend([("T".into(), t), ("S".into(), s)]);
        }
        SuiteId::HermitianStructure => {
            let opts = GenOptions {
                hermitian: true,
                ..GenOptions::default()
            };
            relations.push(("T".into(), gen_relation(rng, n, n, field, &opts, tol)?));
        }
        SuiteId::NumericalRadius => {
            let opts = GenOptions {
                dim_domain: Some(n),
                ..GenOptions::default()
            };
            relations.push(("T".into(), gen_relation(rng, n, n, field, &opts, tol)?));
        }
        SuiteId::HermitianBounds => {
            let classes = if n >= 2 { 5 } else { 4 };
            let class = trial % classes;
            let d = rng.random_range(n.min(2)..=n);
            let opts = GenOptions {
                hermitian: true,
                dim_domain: Some(d),
                definiteness: Some(CLASSES[class]),
                ..GenOptions::default()
            };
            relations.push(("T".into(), gen_relation(rng, n, n, field, &opts, tol)?));
            params.push(("class".into(), class as f64));
        }
        SuiteId::HermitianNorm => {
            let opts = GenOptions {
                hermitian: true,
                ..GenOptions::default()
            };
            let t = gen_relation(rng, n, n, field, &opts, tol)?;
            let leaky = gen_relation(rng, n, n, field, &GenOptions { leak: true, ..opts }, tol)?;
            relations.extend([("T".into(), t), ("T_leak".into(), leaky)]);
        }
        SuiteId::InducedRelBound | SuiteId::BoundedPerturbation => {
            let (t, s) = gen_pair(rng, n, m, field, Nesting::Contains, Nesting::Free, tol)?;
            relations.extend([("T".into(), t), ("S".into(), s)]);
        }
        SuiteId::SumEstimates => {
            let (t, s) = gen_pair(rng, n, m, field, Nesting::Contains, Nesting::Inside, tol)?;
            let b = rng.random_range(0.0..0.9);
            let a = restricted_norm(&t, &s)?;
            relations.extend([("T".into(), t), ("S".into(), s)]);
            params.extend([("a".into(), a), ("b".into(), b)]);
        }
        SuiteId::TruncatedShift => {
            return Err(Error::Precondition("the truncated example has fixed instances only".into()));
        }
    }
    Ok(Instance {
        suite,
        n,
        m,
        field,
        trial,
        seed,
        relations,
        params,
    })
}

/// Fixed instances run ahead of the random trials.
pub fn fixtures(suite: SuiteId) -> Vec<Instance> {
    let base = |params: Vec<(String, f64)>, relations: Vec<(String, LinearRelation)>, n: usize| Instance {
        suite,
        n,
        m: n,
        field: Field::Complex,
        trial: 0,
        seed: 0,
        relations,
        params,
    };
    match suite {
        SuiteId::NumericalRadius => {
            let shift = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
            let t = LinearRelation::operator_graph(&shift, Field::Complex, DEFAULT_TOL).expect("2x2 graph");
            vec![base(vec![("fixture".into(), 1.0)], vec![("T".into(), t)], 2)]
        }
        SuiteId::TruncatedShift => [2usize, 4, 16, 64]
            .into_iter()
            .map(|n| base(vec![("N".into(), n as f64)], Vec::new(), n))
            .collect(),
        _ => Vec::new(),
    }
}

struct Recorder {
    tol: f64,
    out: Vec<CheckOutcome>,
}

fn sanitize(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        f64::MAX
    } else if x == f64::NEG_INFINITY {
        0.0
    } else {
        x
    }
}

impl Recorder {
    /// Passes iff `residual <= factor · tol`.
    fn check(&mut self, name: &str, residual: f64, factor: f64, witness: Option<&CVector>) {
        let residual = sanitize(residual);
        let tolerance = factor * self.tol;
        self.out.push(CheckOutcome {
            name: name.to_owned(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            witness: witness.map(to_pairs),
        });
    }

    /// A check that must fail: passes iff `gap > tol`.
    fn must_differ(&mut self, name: &str, gap: f64) {
        let residual = sanitize(self.tol - gap);
        self.out.push(CheckOutcome {
            name: name.to_owned(),
            residual,
            tolerance: 0.0,
            passed: residual < 0.0,
            witness: None,
        });
    }

    fn result(&mut self, name: &str, value: Result<f64>, factor: f64) {
        self.check(name, value.unwrap_or(f64::MAX), factor, None);
    }
}

/// Running maximum with the argument that produced it.
struct Worst {
    value: f64,
    at: Option<CVector>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: f64::NEG_INFINITY,
            at: None,
        }
    }

    fn see(&mut self, value: f64, at: &CVector) {
        if value > self.value || value.is_nan() {
            self.value = if value.is_nan() { f64::INFINITY } else { value };
            self.at = Some(at.clone());
        }
    }

    fn record(&self, rec: &mut Recorder, name: &str, factor: f64) {
        rec.check(name, self.value, factor, self.at.as_ref());
    }
}

fn sample_in<R: Rng + ?Sized>(rng: &mut R, field: Field, basis: &CMatrix) -> CVector {
    basis * field.gaussian_vector(rng, basis.ncols())
}

fn unit_in<R: Rng + ?Sized>(rng: &mut R, field: Field, basis: &CMatrix) -> Option<CVector> {
    let v = sample_in(rng, field, basis);
    let norm = v.norm();
    (norm > 1e-12).then(|| v / C64::new(norm, 0.0))
}

/// A unit-norm element `(x, y)` of the graph.
fn graph_element<R: Rng + ?Sized>(rng: &mut R, t: &LinearRelation) -> Option<(CVector, CVector)> {
    let v = unit_in(rng, t.field(), t.graph().basis())?;
    Some((v.rows(0, t.n()).into_owned(), v.rows(t.n(), t.m()).into_owned()))
}

/// `|T(x)|` along the quotient route: distance of a representative to `T(0)`.
fn quotient_norm(t: &LinearRelation, mulpart: &Subspace, x: &CVector) -> Result<f64> {
    mulpart.distance(&t.any_representative(x)?)
}

fn norm_of(t: &LinearRelation) -> f64 {
    relation_norm(t).relation_norm
}

const POINTS: usize = 10;

/// Runs every check of the instance's suite.
pub fn evaluate(inst: &Instance, tol: f64) -> Result<Vec<CheckOutcome>> {
    let mut rec = Recorder { tol, out: Vec::new() };
    let mut rng = inst.check_rng();
    let rng = &mut rng;
    let field = inst.field;
    match inst.suite {
        SuiteId::OrthogonalSplit => {
            let t = inst.relation("T")?;
            let parts = t.arens_decompose();
            let (ts, tinf) = (&parts.operator_part, &parts.multivalued_part);
            rec.result(
                "reconstruction T = T_s ∔ T_inf",
                ts.dotted_sum(tinf).and_then(|r| r.equality_residual(t)),
                1.0,
            );
            rec.result("orthogonality T_s ⊥ T_inf", ts.orthogonality_residual(tinf), 1.0);
            rec.result("D(T_s) = D(T)", ts.domain().equality_residual(&t.domain()), 1.0);
            rec.result("R(T_s) ⊥ T(0)", ts.range().orthogonality_residual(&t.mulpart()), 1.0);
            rec.check("T_s single-valued", ts.mulpart().dim() as f64, 1.0, None);
            rec.result("T_s ⊆ T", ts.graph().containment_residual(t.graph()), 1.0);
            // {0} × Y cut out of the graph, independent of the multivalued part
            let vertical = Subspace::from_columns(
                &linalg::vstack(&CMatrix::zeros(t.n(), t.m()), &CMatrix::identity(t.m(), t.m())),
                DEFAULT_TOL,
            );
            rec.result(
                "T_inf = {0} × T(0)",
                t.graph().intersect(&vertical).and_then(|cap| cap.equality_residual(tinf.graph())),
                1.0,
            );
        }
        SuiteId::InducedNorms => {
            let t = inst.relation("T")?;
            let hat = t.induced_hat();
            let tilde = t.induced_tilde();
            let arens = t.induced_arens();
            let parts = t.arens_decompose();
            let mulpart = t.mulpart();
            rec.result("T_s = T̂_s", hat.as_relation().equality_residual(&parts.operator_part), 1e-2);
            rec.result(
                "T̂_s = lifted T̃_s",
                tilde.as_relation().equality_residual(&hat.as_relation()),
                1e-2,
            );
            let perp = mulpart.complement();
            let mut iso = Worst::new();
            let mut point = Worst::new();
            for _ in 0..POINTS {
                if let Some(y) = unit_in(rng, field, perp.basis()) {
                    iso.see((mulpart.distance(&y)? - y.norm()).abs(), &y);
                }
                if let Some(x) = unit_in(rng, field, hat.domain_basis()) {
                    let q = quotient_norm(t, &mulpart, &x)?;
                    let coords = tilde.quotient_coordinates().expect("quotient coordinates") * tilde.coordinates(&x)?;
                    let dev = (hat.apply(&x)?.norm() - q)
                        .abs()
                        .max((arens.apply(&x)?.norm() - q).abs())
                        .max((coords.norm() - q).abs());
                    point.see(dev, &x);
                }
            }
            iso.record(&mut rec, "quotient isometry on T(0)^⊥", 1e-2);
            point.record(&mut rec, "|T̂_s(x)| = |T(x)| = |T_s(x)|", 1e-2);
            let report = relation_norm(t);
            let norm = report.relation_norm;
            let spread = (hat.norm() - norm)
                .abs()
                .max((tilde.norm() - norm).abs())
                .max((arens.norm() - norm).abs());
            rec.check("|T_s| = |T̂_s| = |T̃_s| = |T|", spread, 1e-2, None);
            let attained = match &report.achieved_at {
                Some(x) => (quotient_norm(t, &mulpart, x)? - norm).abs(),
                None => 0.0,
            };
            rec.check("|T| attained on the quotient route", attained, 1e-2, report.achieved_at.as_ref());
        }
        SuiteId::NormLaws => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let alpha = C64::new(inst.param("alpha_re")?, inst.param("alpha_im")?);
            let hat = t.induced_hat();
            let mulpart = t.mulpart();
            let scaled = t.scalar_mul(alpha)?;
            let scaled_hat = scaled.induced_hat();
            let sum = s.sum(t)?;
            let sum_hat = sum.induced_hat();
            let s_hat = s.induced_hat();
            let t_norm = norm_of(t);
            let mut reps = Worst::new();
            let mut scal = Worst::new();
            let mut tri = Worst::new();
            let mut bound = Worst::new();
            for _ in 0..POINTS {
                let Some(x) = unit_in(rng, field, hat.domain_basis()) else { break };
                let x = x * C64::new(rng.random_range(0.5..3.0), 0.0);
                let p = hat.apply(&x)?.norm();
                let y0 = t.any_representative(&x)?;
                for _ in 0..10 {
                    let shift = sample_in(rng, field, mulpart.basis()) * C64::new(3.0, 0.0);
                    let y = &y0 + shift;
                    reps.see((mulpart.distance(&y)? - p).abs(), &x);
                }
                scal.see((scaled_hat.apply(&x)?.norm() - alpha.norm() * p).abs(), &x);
                tri.see(sum_hat.apply(&x)?.norm() - s_hat.apply(&x)?.norm() - p, &x);
                bound.see(p - t_norm * x.norm(), &x);
            }
            reps.record(&mut rec, "|T(x)| = d(y, T(0)) for every y ∈ T(x)", 1.0);
            scal.record(&mut rec, "|(αT)(x)| = |α| |T(x)|", 1.0);
            tri.record(&mut rec, "|(S+T)(x)| <= |S(x)| + |T(x)|", 1.0);
            bound.record(&mut rec, "|T(x)| <= |T| |x|", 1.0);
            let mut sup = Worst::new();
            for _ in 0..200 {
                let Some(x) = unit_in(rng, field, hat.domain_basis()) else { break };
                sup.see(quotient_norm(t, &mulpart, &x)? - t_norm, &x);
            }
            sup.record(&mut rec, "|T(x)| <= |T| on the unit ball", 1.0);
            let attained = match relation_norm(t).achieved_at {
                Some(x) => (quotient_norm(t, &mulpart, &x)? - t_norm).abs(),
                None => 0.0,
            };
            rec.check("|T| = sup |T(x)|", attained, 1.0, None);
            rec.check("|αT| = |α| |T|", (norm_of(&scaled) - alpha.norm() * t_norm).abs(), 1.0, None);
            rec.check("|S+T| <= |S| + |T|", norm_of(&sum) - norm_of(s) - t_norm, 1.0, None);
        }
        SuiteId::SumDecomposition => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let rebuilt = s.difference(t)?.sum(t)?;
            rec.result("S = (S - T) + T under the hypotheses", rebuilt.equality_residual(s), 1.0);
            let bt = inst.relation("T_broken")?;
            let bs = inst.relation("S_broken")?;
            let broken = if inst.param("broken_domain")? > 0.5 {
                "S ≠ (S - T) + T when D(S) ⊄ D(T)"
            } else {
                "S ≠ (S - T) + T when T(0) ⊄ S(0)"
            };
            let gap = bs.difference(bt)?.sum(bt)?.equality_residual(bs)?;
            rec.must_differ(broken, gap);
        }
        SuiteId::DifferenceBounds => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let diff = s.difference(t)?;
            let (s_mul, t_mul) = (s.mulpart(), t.mulpart());
            let (s_hat, t_hat, d_hat) = (s.induced_hat(), t.induced_hat(), diff.induced_hat());
            rec.result("(S - T)(0) = S(0)", diff.mulpart().equality_residual(&s_mul), 1.0);
            let mut lower = Worst::new();
            let mut chain_eq = Worst::new();
            let mut chain_le = Worst::new();
            for _ in 0..POINTS {
                let Some(x) = unit_in(rng, field, s_hat.domain_basis()) else { break };
                let (ns, nt, nd) = (s_hat.apply(&x)?.norm(), t_hat.apply(&x)?.norm(), d_hat.apply(&x)?.norm());
                lower.see(ns - nt - nd, &x);
                let y1 = s.any_representative(&x)?;
                let y2 = t.any_representative(&x)?;
                chain_eq.see((nd - s_mul.distance(&(&y1 - &y2))?).abs(), &x);
                chain_le.see(s_mul.distance(&y2)? - t_mul.distance(&y2)?, &x);
            }
            lower.record(&mut rec, "|(S - T)(x)| >= |S(x)| - |T(x)|", 1.0);
            chain_eq.record(&mut rec, "|(S - T)(x)| = d(y1 - y2, S(0))", 1.0);
            chain_le.record(&mut rec, "d(y2, S(0)) <= d(y2, T(0))", 1.0);
            rec.check("|S - T| >= |S| - |T|", norm_of(s) - norm_of(t) - norm_of(&diff), 1.0, None);
        }
        SuiteId::HermitianStructure => {
            let t = inst.relation("T")?;
            rec.result("Hermitian", hermitian_residual(t), 1.0);
            let (domain, mulpart) = (t.domain(), t.mulpart());
            rec.result("D(T) ⊥ T(0)", domain.orthogonality_residual(&mulpart), 1.0);
            let dense = if domain.dim() == t.n() { mulpart.dim() as f64 } else { 0.0 };
            rec.check("dense domain forces T(0) = {0}", dense, 1.0, None);
            let hat = t.induced_hat();
            let tilde = t.induced_tilde();
            let w = mulpart.complement();
            let tilde_form = |x2: &CVector, x1: &CVector| -> Result<C64> {
                let image = tilde.quotient_coordinates().expect("quotient coordinates") * tilde.coordinates(x2)?;
                Ok(inner(&image, &(w.basis().adjoint() * x1)))
            };
            let mut first = Worst::new();
            let mut second = Worst::new();
            for _ in 0..POINTS {
                let (Some((x1, y1)), Some((x2, y2))) = (graph_element(rng, t), graph_element(rng, t)) else { break };
                let direct = inner(&y2, &x1);
                let hat_form = inner(&hat.apply(&x2)?, &x1);
                let quotient = tilde_form(&x2, &x1)?;
                first.see((hat_form - direct).norm().max((quotient - direct).norm()), &x2);
                let hat_swapped = inner(&x2, &hat.apply(&x1)?);
                let quotient_swapped = inner(&(w.basis().adjoint() * &x2), &{
                    tilde.quotient_coordinates().expect("quotient coordinates") * tilde.coordinates(&x1)?
                });
                second.see(
                    (hat_form - hat_swapped)
                        .norm()
                        .max((quotient - quotient_swapped).norm())
                        .max((inner(&x2, &y1) - direct).norm()),
                    &x2,
                );
            }
            first.record(&mut rec, "<T̃x2, [x1]> = <T̂x2, x1> = <y2, x1>", 1.0);
            second.record(&mut rec, "<T̂x2, x1> = <x2, T̂x1>", 1.0);
            let hat_c = c_constant(t)?;
            rec.check("C̃(T) = Ĉ(T)", (c_constant_tilde(t)? - hat_c).abs(), 1e-2, None);
            rec.check("C(T) = Ĉ(T)", (c_constant_arens(t)? - hat_c).abs(), 1e-2, None);
        }
        SuiteId::NumericalRadius => {
            let t = inst.relation("T")?;
            let c = c_constant(t)?;
            let norm = norm_of(t);
            if inst.params.iter().any(|(k, _)| k == "fixture") {
                rec.check("|T| = 2 Ĉ(T)", (norm - 2.0 * c).abs(), 1.0, None);
                rec.check("|T| = 1", (norm - 1.0).abs(), 1e-2, None);
                rec.check("Ĉ(T) = 1/2", (c - 0.5).abs(), 1.0, None);
                let m = t.induced_hat().compression()?;
                let mut sampled: f64 = 0.0;
                for _ in 0..100_000 {
                    let x = Field::Complex.gaussian_vector(rng, m.ncols()).normalize();
                    sampled = sampled.max(inner(&(&m * &x), &x).norm());
                }
                rec.check("Ĉ(T) matches random unit vectors", (c - sampled).abs(), 1e4, None);
            } else {
                rec.check("|T| <= 2 Ĉ(T)", norm - 2.0 * c, 1e2, None);
                rec.check("Ĉ(T) <= |T|", c - norm, 1.0, None);
            }
        }
        SuiteId::HermitianBounds => {
            let t = inst.relation("T")?;
            let expected = CLASSES[inst.param("class")? as usize];
            let report = hermitian_report(t)?;
            rec.check(
                &format!("class {} realized", expected.as_str()),
                if report.class == expected { 0.0 } else { 1.0 },
                1.0,
                None,
            );
            rec.check("lower <= upper", report.lower_bound - report.upper_bound, 1.0, None);
            let hat = t.induced_hat();
            let tilde = t.induced_tilde();
            let arens = t.induced_arens();
            let w = t.mulpart().complement();
            let mut below = Worst::new();
            let mut forms = Worst::new();
            for _ in 0..200 {
                let Some(x) = unit_in(rng, field, hat.domain_basis()) else { break };
                let q = inner(&t.any_representative(&x)?, &x);
                below.see((report.lower_bound - q.re).max(q.re - report.upper_bound), &x);
                let quotient = inner(
                    &(tilde.quotient_coordinates().expect("quotient coordinates") * tilde.coordinates(&x)?),
                    &(w.basis().adjoint() * &x),
                );
                let dev = (inner(&hat.apply(&x)?, &x) - q)
                    .norm()
                    .max((quotient - q).norm())
                    .max((inner(&arens.apply(&x)?, &x) - q).norm())
                    .max(q.im.abs());
                forms.see(dev, &x);
            }
            below.record(&mut rec, "lower |x|^2 <= <y, x> <= upper |x|^2", 1.0);
            forms.record(&mut rec, "<T̃x, [x]> = <T̂x, x> = <T_s x, x> = <y, x>", 1.0);
            // the bounds are attained at the extreme eigenvectors of the compression
            let (eigs, vecs) = linalg::hermitian_eigen(&hat.compression()?);
            let mut attained = 0.0_f64;
            if let (Some(&lo), Some(&hi)) = (eigs.first(), eigs.last()) {
                for (col, target) in [(0, lo), (eigs.len() - 1, hi)] {
                    let x = hat.domain_basis() * vecs.column(col);
                    let q = inner(&t.any_representative(&x)?, &x).re;
                    attained = attained.max((q - target).abs());
                }
            }
            rec.check("bounds attained", attained, 1.0, None);
            let same = |op: &InducedOperator| -> Result<f64> {
                let r = hermitian_report(&op.as_relation())?;
                let class_gap = if r.class == report.class { 0.0 } else { 1.0 };
                Ok((r.lower_bound - report.lower_bound)
                    .abs()
                    .max((r.upper_bound - report.upper_bound).abs())
                    .max(class_gap))
            };
            rec.result("T̂_s has the same bounds and class", same(&hat), 1.0);
            rec.result("T_s has the same bounds and class", same(&arens), 1.0);
        }
        SuiteId::HermitianNorm => {
            let t = inst.relation("T")?;
            let report = hermitian_report(t)?;
            let extreme = report.lower_bound.abs().max(report.upper_bound.abs());
            let norm = norm_of(t);
            rec.check("|T| = max(|lower|, |upper|)", (norm - extreme).abs(), 1.0, None);
            let leaky = inst.relation("T_leak")?;
            let leak_report = hermitian_report(leaky)?;
            let leak_extreme = leak_report.lower_bound.abs().max(leak_report.upper_bound.abs());
            rec.check("bounded implies semibounded: max |bound| <= |T|", leak_extreme - norm_of(leaky), 1.0, None);
        }
        SuiteId::InducedRelBound => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let report = rel_bound_report(t, s)?;
            let disagreements = report.feasible_pairs.iter().filter(|p| p.feasible != p.induced_feasible).count();
            let witness = report
                .feasible_pairs
                .iter()
                .find(|p| p.feasible != p.induced_feasible)
                .and_then(|p| p.witness.as_ref())
                .map(|w| crate::field::from_pairs(w));
            rec.check("(a, b) verdicts agree on the induced pair", disagreements as f64, 1.0, witness.as_ref());
            let certified = &report.feasible_pairs[0];
            rec.check(
                "(|S|, 0) feasible for both pairs",
                if certified.feasible && certified.induced_feasible { 0.0 } else { 1.0 },
                1.0,
                None,
            );
        }
        SuiteId::BoundedPerturbation => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let report = rel_bound_report(t, s)?;
            rec.check("T-bound estimate is 0", report.t_bound_estimate, 1.0, None);
            let s_norm = norm_of(s);
            let verdict = t_bound_feasible(t, s, s_norm, 0.0)?;
            rec.check(
                "(|S|, 0) is a relative bound",
                verdict.max_violation,
                1.0,
                verdict.witness.as_ref(),
            );
            let curve = report.samples.iter().map(|p| p.min_a).fold(f64::NEG_INFINITY, f64::max);
            rec.check("min a(b) <= |S| for every b", curve - s_norm, 1.0, None);
        }
        SuiteId::SumEstimates => {
            let t = inst.relation("T")?;
            let s = inst.relation("S")?;
            let (a, b) = (inst.param("a")?, inst.param("b")?);
            let r = verify_sum_inequalities(t, s, Some((a, b)), 200, inst.seed)?;
            let witness = r.witness.as_ref().map(|w| crate::field::from_pairs(w));
            rec.check("|S(x)| <= a|x| + b|T(x)|", r.bound_residual, 1.0, None);
            rec.check("|(T+S)(x)| <= a|x| + (b+1)|T(x)|", r.upper_residual, 1.0, witness.as_ref());
            rec.check("(T+S)(0) = T(0)", r.mulpart_residual, 1.0, None);
            rec.check("|T(x)| <= (a|x| + |(T+S)(x)|) / (1-b)", r.lower_residual, 1.0, witness.as_ref());
        }
        SuiteId::TruncatedShift => {
            let n = inst.param("N")? as usize;
            let row = remark24_row(n)?;
            let expected = [n as f64, 0.0, 1.0, 0.0, n as f64 - 1.0];
            let names = ["|T_N| = N", "|S1_N| = 0", "|S2_N| = 1", "|S1_N - T_N| = 0", "|S2_N - T_N| = N - 1"];
            for ((name, got), want) in names.iter().zip(row.values()).zip(expected) {
                rec.check(name, (got - want).abs(), 1e-1, None);
            }
        }
    }
    Ok(rec.out)
}
