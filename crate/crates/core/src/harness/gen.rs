//! Random relations with prescribed structure, built by construction.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{CMatrix, Field, C64};
use crate::hermitian::Definiteness;
use crate::linalg;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Default)]
pub struct GenOptions {
    pub dim_domain: Option<usize>,
    pub dim_mulpart: Option<usize>,
    pub dim_graph: Option<usize>,
    pub hermitian: bool,
    /// Only with `hermitian`.
    pub definiteness: Option<Definiteness>,
    /// Hermitian only: let `T̂_s` map partly outside `D(T) ⊕ T(0)`.
    pub leak: bool,
}

fn generator_error(msg: impl Into<String>) -> Error {
    Error::Generator(msg.into())
}

/// `n × k` matrix with orthonormal columns spanning a uniformly random subspace.
pub fn random_orthonormal<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, k: usize) -> CMatrix {
    assert!(k <= n, "cannot fit {k} orthonormal columns in dimension {n}");
    if k == 0 {
        return CMatrix::zeros(n, 0);
    }
    let g = field.gaussian_matrix(rng, n, k);
    g.qr().q().columns(0, k).into_owned()
}

/// Orthonormal basis of the span of `a` and `b` together.
fn join(a: &CMatrix, b: &CMatrix) -> CMatrix {
    Subspace::from_columns(&linalg::hstack(a, b), 1e-10).basis().clone()
}

fn pick<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}

/// Resolves `(dim D(T), dim T(0))` from the requested options.
fn resolve_dims<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, opts: &GenOptions) -> Result<(usize, usize)> {
    if opts.hermitian && n != m {
        return Err(generator_error(format!("Hermitian relations need n = m, got {n} and {m}")));
    }
    // a Hermitian relation has D(T) ⊥ T(0), so both fit in X together
    let budget = if opts.hermitian { n } else { n + m };
    let fits = |d: usize, k: usize| d <= n && k <= m && (!opts.hermitian || d + k <= n);
    let (d, k) = match (opts.dim_domain, opts.dim_mulpart, opts.dim_graph) {
        (Some(d), Some(k), Some(g)) if d + k != g => {
            return Err(generator_error(format!(
                "graph dimension {g} differs from dim D(T) + dim T(0) = {}",
                d + k
            )))
        }
        (Some(d), Some(k), _) => (d, k),
        (Some(d), None, Some(g)) => (d, g.checked_sub(d).ok_or_else(|| generator_error("dim D(T) exceeds graph dimension"))?),
        (None, Some(k), Some(g)) => (g.checked_sub(k).ok_or_else(|| generator_error("dim T(0) exceeds graph dimension"))?, k),
        (None, None, Some(g)) => {
            if g > budget {
                return Err(generator_error(format!("graph dimension {g} exceeds {budget}")));
            }
            let lo = g.saturating_sub(n);
            let hi = if opts.hermitian { g } else { g.min(m) };
            let k = pick(rng, lo, hi);
            (g - k, k)
        }
        (Some(d), None, None) => {
            let hi = if opts.hermitian { m.saturating_sub(d) } else { m };
            (d, pick(rng, 0, hi))
        }
        (None, Some(k), None) => {
            let hi = if opts.hermitian { n.saturating_sub(k) } else { n };
            (pick(rng, 0, hi), k)
        }
        (None, None, None) => {
            let d = pick(rng, 0, n);
            let hi = if opts.hermitian { n - d } else { m };
            (d, pick(rng, 0, hi))
        }
    };
    if k > m {
        return Err(generator_error(format!("dim T(0) = {k} exceeds m = {m}")));
    }
    if d > n {
        return Err(generator_error(format!("dim D(T) = {d} exceeds n = {n}")));
    }
    if !fits(d, k) {
        return Err(generator_error(format!(
            "Hermitian relations need dim D(T) + dim T(0) <= n, got {d} + {k} > {n}"
        )));
    }
    Ok((d, k))
}

/// Eigenvalues realizing a definiteness class.
fn class_spectrum<R: Rng + ?Sized>(rng: &mut R, d: usize, class: Definiteness) -> Result<Vec<f64>> {
    let mag = |rng: &mut R| rng.random_range(0.2..2.0);
    let mut eigs: Vec<f64> = match class {
        Definiteness::Positive => (0..d).map(|_| mag(rng)).collect(),
        Definiteness::Negative => (0..d).map(|_| -mag(rng)).collect(),
        Definiteness::NonNegative | Definiteness::NonPositive => {
            if d == 0 {
                return Err(generator_error("a semi-definite class needs dim D(T) >= 1"));
            }
            let sign = if class == Definiteness::NonNegative { 1.0 } else { -1.0 };
            let mut e: Vec<f64> = (0..d).map(|_| sign * mag(rng)).collect();
            e[0] = 0.0;
            e
        }
        Definiteness::Indefinite => {
            if d < 2 {
                return Err(generator_error("an indefinite class needs dim D(T) >= 2"));
            }
            let mut e: Vec<f64> = (0..d)
                .map(|_| if rng.random_bool(0.5) { mag(rng) } else { -mag(rng) })
                .collect();
            e[0] = mag(rng);
            e[1] = -mag(rng);
            e
        }
        Definiteness::None => {
            if d != 0 {
                return Err(generator_error("class 'none' needs D(T) = {0}"));
            }
            Vec::new()
        }
    };
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

fn hermitian_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, d: usize, class: Option<Definiteness>) -> Result<CMatrix> {
    match class {
        None => {
            let g = field.gaussian_matrix(rng, d, d);
            Ok((&g + g.adjoint()) * C64::new(0.5, 0.0))
        }
        Some(class) => {
            let eigs = class_spectrum(rng, d, class)?;
            let u = random_orthonormal(rng, field, d, d);
            let diag = CMatrix::from_fn(d, d, |i, j| if i == j { C64::new(eigs[i], 0.0) } else { C64::new(0.0, 0.0) });
            Ok(&u * diag * u.adjoint())
        }
    }
}

/// Random relation in `K^n × K^m` meeting `opts` exactly.
pub fn gen_relation<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    field: Field,
    opts: &GenOptions,
    tol: f64,
) -> Result<LinearRelation> {
    if opts.definiteness.is_some() && !opts.hermitian {
        return Err(generator_error("a definiteness class needs a Hermitian relation"));
    }
    let (d, k) = resolve_dims(rng, n, m, opts)?;
    if !opts.hermitian {
        let dom = random_orthonormal(rng, field, n, d);
        let mul = random_orthonormal(rng, field, m, k);
        let map = field.gaussian_matrix(rng, m, d);
        return LinearRelation::from_parts(&dom, &map, &mul, field, tol);
    }
    let q = random_orthonormal(rng, field, n, d + k);
    let dom = q.columns(0, d).into_owned();
    let mul = q.columns(d, k).into_owned();
    let h = hermitian_matrix(rng, field, d, opts.definiteness)?;
    let mut map = &dom * h + &mul * field.gaussian_matrix(rng, k, d);
    if opts.leak {
        let g = field.gaussian_matrix(rng, n, d);
        map += &g - &q * (q.adjoint() * &g);
    }
    LinearRelation::from_parts(&dom, &map, &mul, field, tol)
}

/// How a subspace of `S` sits relative to the matching subspace of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    Free,
    /// `S-part ⊆ T-part`.
    Inside,
    /// `S-part ⊇ T-part`.
    Contains,
    /// `S-part ⊄ T-part`.
    NotInside,
    /// `S-part ⊉ T-part`.
    NotContaining,
}

/// Orthonormal bases `(t_part, s_part)` of subspaces of `K^ambient` in the
/// requested position.
fn nested_bases<R: Rng + ?Sized>(rng: &mut R, field: Field, ambient: usize, nesting: Nesting) -> Result<(CMatrix, CMatrix)> {
    match nesting {
        Nesting::Free => {
            let dt = pick(rng, 0, ambient);
            let ds = pick(rng, 0, ambient);
            Ok((random_orthonormal(rng, field, ambient, dt), random_orthonormal(rng, field, ambient, ds)))
        }
        Nesting::Inside => {
            let dt = pick(rng, 0, ambient);
            let ds = pick(rng, 0, dt);
            let t = random_orthonormal(rng, field, ambient, dt);
            let s = &t * random_orthonormal(rng, field, dt, ds);
            Ok((t, s))
        }
        Nesting::Contains => {
            let dt = pick(rng, 0, ambient);
            let ds = pick(rng, dt, ambient);
            let t = random_orthonormal(rng, field, ambient, dt);
            let s = join(&t, &field.gaussian_matrix(rng, ambient, ds - dt));
            Ok((t, s))
        }
        Nesting::NotInside => {
            if ambient == 0 {
                return Err(generator_error("no proper subspace to escape in dimension 0"));
            }
            let dt = pick(rng, 0, ambient - 1);
            let ds = pick(rng, 1, ambient);
            let t = random_orthonormal(rng, field, ambient, dt);
            let perp = Subspace::from_columns(&t, 1e-10).complement();
            let escape = perp.basis() * field.gaussian_vector(rng, perp.dim());
            let s = join(&CMatrix::from_columns(&[escape]), &field.gaussian_matrix(rng, ambient, ds - 1));
            Ok((t, s))
        }
        Nesting::NotContaining => {
            if ambient == 0 {
                return Err(generator_error("no nonzero subspace to miss in dimension 0"));
            }
            let dt = pick(rng, 1, ambient);
            let ds = pick(rng, 0, ambient - 1);
            let t = random_orthonormal(rng, field, ambient, dt);
            let missed = Subspace::from_columns(&t.columns(0, 1).into_owned(), 1e-10).complement();
            let s = missed.basis() * random_orthonormal(rng, field, ambient - 1, ds);
            Ok((t, s))
        }
    }
}

/// A pair `(T, S)` in `K^n × K^m` whose domains and multivalued parts are
/// nested as requested (positions of `S` relative to `T`).
pub fn gen_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    field: Field,
    domain: Nesting,
    mulpart: Nesting,
    tol: f64,
) -> Result<(LinearRelation, LinearRelation)> {
    let (dom_t, dom_s) = nested_bases(rng, field, n, domain)?;
    let (mul_t, mul_s) = nested_bases(rng, field, m, mulpart)?;
    let map_t = field.gaussian_matrix(rng, m, dom_t.ncols());
    let map_s = field.gaussian_matrix(rng, m, dom_s.ncols());
    let t = LinearRelation::from_parts(&dom_t, &map_t, &mul_t, field, tol)?;
    let s = LinearRelation::from_parts(&dom_s, &map_s, &mul_s, field, tol)?;
    Ok((t, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{hermitian_report, is_hermitian};
    use crate::subspace::DEFAULT_TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hermitian_with_mulpart() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let opts = GenOptions {
                hermitian: true,
                dim_mulpart: Some(1),
                ..GenOptions::default()
            };
            let t = gen_relation(&mut rng, 3, 3, Field::Complex, &opts, DEFAULT_TOL).unwrap();
            assert!(is_hermitian(&t).unwrap());
            assert_eq!(t.mulpart().dim(), 1);
            assert!(t.domain().orthogonality_residual(&t.mulpart()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn zero_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let opts = GenOptions {
            dim_graph: Some(0),
            ..GenOptions::default()
        };
        let t = gen_relation(&mut rng, 3, 2, Field::Real, &opts, DEFAULT_TOL).unwrap();
        assert_eq!(t.dim(), 0);
    }

    #[test]
    fn infeasible_options() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let too_big = GenOptions {
            dim_mulpart: Some(3),
            ..GenOptions::default()
        };
        assert!(matches!(
            gen_relation(&mut rng, 2, 2, Field::Real, &too_big, DEFAULT_TOL),
            Err(Error::Generator(_))
        ));
        let indefinite = GenOptions {
            hermitian: true,
            dim_domain: Some(1),
            definiteness: Some(Definiteness::Indefinite),
            ..GenOptions::default()
        };
        assert!(gen_relation(&mut rng, 2, 2, Field::Real, &indefinite, DEFAULT_TOL).is_err());
    }

    #[test]
    fn classes_are_realized() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for class in [
            Definiteness::Positive,
            Definiteness::Negative,
            Definiteness::NonNegative,
            Definiteness::NonPositive,
            Definiteness::Indefinite,
        ] {
            let opts = GenOptions {
                hermitian: true,
                dim_domain: Some(3),
                definiteness: Some(class),
                ..GenOptions::default()
            };
            let t = gen_relation(&mut rng, 4, 4, Field::Complex, &opts, DEFAULT_TOL).unwrap();
            assert_eq!(hermitian_report(&t).unwrap().class, class);
        }
    }

    #[test]
    fn nesting_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (t, s) = gen_pair(&mut rng, 4, 3, Field::Complex, Nesting::Inside, Nesting::Contains, DEFAULT_TOL).unwrap();
            assert!(s.domain().is_subspace_of(&t.domain()).unwrap());
            assert!(t.mulpart().is_subspace_of(&s.mulpart()).unwrap());
            let (t, s) = gen_pair(&mut rng, 4, 3, Field::Real, Nesting::NotInside, Nesting::NotContaining, DEFAULT_TOL).unwrap();
            assert!(!s.domain().is_subspace_of(&t.domain()).unwrap());
            assert!(!t.mulpart().is_subspace_of(&s.mulpart()).unwrap());
        }
    }
}
