//! Linear relations: subspaces of `X × Y` read as multivalued operators.
//!
//! The graph is stored as an orthonormal basis of `K^(n+m)`; the first `n`
//! coordinates are the `x` block and the remaining `m` the `y` block. All
//! operations return new values and never mutate their inputs.

use crate::error::{check_dim, Error, Result};
use crate::field::{CMatrix, CVector, Field, C64};
use crate::linalg::{self, Cutoff};
use crate::subspace::{Subspace, DEFAULT_TOL};

#[derive(Debug, Clone)]
pub struct LinearRelation {
    n: usize,
    m: usize,
    field: Field,
    graph: Subspace,
}

/// `T(x) = {representative} + T(0)`.
#[derive(Debug, Clone)]
pub struct Image {
    /// The representative orthogonal to `T(0)`.
    pub representative: CVector,
    pub mulpart: Subspace,
}

/// The orthogonal splitting `T = T_s ⊕ T_inf`.
#[derive(Debug, Clone)]
pub struct ArensParts {
    /// Single-valued operator part.
    pub operator_part: LinearRelation,
    /// Pure multivalued part `{0} × T(0)`.
    pub multivalued_part: LinearRelation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InducedKind {
    /// Projection of every image onto `T(0)^⊥`.
    Hat,
    /// Quotient map onto `Y / T(0)`, carried through the isometry `T(0)^⊥ ≅ Y / T(0)`.
    Tilde,
    /// Operator part of the orthogonal splitting.
    Arens,
}

/// A single-valued operator induced by a relation, in orthonormal
/// coordinates of its domain.
#[derive(Debug, Clone)]
pub struct InducedOperator {
    kind: InducedKind,
    field: Field,
    domain: Subspace,
    map_matrix: CMatrix,
    mulpart: Subspace,
    quotient_coords: Option<CMatrix>,
}

fn check_field(a: Field, b: Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl LinearRelation {
    /// Relation spanned by the given `(x, y)` pairs.
    pub fn new(
        generators: &[(CVector, CVector)],
        n: usize,
        m: usize,
        field: Field,
        tol: Option<f64>,
    ) -> Result<Self> {
        let mut columns = Vec::with_capacity(generators.len());
        for (x, y) in generators {
            check_dim("generator x", n, x.len())?;
            check_dim("generator y", m, y.len())?;
            if !x.iter().chain(y.iter()).all(|&z| field.admits(z)) {
                return Err(Error::Precondition(
                    "complex generator entries in a real relation".into(),
                ));
            }
            let mut v = CVector::zeros(n + m);
            v.rows_mut(0, n).copy_from(x);
            v.rows_mut(n, m).copy_from(y);
            columns.push(v);
        }
        let graph = Subspace::span(&columns, n + m, tol)?;
        Self::from_graph(graph, n, m, field)
    }

    /// Wraps a graph subspace of `K^(n+m)`.
    pub fn from_graph(graph: Subspace, n: usize, m: usize, field: Field) -> Result<Self> {
        check_dim("relation graph", n + m, graph.ambient_dim())?;
        let graph = match field {
            Field::Real => graph.realified(),
            Field::Complex => graph,
        };
        Ok(LinearRelation { n, m, field, graph })
    }

    /// Uses an orthonormal basis as-is, without re-orthonormalization.
    /// Falls back to [`LinearRelation::from_graph`] semantics when the
    /// columns are not orthonormal.
    pub fn from_orthonormal_basis(
        basis: CMatrix,
        n: usize,
        m: usize,
        field: Field,
        tol: f64,
    ) -> Result<Self> {
        check_dim("relation graph", n + m, basis.nrows())?;
        let independent = linalg::orthonormality_defect(&basis) <= 1e-13;
        let real_ok = field == Field::Complex || basis.iter().all(|z| z.im == 0.0);
        if independent && real_ok {
            Ok(LinearRelation {
                n,
                m,
                field,
                graph: Subspace::from_orthonormal(basis, tol),
            })
        } else {
            Self::from_graph(Subspace::from_columns(&basis, tol), n, m, field)
        }
    }

    fn derived(&self, columns: &CMatrix, n: usize, m: usize, tol: f64) -> Self {
        let graph = Subspace::from_columns_floored(columns, tol);
        Self::from_graph(graph, n, m, self.field).expect("derived graph has matching dims")
    }

    /// `{(0, 0)}`.
    pub fn zero(n: usize, m: usize, field: Field, tol: f64) -> Self {
        LinearRelation {
            n,
            m,
            field,
            graph: Subspace::zero(n + m, tol),
        }
    }

    /// Graph of the `m × n` matrix `a` on all of `K^n`.
    pub fn operator_graph(a: &CMatrix, field: Field, tol: f64) -> Result<Self> {
        let (m, n) = a.shape();
        let top = CMatrix::identity(n, n);
        let stacked = linalg::vstack(&top, a);
        if !stacked.iter().all(|&z| field.admits(z)) {
            return Err(Error::Precondition(
                "complex matrix entries in a real relation".into(),
            ));
        }
        Self::from_graph(Subspace::from_columns(&stacked, tol), n, m, field)
    }

    /// `{(D c, A c + M u)}` for a domain basis `D` (`n × d`), a map `A`
    /// (`m × d`) and a multivalued-part spanning set `M` (`m × k`).
    pub fn from_parts(
        domain_basis: &CMatrix,
        map: &CMatrix,
        mulpart: &CMatrix,
        field: Field,
        tol: f64,
    ) -> Result<Self> {
        let n = domain_basis.nrows();
        let m = map.nrows();
        check_dim("from_parts map columns", domain_basis.ncols(), map.ncols())?;
        check_dim("from_parts mulpart rows", m, mulpart.nrows())?;
        let top = linalg::hstack(domain_basis, &CMatrix::zeros(n, mulpart.ncols()));
        let bottom = linalg::hstack(map, mulpart);
        let stacked = linalg::vstack(&top, &bottom);
        Self::from_graph(Subspace::from_columns(&stacked, tol), n, m, field)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn tol(&self) -> f64 {
        self.graph.tol()
    }

    pub fn with_tol(self, tol: f64) -> Self {
        LinearRelation {
            graph: self.graph.with_tol(tol),
            ..self
        }
    }

    /// Dimension of the graph.
    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn x_block(&self) -> CMatrix {
        self.graph.basis().rows(0, self.n).into_owned()
    }

    pub fn y_block(&self) -> CMatrix {
        self.graph.basis().rows(self.n, self.m).into_owned()
    }

    /// `D(T)`.
    pub fn domain(&self) -> Subspace {
        let split = linalg::svd_split(&self.x_block(), Cutoff::Floored(self.tol()));
        Subspace::from_orthonormal(split.col, self.tol())
    }

    /// `R(T)`.
    pub fn range(&self) -> Subspace {
        let split = linalg::svd_split(&self.y_block(), Cutoff::Floored(self.tol()));
        Subspace::from_orthonormal(split.col, self.tol())
    }

    /// `T(0) = {y : (0, y) ∈ T}`.
    pub fn mulpart(&self) -> Subspace {
        let split = linalg::svd_split(&self.x_block(), Cutoff::Floored(self.tol()));
        let vectors = self.y_block() * split.null;
        let basis = linalg::leading_left_vectors(&vectors, vectors.ncols());
        Subspace::from_orthonormal(basis, self.tol())
    }

    /// `N(T) = {x : (x, 0) ∈ T}`.
    pub fn nullspace(&self) -> Subspace {
        let split = linalg::svd_split(&self.y_block(), Cutoff::Floored(self.tol()));
        let vectors = self.x_block() * split.null;
        let basis = linalg::leading_left_vectors(&vectors, vectors.ncols());
        Subspace::from_orthonormal(basis, self.tol())
    }

    pub fn is_single_valued(&self) -> bool {
        self.mulpart().is_zero()
    }

    fn check_in_domain(&self, x: &CVector) -> Result<Subspace> {
        check_dim("image_of", self.n, x.len())?;
        let domain = self.domain();
        if !domain.contains(x)? {
            return Err(Error::NotInDomain {
                residual: domain.distance(x)?,
            });
        }
        Ok(domain)
    }

    /// Some element of `T(x)`, obtained by a least-squares solve on the
    /// graph basis. It is generally not orthogonal to `T(0)`.
    pub fn any_representative(&self, x: &CVector) -> Result<CVector> {
        self.check_in_domain(x)?;
        let rhs = CMatrix::from_column_slice(self.n, 1, x.as_slice());
        let coeffs = linalg::pinv_solve(&self.x_block(), &rhs, Cutoff::Floored(self.tol()));
        Ok((self.y_block() * coeffs).column(0).into_owned())
    }

    /// `T(x)` as `{y0} + T(0)` with `y0 ⊥ T(0)`.
    pub fn image_of(&self, x: &CVector) -> Result<Image> {
        let y = self.any_representative(x)?;
        let mulpart = self.mulpart();
        let representative = mulpart.reject(&y)?;
        Ok(Image {
            representative,
            mulpart,
        })
    }

    /// Whether `(x, y) ∈ T`.
    pub fn contains_pair(&self, x: &CVector, y: &CVector) -> Result<bool> {
        check_dim("contains_pair x", self.n, x.len())?;
        check_dim("contains_pair y", self.m, y.len())?;
        let mut v = CVector::zeros(self.n + self.m);
        v.rows_mut(0, self.n).copy_from(x);
        v.rows_mut(self.n, self.m).copy_from(y);
        self.graph.contains(&v)
    }

    /// `T^{-1} = {(y, x) : (x, y) ∈ T}`; a row swap, so the basis stays orthonormal.
    pub fn inverse(&self) -> Self {
        let basis = linalg::vstack(&self.y_block(), &self.x_block());
        LinearRelation {
            n: self.m,
            m: self.n,
            field: self.field,
            graph: Subspace::from_orthonormal(basis, self.tol()),
        }
    }

    /// `αT = {(x, αy) : (x, y) ∈ T}`.
    pub fn scalar_mul(&self, alpha: C64) -> Result<Self> {
        if !self.field.admits(alpha) {
            return Err(Error::Precondition(
                "complex scalar applied to a real relation".into(),
            ));
        }
        let stacked = linalg::vstack(&self.x_block(), &(self.y_block() * alpha));
        Ok(self.derived(&stacked, self.n, self.m, self.tol()))
    }

    /// `T + S = {(x, y + z) : (x, y) ∈ T, (x, z) ∈ S}`.
    pub fn sum(&self, other: &LinearRelation) -> Result<Self> {
        check_dim("relation_sum n", self.n, other.n)?;
        check_dim("relation_sum m", self.m, other.m)?;
        check_field(self.field, other.field)?;
        let tol = self.tol().max(other.tol());
        let (xt, yt) = (self.x_block(), self.y_block());
        let (xs, ys) = (other.x_block(), other.y_block());
        let constraint = linalg::hstack(&xt, &(-&xs));
        let null = linalg::null_basis(&constraint, Cutoff::Floored(tol));
        let p = self.dim();
        let ct = null.rows(0, p).into_owned();
        let cs = null.rows(p, other.dim()).into_owned();
        let x = &xt * &ct;
        let y = &yt * &ct + &ys * &cs;
        Ok(self.derived(&linalg::vstack(&x, &y), self.n, self.m, tol))
    }

    /// `T - S = T + (-1) S`.
    pub fn difference(&self, other: &LinearRelation) -> Result<Self> {
        self.sum(&other.scalar_mul(C64::new(-1.0, 0.0))?)
    }

    /// The product `self · right = {(x, z) : (x, y) ∈ right, (y, z) ∈ self}`.
    pub fn product(&self, right: &LinearRelation) -> Result<Self> {
        check_dim("product inner dimension", right.m, self.n)?;
        check_field(self.field, right.field)?;
        let tol = self.tol().max(right.tol());
        let (xr, yr) = (right.x_block(), right.y_block());
        let (ys, zs) = (self.x_block(), self.y_block());
        let constraint = linalg::hstack(&yr, &(-&ys));
        let null = linalg::null_basis(&constraint, Cutoff::Floored(tol));
        let p = right.dim();
        let cr = null.rows(0, p).into_owned();
        let cs = null.rows(p, self.dim()).into_owned();
        let x = &xr * &cr;
        let z = &zs * &cs;
        Ok(self.derived(&linalg::vstack(&x, &z), right.n, self.m, tol))
    }

    /// `T ∔ S`, defined only when `T ∩ S = {(0, 0)}`.
    pub fn dotted_sum(&self, other: &LinearRelation) -> Result<Self> {
        check_dim("dotted_sum n", self.n, other.n)?;
        check_dim("dotted_sum m", self.m, other.m)?;
        check_field(self.field, other.field)?;
        let cap = self.graph.intersect(&other.graph)?;
        if !cap.is_zero() {
            return Err(Error::Precondition(format!(
                "graphs intersect in a subspace of dimension {}",
                cap.dim()
            )));
        }
        let graph = self.graph.sum(&other.graph)?;
        Self::from_graph(graph, self.n, self.m, self.field)
    }

    /// `|B_T^H B_S|_2`, zero when the graphs are orthogonal.
    pub fn orthogonality_residual(&self, other: &LinearRelation) -> Result<f64> {
        check_dim("is_orthogonal n", self.n, other.n)?;
        check_dim("is_orthogonal m", self.m, other.m)?;
        self.graph.orthogonality_residual(&other.graph)
    }

    pub fn is_orthogonal(&self, other: &LinearRelation) -> Result<bool> {
        Ok(self.orthogonality_residual(other)? <= self.tol().max(other.tol()))
    }

    /// `T = T_s ⊕ T_inf` with `T_inf = {0} × T(0)` and `T_s = T ⊖ T_inf`.
    pub fn arens_decompose(&self) -> ArensParts {
        let tol = self.tol();
        let mulpart = self.mulpart();
        let k = mulpart.dim();
        let inf_basis = linalg::vstack(&CMatrix::zeros(self.n, k), mulpart.basis());
        let inf_graph = Subspace::from_orthonormal(inf_basis, tol);
        let rest = inf_graph.reject_columns(self.graph.basis());
        let s_basis = linalg::leading_left_vectors(&rest, self.dim() - k);
        let operator_part = LinearRelation {
            n: self.n,
            m: self.m,
            field: self.field,
            graph: Subspace::from_orthonormal(s_basis, tol),
        };
        let multivalued_part = LinearRelation {
            n: self.n,
            m: self.m,
            field: self.field,
            graph: inf_graph,
        };
        let fix = |r: LinearRelation| match r.field {
            Field::Real => LinearRelation {
                graph: r.graph.realified(),
                ..r
            },
            Field::Complex => r,
        };
        ArensParts {
            operator_part: fix(operator_part),
            multivalued_part: fix(multivalued_part),
        }
    }

    /// Coefficients `C` with `X_T C = D` for the domain basis `D`.
    fn domain_coefficients(&self, domain: &Subspace) -> CMatrix {
        linalg::pinv_solve(&self.x_block(), domain.basis(), Cutoff::Floored(self.tol()))
    }

    /// `T̂_s = G(P_T) T`: each image projected onto `T(0)^⊥`.
    pub fn induced_hat(&self) -> InducedOperator {
        let domain = self.domain();
        let mulpart = self.mulpart();
        let images = self.y_block() * self.domain_coefficients(&domain);
        let map_matrix = mulpart.reject_columns(&images);
        InducedOperator {
            kind: InducedKind::Hat,
            field: self.field,
            domain,
            map_matrix,
            mulpart,
            quotient_coords: None,
        }
    }

    /// `T̃_s = G(Q_T) T`, computed in coordinates of an orthonormal basis
    /// `W` of `T(0)^⊥` and lifted back to `Y` by `W`.
    pub fn induced_tilde(&self) -> InducedOperator {
        let domain = self.domain();
        let mulpart = self.mulpart();
        let w = mulpart.complement();
        let images = self.y_block() * self.domain_coefficients(&domain);
        let coords = w.basis().adjoint() * images;
        let map_matrix = w.basis() * &coords;
        InducedOperator {
            kind: InducedKind::Tilde,
            field: self.field,
            domain,
            map_matrix,
            mulpart,
            quotient_coords: Some(coords),
        }
    }

    /// The operator part `T_s` of the orthogonal splitting, as a matrix.
    pub fn induced_arens(&self) -> InducedOperator {
        let parts = self.arens_decompose();
        let s = &parts.operator_part;
        let domain = self.domain();
        let coeffs = linalg::pinv_solve(&s.x_block(), domain.basis(), Cutoff::Floored(self.tol()));
        let map_matrix = s.y_block() * coeffs;
        InducedOperator {
            kind: InducedKind::Arens,
            field: self.field,
            domain,
            map_matrix,
            mulpart: self.mulpart(),
            quotient_coords: None,
        }
    }

    /// Graph equality residual (max of the mutual projection residuals).
    pub fn equality_residual(&self, other: &LinearRelation) -> Result<f64> {
        check_dim("relation equality n", self.n, other.n)?;
        check_dim("relation equality m", self.m, other.m)?;
        self.graph.equality_residual(&other.graph)
    }

    pub fn equals(&self, other: &LinearRelation) -> Result<bool> {
        Ok(self.equality_residual(other)? <= self.tol().max(other.tol()))
    }

    /// Graph containment `self ⊆ other`.
    pub fn is_subrelation_of(&self, other: &LinearRelation) -> Result<bool> {
        check_dim("relation containment n", self.n, other.n)?;
        check_dim("relation containment m", self.m, other.m)?;
        self.graph.is_subspace_of(&other.graph)
    }
}

impl Default for LinearRelation {
    fn default() -> Self {
        LinearRelation::zero(0, 0, Field::default(), DEFAULT_TOL)
    }
}

impl InducedOperator {
    pub fn kind(&self) -> InducedKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    /// Orthonormal `n × d` basis of `D(T)`.
    pub fn domain_basis(&self) -> &CMatrix {
        self.domain.basis()
    }

    /// `m × d` matrix: `A c` is the image of `domain_basis · c`.
    pub fn map_matrix(&self) -> &CMatrix {
        &self.map_matrix
    }

    pub fn mulpart_basis(&self) -> &CMatrix {
        self.mulpart.basis()
    }

    pub fn mulpart(&self) -> &Subspace {
        &self.mulpart
    }

    /// Coordinates in `Y / T(0)` relative to an orthonormal basis of
    /// `T(0)^⊥`; present for the quotient variant only.
    pub fn quotient_coordinates(&self) -> Option<&CMatrix> {
        self.quotient_coords.as_ref()
    }

    pub fn n(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn m(&self) -> usize {
        self.map_matrix.nrows()
    }

    /// Domain coordinates `D^H x` after checking `x ∈ D(T)`.
    pub fn coordinates(&self, x: &CVector) -> Result<CVector> {
        check_dim("induced operator argument", self.n(), x.len())?;
        if !self.domain.contains(x)? {
            return Err(Error::NotInDomain {
                residual: self.domain.distance(x)?,
            });
        }
        Ok(self.domain.basis().adjoint() * x)
    }

    pub fn apply(&self, x: &CVector) -> Result<CVector> {
        Ok(&self.map_matrix * self.coordinates(x)?)
    }

    /// Operator norm; zero on a trivial domain.
    pub fn norm(&self) -> f64 {
        linalg::spectral_norm(&self.map_matrix)
    }

    /// `|M^H A|_2`: how far the range strays from `T(0)^⊥`.
    pub fn mulpart_leakage(&self) -> f64 {
        linalg::spectral_norm(&(self.mulpart.basis().adjoint() * &self.map_matrix))
    }

    /// `D^H A`, the operator compressed to its own domain. Needs `X = Y`.
    pub fn compression(&self) -> Result<CMatrix> {
        if self.n() != self.m() {
            return Err(Error::Shape(format!(
                "compression needs a relation in X × X, got {} × {}",
                self.n(),
                self.m()
            )));
        }
        Ok(self.domain.basis().adjoint() * &self.map_matrix)
    }

    /// The graph `{(x, A D^H x) : x ∈ D(T)}` as a relation.
    pub fn as_relation(&self) -> LinearRelation {
        let stacked = linalg::vstack(self.domain.basis(), &self.map_matrix);
        let graph = Subspace::from_columns_floored(&stacked, self.domain.tol());
        LinearRelation::from_graph(graph, self.n(), self.m(), self.field)
            .expect("induced graph has matching dims")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{real_matrix, real_vector};

    fn v(x: &[f64]) -> CVector {
        real_vector(x)
    }

    fn rel(gens: &[(&[f64], &[f64])], n: usize, m: usize) -> LinearRelation {
        let g: Vec<_> = gens.iter().map(|(x, y)| (v(x), v(y))).collect();
        LinearRelation::new(&g, n, m, Field::Real, None).unwrap()
    }

    /// `{((α, 0), (β, α))}`: domain span{e1}, multivalued part span{e1}.
    fn e1() -> LinearRelation {
        rel(&[(&[1.0, 0.0], &[0.0, 1.0]), (&[0.0, 0.0], &[1.0, 0.0])], 2, 2)
    }

    fn e3() -> LinearRelation {
        rel(&[(&[1.0, 0.0], &[1.0, 0.0]), (&[0.0, 1.0], &[0.0, 1.0])], 2, 2)
    }

    fn graph_of(rows: usize, cols: usize, a: &[f64]) -> LinearRelation {
        LinearRelation::operator_graph(&real_matrix(rows, cols, a), Field::Real, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn make_relation_examples() {
        assert_eq!(e1().dim(), 2);
        let z = LinearRelation::new(&[], 2, 3, Field::Real, None).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(z.domain().is_zero() && z.mulpart().is_zero());
        assert_eq!(e3().dim(), 2);
    }

    #[test]
    fn generator_dimension_mismatch() {
        let g = vec![(v(&[1.0]), v(&[1.0, 0.0]))];
        assert!(LinearRelation::new(&g, 2, 2, Field::Real, None).is_err());
    }

    #[test]
    fn e1_parts() {
        let t = e1();
        let span_e1 = Subspace::span(&[v(&[1.0, 0.0])], 2, None).unwrap();
        assert!(t.mulpart().equals(&span_e1).unwrap());
        assert!(t.domain().equals(&span_e1).unwrap());
        assert_eq!(t.range().dim(), 2);
        assert!(t.nullspace().is_zero());
    }

    #[test]
    fn identity_and_purely_multivalued_parts() {
        let t = e3();
        assert!(t.mulpart().is_zero() && t.nullspace().is_zero());
        let pure = rel(&[(&[0.0, 0.0], &[1.0, 0.0]), (&[0.0, 0.0], &[0.0, 1.0])], 2, 2);
        assert!(pure.domain().is_zero());
        assert_eq!(pure.mulpart().dim(), 2);
    }

    #[test]
    fn image_of_picks_orthogonal_representative() {
        let t = e1();
        let img = t.image_of(&v(&[1.0, 0.0])).unwrap();
        assert!((img.representative.clone() - v(&[0.0, 1.0])).norm() < 1e-12);
        assert_eq!(img.mulpart.dim(), 1);
        assert!(matches!(t.image_of(&v(&[0.0, 1.0])), Err(Error::NotInDomain { .. })));
    }

    #[test]
    fn inverse_examples() {
        let t = e1();
        assert!(t.inverse().inverse().equals(&t).unwrap());
        assert!(e3().inverse().equals(&e3()).unwrap());
        let inv = t.inverse();
        assert_eq!(inv.domain().dim(), 2);
        assert!(inv.mulpart().equals(&t.nullspace()).unwrap());
    }

    #[test]
    fn scalar_mul_examples() {
        let t = e1();
        assert!(t.scalar_mul(C64::new(1.0, 0.0)).unwrap().equals(&t).unwrap());
        let zero_e3 = e3().scalar_mul(C64::new(0.0, 0.0)).unwrap();
        let expected = rel(&[(&[1.0, 0.0], &[0.0, 0.0]), (&[0.0, 1.0], &[0.0, 0.0])], 2, 2);
        assert!(zero_e3.equals(&expected).unwrap());
        // 0·T keeps D(T) and collapses T(0)
        let zero_e1 = t.scalar_mul(C64::new(0.0, 0.0)).unwrap();
        assert_eq!(zero_e1.dim(), 1);
        assert!(zero_e1.mulpart().is_zero());
        assert!(t.scalar_mul(C64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn sum_examples() {
        let t = e1();
        let zero_map = graph_of(2, 2, &[0.0; 4]);
        assert!(t.sum(&zero_map).unwrap().equals(&t).unwrap());
        let s = t.sum(&e3()).unwrap();
        let expected = rel(&[(&[1.0, 0.0], &[1.0, 1.0]), (&[0.0, 0.0], &[1.0, 0.0])], 2, 2);
        assert!(s.equals(&expected).unwrap());
        assert!(s.contains_pair(&v(&[2.0, 0.0]), &v(&[7.0, 2.0])).unwrap());
    }

    #[test]
    fn product_examples() {
        let two = graph_of(2, 2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(two.product(&e3()).unwrap().equals(&two).unwrap());
        let p = two.product(&e1()).unwrap();
        assert!(p.equals(&e1().scalar_mul(C64::new(2.0, 0.0)).unwrap()).unwrap());
        let a = graph_of(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert!(a.product(&two).unwrap().is_single_valued());
        assert!(a.product(&graph_of(3, 3, &[1.0; 9])).is_err());
    }

    #[test]
    fn dotted_and_orthogonal_sums() {
        let t = e1();
        assert!(t.dotted_sum(&t).is_err());
        let a = rel(&[(&[1.0, 0.0], &[0.0, 0.0])], 2, 2);
        let b = rel(&[(&[0.0, 0.0], &[0.0, 1.0])], 2, 2);
        assert!(a.is_orthogonal(&b).unwrap());
        assert_eq!(a.dotted_sum(&b).unwrap().dim(), 2);
    }

    #[test]
    fn arens_examples() {
        let parts = e1().arens_decompose();
        let inf = rel(&[(&[0.0, 0.0], &[1.0, 0.0])], 2, 2);
        let s = rel(&[(&[1.0, 0.0], &[0.0, 1.0])], 2, 2);
        assert!(parts.multivalued_part.equals(&inf).unwrap());
        assert!(parts.operator_part.equals(&s).unwrap());

        let a = graph_of(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let parts = a.arens_decompose();
        assert_eq!(parts.multivalued_part.dim(), 0);
        assert!(parts.operator_part.equals(&a).unwrap());

        let pure = rel(&[(&[0.0, 0.0], &[1.0, 0.0]), (&[0.0, 0.0], &[0.0, 1.0])], 2, 2);
        let parts = pure.arens_decompose();
        assert_eq!(parts.operator_part.dim(), 0);
        assert!(parts.multivalued_part.equals(&pure).unwrap());
    }

    #[test]
    fn induced_examples() {
        let hat = e1().induced_hat();
        assert_eq!(hat.map_matrix().shape(), (2, 1));
        let y = hat.apply(&v(&[1.0, 0.0])).unwrap();
        assert!((y - v(&[0.0, 1.0])).norm() < 1e-12);

        let d = graph_of(2, 2, &[2.0, 0.0, 0.0, -3.0]);
        let hat = d.induced_hat();
        let full = hat.domain_basis() * hat.map_matrix() * hat.domain_basis().adjoint();
        assert!((full - real_matrix(2, 2, &[2.0, 0.0, 0.0, -3.0])).norm() < 1e-12);

        let pure = rel(&[(&[0.0, 0.0], &[1.0, 0.0]), (&[0.0, 0.0], &[0.0, 1.0])], 2, 2);
        assert_eq!(pure.induced_hat().map_matrix().ncols(), 0);
    }

    #[test]
    fn tilde_and_arens_agree_with_hat_on_e1() {
        let t = e1();
        let hat = t.induced_hat();
        let tilde = t.induced_tilde();
        let arens = t.induced_arens();
        assert!((hat.map_matrix() - tilde.map_matrix()).norm() < 1e-12);
        assert!((hat.map_matrix() - arens.map_matrix()).norm() < 1e-12);
        assert_eq!(tilde.quotient_coordinates().unwrap().shape(), (1, 1));
        assert!(hat.as_relation().equals(&t.arens_decompose().operator_part).unwrap());
    }
}
