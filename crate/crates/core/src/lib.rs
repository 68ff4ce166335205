//! Finite-dimensional linear relations: subspaces of `K^n × K^m` viewed as
//! multivalued linear operators, with their algebra, norms, Hermitian
//! structure, relative bounds and a randomized verification harness.

pub mod error;
pub mod field;
pub mod harness;
pub mod hermitian;
pub mod io;
pub(crate) mod linalg;
pub mod norms;
pub mod relation;
pub mod relbound;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{CMatrix, CVector, Field, C64};
pub use harness::{SuiteId, TrialConfig};
pub use hermitian::{Definiteness, HermitianReport};
pub use norms::NormReport;
pub use relation::{ArensParts, Image, InducedKind, InducedOperator, LinearRelation};
pub use subspace::{Subspace, DEFAULT_TOL};
