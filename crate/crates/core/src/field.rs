//! Scalar field tag and the complex matrix types every computation runs on.
//!
//! Both fields share one numeric representation: complex doubles. Real mode
//! keeps every imaginary part at zero.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    #[default]
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }

    /// Whether `z` is a legal scalar of this field.
    pub fn admits(self, z: C64) -> bool {
        match self {
            Field::Complex => true,
            Field::Real => z.im == 0.0,
        }
    }

    /// A standard Gaussian scalar of this field (unit variance).
    pub fn gaussian<R: Rng + ?Sized>(self, rng: &mut R) -> C64 {
        match self {
            Field::Real => C64::new(rng.sample(StandardNormal), 0.0),
            Field::Complex => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(s * re, s * im)
            }
        }
    }

    pub fn gaussian_vector<R: Rng + ?Sized>(self, rng: &mut R, len: usize) -> CVector {
        CVector::from_fn(len, |_, _| self.gaussian(rng))
    }

    pub fn gaussian_matrix<R: Rng + ?Sized>(self, rng: &mut R, rows: usize, cols: usize) -> CMatrix {
        // column-major fill so the draw order is fixed
        let mut m = CMatrix::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = self.gaussian(rng);
            }
        }
        m
    }
}

impl std::str::FromStr for Field {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(crate::Error::Parse(format!("unknown field `{other}`"))),
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Builds a vector from real entries.
pub fn real_vector(entries: &[f64]) -> CVector {
    CVector::from_iterator(entries.len(), entries.iter().map(|&x| C64::new(x, 0.0)))
}

/// Builds a matrix from real row-major entries.
pub fn real_matrix(rows: usize, cols: usize, row_major: &[f64]) -> CMatrix {
    assert_eq!(row_major.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |i, j| C64::new(row_major[i * cols + j], 0.0))
}

/// Inner product linear in the first argument: `<u, v> = v^H u`.
pub fn inner(u: &CVector, v: &CVector) -> C64 {
    v.dotc(u)
}

/// `[re, im]` pairs, the on-disk encoding of a vector.
pub fn to_pairs(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn from_pairs(pairs: &[[f64; 2]]) -> CVector {
    CVector::from_iterator(pairs.len(), pairs.iter().map(|p| C64::new(p[0], p[1])))
}
