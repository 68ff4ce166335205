//! JSON file formats: relations and verification reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{from_pairs, to_pairs, CMatrix, CVector, Field};
use crate::linalg;
use crate::relation::LinearRelation;
use crate::subspace::DEFAULT_TOL;

/// One spanning pair `(x, y)` of a relation, entries as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorPair {
    pub x: Vec<[f64; 2]>,
    pub y: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationFile {
    pub field: Field,
    pub n: usize,
    pub m: usize,
    pub generators: Vec<GeneratorPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl RelationFile {
    /// Writes the orthonormal graph basis as generators, so that loading
    /// reproduces the relation exactly.
    pub fn from_relation(t: &LinearRelation) -> Self {
        let x = t.x_block();
        let y = t.y_block();
        let generators = (0..t.dim())
            .map(|j| GeneratorPair {
                x: to_pairs(&x.column(j).into_owned()),
                y: to_pairs(&y.column(j).into_owned()),
            })
            .collect();
        RelationFile {
            field: t.field(),
            n: t.n(),
            m: t.m(),
            generators,
            tol: Some(t.tol()),
        }
    }

    pub fn to_relation(&self) -> Result<LinearRelation> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Parse(format!(
                "n and m must be positive, got n = {} and m = {}",
                self.n, self.m
            )));
        }
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Parse(format!("tol must be a positive number, got {tol}")));
        }
        let mut columns = CMatrix::zeros(self.n + self.m, self.generators.len());
        for (j, g) in self.generators.iter().enumerate() {
            if g.x.len() != self.n || g.y.len() != self.m {
                return Err(Error::Parse(format!(
                    "generator {j} has lengths ({}, {}), expected ({}, {})",
                    g.x.len(),
                    g.y.len(),
                    self.n,
                    self.m
                )));
            }
            let v = from_pairs(&[g.x.as_slice(), g.y.as_slice()].concat());
            if !v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::Parse(format!("generator {j} has a non-finite entry")));
            }
            if !v.iter().all(|&z| self.field.admits(z)) {
                return Err(Error::Parse(format!(
                    "generator {j} has complex entries in a real relation"
                )));
            }
            columns.set_column(j, &v);
        }
        if self.generators.is_empty() {
            return Ok(LinearRelation::zero(self.n, self.m, self.field, tol));
        }
        if linalg::orthonormality_defect(&columns) <= 1e-13 {
            return LinearRelation::from_orthonormal_basis(columns, self.n, self.m, self.field, tol);
        }
        let pairs: Vec<(CVector, CVector)> = (0..columns.ncols())
            .map(|j| {
                let c = columns.column(j);
                (c.rows(0, self.n).into_owned(), c.rows(self.n, self.m).into_owned())
            })
            .collect();
        LinearRelation::new(&pairs, self.n, self.m, self.field, Some(tol))
    }
}

pub fn relation_to_json(t: &LinearRelation) -> Result<String> {
    Ok(serde_json::to_string_pretty(&RelationFile::from_relation(t))?)
}

pub fn relation_from_json(text: &str) -> Result<LinearRelation> {
    let file: RelationFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("relation file: {e}")))?;
    file.to_relation()
}

pub fn read_relation(path: &Path) -> Result<LinearRelation> {
    relation_from_json(&fs::read_to_string(path)?)
}

pub fn write_relation(path: &Path, t: &LinearRelation) -> Result<()> {
    write_text(path, &relation_to_json(t)?)
}

/// Writes `text` followed by a newline.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut body = text.to_owned();
    body.push('\n');
    fs::write(path, body)?;
    Ok(())
}

/// Formats a value with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s
        };
        if s == "-0" {
            "0".to_owned()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::real_vector;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(2.0_f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_sig(63.000000000001), "63");
        assert_eq!(fmt_sig(-1e-20), "-1.00000000000e-20");
        assert_eq!(fmt_sig(-1e-13), "-1.00000000000e-13");
    }

    #[test]
    fn exact_reload() {
        let g = vec![
            (real_vector(&[1.0, 2.0]), real_vector(&[0.5, 1.0, -1.0])),
            (real_vector(&[0.0, 1.0]), real_vector(&[3.0, 0.0, 1.0])),
        ];
        let t = LinearRelation::new(&g, 2, 3, Field::Real, None).unwrap();
        let back = relation_from_json(&relation_to_json(&t).unwrap()).unwrap();
        assert_eq!(back.graph().basis(), t.graph().basis());
    }

    #[test]
    fn rejects_bad_files() {
        let bad_len = r#"{"field":"real","n":2,"m":1,"generators":[{"x":[[1,0]],"y":[[0,0]]}]}"#;
        assert!(matches!(relation_from_json(bad_len), Err(Error::Parse(_))));
        let complex = r#"{"field":"real","n":1,"m":1,"generators":[{"x":[[1,1]],"y":[[0,0]]}]}"#;
        assert!(matches!(relation_from_json(complex), Err(Error::Parse(_))));
        let zero_n = r#"{"field":"real","n":0,"m":1,"generators":[]}"#;
        assert!(matches!(relation_from_json(zero_n), Err(Error::Parse(_))));
        assert!(matches!(relation_from_json("{"), Err(Error::Parse(_))));
    }
}
