//! Randomized verification of the calculus against brute-force oracles.

pub mod gen;
pub mod remark24;
pub mod report;
pub mod suites;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

pub use gen::{gen_pair, gen_relation, GenOptions, Nesting};
pub use remark24::{remark24_demo, Remark24Row};
pub use report::{replay, run_suite, verify, Counterexample, SuiteReport, VerificationReport};
pub use suites::{evaluate, CheckOutcome, Instance};

/// Largest dimension accepted in a trial configuration.
pub const MAX_DIM: usize = 8;

/// Default absolute tolerance of the checks.
pub const SUITE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    SumDecomposition,
    DifferenceBounds,
    InducedNorms,
    NormLaws,
    HermitianStructure,
    NumericalRadius,
    HermitianBounds,
    HermitianNorm,
    InducedRelBound,
    BoundedPerturbation,
    SumEstimates,
    OrthogonalSplit,
    TruncatedShift,
}

impl SuiteId {
    pub const ALL: [SuiteId; 13] = [
        SuiteId::SumDecomposition,
        SuiteId::DifferenceBounds,
        SuiteId::InducedNorms,
        SuiteId::NormLaws,
        SuiteId::HermitianStructure,
        SuiteId::NumericalRadius,
        SuiteId::HermitianBounds,
        SuiteId::HermitianNorm,
        SuiteId::InducedRelBound,
        SuiteId::BoundedPerturbation,
        SuiteId::SumEstimates,
        SuiteId::OrthogonalSplit,
        SuiteId::TruncatedShift,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::SumDecomposition => "prop2.1",
            SuiteId::DifferenceBounds => "thm2.3",
            SuiteId::InducedNorms => "thm2.4",
            SuiteId::NormLaws => "lemma2.5/2.6",
            SuiteId::HermitianStructure => "prop3.1-3.4",
            SuiteId::NumericalRadius => "thm3.1",
            SuiteId::HermitianBounds => "thm3.2-3.4",
            SuiteId::HermitianNorm => "thm3.5",
            SuiteId::InducedRelBound => "thm3.6",
            SuiteId::BoundedPerturbation => "thm6.1",
            SuiteId::SumEstimates => "thm6.3-ineq",
            SuiteId::OrthogonalSplit => "arens",
            SuiteId::TruncatedShift => "remark2.4",
        }
    }

    /// One-line statement of what the suite checks.
    pub fn statement(self) -> &'static str {
        match self {
            SuiteId::SumDecomposition => "S = (S - T) + T iff D(S) ⊆ D(T) and T(0) ⊆ S(0)",
            SuiteId::DifferenceBounds => "|(S - T)(x)| >= |S(x)| - |T(x)| and |S - T| >= |S| - |T|",
            SuiteId::InducedNorms => "T_s = T̂_s = T̃_s lifted; |T̂_s(x)| = |T(x)|; |T_s| = |T̂_s| = |T|",
            SuiteId::NormLaws => "point and relation norm laws: representatives, scaling, triangle, sup",
            SuiteId::HermitianStructure => "D(T) ⊥ T(0); <T̂x2, x1> = <y2, x1> = <x2, T̂x1>; C̃ = Ĉ = C",
            SuiteId::NumericalRadius => "|T| <= 2 Ĉ(T) on dense domains, sharp for the nilpotent shift",
            SuiteId::HermitianBounds => "lower/upper bounds and classes agree for T, T̃_s, T̂_s, T_s",
            SuiteId::HermitianNorm => "Hermitian T: max |bound| <= |T|, with equality when D(T) ⊕ T(0) carries the range",
            SuiteId::InducedRelBound => "(a, b) verdicts agree for (T, S) and (T̂_s, Ŝ_s)",
            SuiteId::BoundedPerturbation => "bounded S is T-bounded with T-bound 0",
            SuiteId::SumEstimates => "two-sided estimates for T + S and (T + S)(0) = T(0)",
            SuiteId::OrthogonalSplit => "T = T_s ⊕ T_inf with D(T_s) = D(T) and R(T_s) ⊥ T(0)",
            SuiteId::TruncatedShift => "truncated diagonal example: (N, 0, 1, 0, N - 1)",
        }
    }

    /// Suites whose relations live in `X × X`.
    pub fn square(self) -> bool {
        matches!(
            self,
            SuiteId::HermitianStructure | SuiteId::NumericalRadius | SuiteId::HermitianBounds | SuiteId::HermitianNorm
        )
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<SuiteId>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(SuiteId::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::UnknownSuite(s.to_owned()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().replace('–', "-");
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == normalized)
            .ok_or_else(|| Error::UnknownSuite(s.to_owned()))
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SuiteId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SuiteId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<(usize, usize)>,
    pub field: Field,
    pub tol: f64,
    pub suites: Vec<SuiteId>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            seed: 0,
            trials: 100,
            dims: vec![(4, 4)],
            field: Field::Complex,
            tol: SUITE_TOL,
            suites: SuiteId::ALL.to_vec(),
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be positive".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Precondition("at least one (n, m) pair is needed".into()));
        }
        for &(n, m) in &self.dims {
            if !(1..=MAX_DIM).contains(&n) || !(1..=MAX_DIM).contains(&m) {
                return Err(Error::Precondition(format!(
                    "dimensions must lie in 1..={MAX_DIM}, got {n}x{m}"
                )));
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Precondition(format!("tol must be positive, got {}", self.tol)));
        }
        if self.suites.is_empty() {
            return Err(Error::Precondition("no suites selected".into()));
        }
        Ok(())
    }
}

/// Parses `4x4,6x3` into dimension pairs.
pub fn parse_dims(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (n, m) = p
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Parse(format!("expected NxM, got '{p}'")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension '{v}' in '{p}'")))
            };
            Ok((parse(n)?, parse(m)?))
        })
        .collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one trial, a fixed hash of everything that identifies it.
pub fn trial_seed(seed: u64, suite: SuiteId, n: usize, m: usize, trial: usize) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = FNV_OFFSET;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(FNV_PRIME);
        }
    };
    feed(&seed.to_le_bytes());
    feed(suite.as_str().as_bytes());
    feed(&(n as u64).to_le_bytes());
    feed(&(m as u64).to_le_bytes());
    feed(&(trial as u64).to_le_bytes());
    splitmix64(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert_eq!("prop3.1–3.4".parse::<SuiteId>().unwrap(), SuiteId::HermitianStructure);
        assert!(matches!("thm9.9".parse::<SuiteId>(), Err(Error::UnknownSuite(_))));
        assert_eq!(SuiteId::parse_list("all").unwrap().len(), 13);
    }

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims("4x4, 6x3").unwrap(), vec![(4, 4), (6, 3)]);
        assert!(parse_dims("4by4").is_err());
    }

    #[test]
    fn seeds_separate_trials() {
        let a = trial_seed(42, SuiteId::NormLaws, 4, 4, 0);
        assert_eq!(a, trial_seed(42, SuiteId::NormLaws, 4, 4, 0));
        assert_ne!(a, trial_seed(42, SuiteId::NormLaws, 4, 4, 1));
        assert_ne!(a, trial_seed(42, SuiteId::SumEstimates, 4, 4, 0));
        assert_ne!(a, trial_seed(43, SuiteId::NormLaws, 4, 4, 0));
    }
}
