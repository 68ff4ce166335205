//! Running suites, aggregating outcomes, and replaying counterexamples.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::remark24::{remark24_demo, Remark24Row};
use super::suites::{evaluate, fixtures, generate, CheckOutcome, Instance};
use super::{trial_seed, SuiteId, TrialConfig};
use crate::error::Result;
use crate::field::Field;
use crate::io::RelationFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedRelation {
    pub name: String,
    pub relation: RelationFile,
}

/// A failing trial with everything needed to re-run its checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: SuiteId,
    pub n: usize,
    pub m: usize,
    pub field: Field,
    pub trial: usize,
    pub seed: u64,
    pub tol: f64,
    pub relations: Vec<NamedRelation>,
    pub params: BTreeMap<String, f64>,
    pub failed_checks: Vec<CheckOutcome>,
}

impl Counterexample {
    fn new(inst: &Instance, tol: f64, checks: &[CheckOutcome]) -> Self {
        Counterexample {
            suite: inst.suite,
            n: inst.n,
            m: inst.m,
            field: inst.field,
            trial: inst.trial,
            seed: inst.seed,
            tol,
            relations: inst
                .relations
                .iter()
                .map(|(name, r)| NamedRelation {
                    name: name.clone(),
                    relation: RelationFile::from_relation(r),
                })
                .collect(),
            params: inst.params.iter().cloned().collect(),
            failed_checks: checks.iter().filter(|c| !c.passed).cloned().collect(),
        }
    }

    pub fn instance(&self) -> Result<Instance> {
        let relations = self
            .relations
            .iter()
            .map(|r| Ok((r.name.clone(), r.relation.to_relation()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            suite: self.suite,
            n: self.n,
            m: self.m,
            field: self.field,
            trial: self.trial,
            seed: self.seed,
            relations,
            params: self.params.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        })
    }
}

/// Re-runs the checks of a counterexample, at its own tolerance unless one
/// is given.
pub fn replay(cx: &Counterexample, tol: Option<f64>) -> Result<Vec<CheckOutcome>> {
    evaluate(&cx.instance()?, tol.unwrap_or(cx.tol))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub evaluations: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub statement: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Remark24Row>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteTiming {
    pub suite: SuiteId,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub suites: Vec<SuiteTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: TrialConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub timing: Timing,
}

impl VerificationReport {
    /// The report as JSON without the timing field, which is the only part
    /// that varies between identical runs.
    pub fn deterministic_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(self)?;
        if let Some(map) = value.as_object_mut() {
            map.remove("timing");
        }
        Ok(serde_json::to_string_pretty(&value)?)
    }
}

fn instances(suite: SuiteId, config: &TrialConfig) -> Vec<(usize, usize, usize)> {
    if suite == SuiteId::TruncatedShift {
        return Vec::new();
    }
    config
        .dims
        .iter()
        .flat_map(|&(n, m)| (0..config.trials).map(move |t| (n, m, t)))
        .collect()
}

/// Runs one suite: its fixed instances, then `trials` random instances per
/// dimension pair. Trials run in parallel and are reduced in order.
pub fn run_suite(suite: SuiteId, config: &TrialConfig) -> Result<SuiteReport> {
    config.validate()?;
    let tol = config.tol;
    let fixed = fixtures(suite);
    let random = instances(suite, config);
    let mut outcomes: Vec<(Vec<CheckOutcome>, Option<Counterexample>)> = fixed
        .iter()
        .map(|inst| {
            let checks = evaluate(inst, tol)?;
            let cx = checks.iter().any(|c| !c.passed).then(|| Counterexample::new(inst, tol, &checks));
            Ok((checks, cx))
        })
        .collect::<Result<_>>()?;
    let random_outcomes: Vec<Result<(Vec<CheckOutcome>, Option<Counterexample>)>> = random
        .par_iter()
        .map(|&(n, m, trial)| {
            let seed = trial_seed(config.seed, suite, n, m, trial);
            let inst = generate(suite, n, m, config.field, trial, seed)?;
            let checks = evaluate(&inst, tol)?;
            let cx = checks.iter().any(|c| !c.passed).then(|| Counterexample::new(&inst, tol, &checks));
            Ok((checks, cx))
        })
        .collect();
    for outcome in random_outcomes {
        outcomes.push(outcome?);
    }

    let mut summaries: Vec<CheckSummary> = Vec::new();
    let mut passes = 0;
    let mut worst_residual = f64::NEG_INFINITY;
    let mut counterexample = None;
    for (checks, cx) in outcomes.iter() {
        if checks.iter().all(|c| c.passed) {
            passes += 1;
        }
        for c in checks {
            worst_residual = worst_residual.max(c.residual);
            match summaries.iter_mut().find(|s| s.name == c.name) {
                Some(s) => {
                    s.evaluations += 1;
                    s.failures += usize::from(!c.passed);
                    s.worst_residual = s.worst_residual.max(c.residual);
                }
                None => summaries.push(CheckSummary {
                    name: c.name.clone(),
                    evaluations: 1,
                    failures: usize::from(!c.passed),
                    worst_residual: c.residual,
                    tolerance: c.tolerance,
                }),
            }
        }
        if counterexample.is_none() {
            counterexample = cx.clone();
        }
    }
    let trials = outcomes.len();
    let failures = trials - passes;
    let table = if suite == SuiteId::TruncatedShift {
        Some(remark24_demo(&fixed.iter().map(|i| i.n).collect::<Vec<_>>())?)
    } else {
        None
    };
    Ok(SuiteReport {
        suite,
        statement: suite.statement().to_owned(),
        trials,
        passes,
        failures,
        worst_residual: if worst_residual.is_finite() { worst_residual } else { 0.0 },
        passed: failures == 0,
        checks: summaries,
        counterexample,
        table,
    })
}

/// Runs every suite of the configuration.
pub fn verify(config: &TrialConfig) -> Result<VerificationReport> {
    config.validate()?;
    let start = Instant::now();
    let mut suites = Vec::new();
    let mut timings = Vec::new();
    for &suite in &config.suites {
        let t0 = Instant::now();
        suites.push(run_suite(suite, config)?);
        timings.push(SuiteTiming {
            suite,
            seconds: t0.elapsed().as_secs_f64(),
        });
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        passed: suites.iter().all(|s| s.passed),
        suites,
        timing: Timing {
            total_seconds: start.elapsed().as_secs_f64(),
            suites: timings,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suite: SuiteId, trials: usize) -> TrialConfig {
        TrialConfig {
            seed: 9,
            trials,
            dims: vec![(3, 3)],
            suites: vec![suite],
            ..TrialConfig::default()
        }
    }

    #[test]
    fn small_runs_pass() {
        for suite in SuiteId::ALL {
            let r = run_suite(suite, &config(suite, 6)).unwrap();
            assert!(r.passed, "{suite}: {:#?}", r.counterexample);
            assert_eq!(r.passes + r.failures, r.trials);
            assert!(r.counterexample.is_none());
        }
    }

    #[test]
    fn forced_failure_replays() {
        let mut cfg = config(SuiteId::NormLaws, 3);
        cfg.tol = 1e-300;
        let r = run_suite(SuiteId::NormLaws, &cfg).unwrap();
        assert!(r.failures > 0);
        let cx = r.counterexample.unwrap();
        let text = serde_json::to_string(&cx).unwrap();
        let back: Counterexample = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cx);
        let again = replay(&back, None).unwrap();
        let failed: Vec<_> = again.into_iter().filter(|c| !c.passed).collect();
        assert_eq!(failed, cx.failed_checks);
    }
}
