//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use linrel::harness::report::SuiteReport;
use linrel::harness::{remark24_demo, run_suite, verify, SuiteId, TrialConfig};
use linrel::Field;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn config(suite: SuiteId, trials: usize, dims: &[(usize, usize)]) -> TrialConfig {
    TrialConfig {
        seed: 20240517,
        trials,
        dims: dims.to_vec(),
        field: Field::Complex,
        suites: vec![suite],
        ..TrialConfig::default()
    }
}

/// Summary of a suite run: pass counts and the worst residual relative to
/// its tolerance, plus the first failing check if any.
fn describe(r: &SuiteReport) -> String {
    let mut s = format!("{} {}/{} trials", r.suite, r.passes, r.trials);
    if let Some(worst) = r
        .checks
        .iter()
        .filter(|c| c.tolerance > 0.0)
        .max_by(|a, b| (a.worst_residual / a.tolerance).total_cmp(&(b.worst_residual / b.tolerance)))
    {
        s.push_str(&format!(
            ", tightest check '{}' {:.2e} vs {:.0e}",
            worst.name, worst.worst_residual, worst.tolerance
        ));
    }
    if let Some(cx) = &r.counterexample {
        if let Some(c) = cx.failed_checks.first() {
            s.push_str(&format!(
                ", first failure: trial {} '{}' residual {:.3e}",
                cx.trial, c.name, c.residual
            ));
        }
    }
    s
}

fn suite_outcome(suite: SuiteId, trials: usize, dims: &[(usize, usize)]) -> (bool, String) {
    match run_suite(suite, &config(suite, trials, dims)) {
        Ok(r) => (r.passed && r.trials >= trials * dims.len(), describe(&r)),
        Err(e) => (false, format!("{suite}: error {e}")),
    }
}

fn combine(parts: &[(bool, String)]) -> Outcome {
    Outcome::new(
        parts.iter().all(|(p, _)| *p),
        parts.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join("; "),
    )
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    Outcome::new(
        out.passed && elapsed < limit,
        format!("{}; {:.2} s (limit {} s)", out.detail, elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn arens_reconstruction() -> Outcome {
    timed(Duration::from_secs(10), || {
        combine(&[suite_outcome(SuiteId::OrthogonalSplit, 500, &[(2, 2), (4, 4), (6, 3)])])
    })
}

fn induced_equalities() -> Outcome {
    combine(&[suite_outcome(SuiteId::InducedNorms, 500, &[(4, 4)])])
}

fn norm_laws() -> Outcome {
    combine(&[suite_outcome(SuiteId::NormLaws, 500, &[(4, 4)])])
}

fn sum_decomposition() -> Outcome {
    combine(&[suite_outcome(SuiteId::SumDecomposition, 500, &[(4, 4)])])
}

fn difference_bounds() -> Outcome {
    combine(&[suite_outcome(SuiteId::DifferenceBounds, 500, &[(4, 4)])])
}

fn numerical_radius() -> Outcome {
    combine(&[suite_outcome(SuiteId::NumericalRadius, 500, &[(4, 4)])])
}

fn hermitian_suite() -> Outcome {
    combine(&[
        suite_outcome(SuiteId::HermitianStructure, 500, &[(4, 4)]),
        suite_outcome(SuiteId::HermitianBounds, 500, &[(4, 4)]),
        suite_outcome(SuiteId::HermitianNorm, 500, &[(4, 4)]),
    ])
}

fn relative_bounds() -> Outcome {
    combine(&[
        suite_outcome(SuiteId::BoundedPerturbation, 200, &[(4, 4)]),
        suite_outcome(SuiteId::InducedRelBound, 200, &[(4, 4)]),
    ])
}

fn sum_estimates() -> Outcome {
    combine(&[suite_outcome(SuiteId::SumEstimates, 200, &[(4, 4)])])
}

fn truncated_diagonal() -> Outcome {
    timed(Duration::from_secs(5), || match remark24_demo(&[4, 16, 64]) {
        Ok(rows) => {
            let mut worst: f64 = 0.0;
            for r in &rows {
                let n = r.n as f64;
                let expected = [n, 0.0, 1.0, 0.0, n - 1.0];
                for (got, want) in r.values().into_iter().zip(expected) {
                    worst = worst.max((got - want).abs());
                }
            }
            let rows_text: Vec<String> = rows
                .iter()
                .map(|r| {
                    let v = r.values();
                    format!("({}, {:.0}, {:.0}, {:.0}, {:.0}, {:.0})", r.n, v[0], v[1], v[2], v[3], v[4])
                })
                .collect();
            Outcome::new(
                worst <= 1e-9,
                format!("{} max deviation {worst:.2e}", rows_text.join(" ")),
            )
        }
        Err(e) => Outcome::new(false, format!("error {e}")),
    })
}

fn determinism() -> Outcome {
    let cfg = TrialConfig {
        seed: 42,
        ..TrialConfig::default()
    };
    let run = || verify(&cfg).and_then(|r| r.deterministic_json());
    match (run(), run()) {
        (Ok(a), Ok(b)) => Outcome::new(
            a == b,
            format!("two runs of all suites, {} bytes each, identical = {}", a.len(), a == b),
        ),
        (Err(e), _) | (_, Err(e)) => Outcome::new(false, format!("error {e}")),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("orthogonal splitting T = T_s ∔ T_inf", arens_reconstruction),
        ("induced-operator graph and point-norm equalities", induced_equalities),
        ("norm laws and representative independence", norm_laws),
        ("sum decomposition biconditional", sum_decomposition),
        ("difference inequalities", difference_bounds),
        ("|T| <= 2 Ĉ(T) and the nilpotent shift", numerical_radius),
        ("Hermitian structure, classes and norm", hermitian_suite),
        ("relative bounds of bounded perturbations", relative_bounds),
        ("sum estimates", sum_estimates),
        ("truncated diagonal table", truncated_diagonal),
        ("determinism of verify --suite all --seed 42", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        if !out.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if out.passed { "PASS" } else { "FAIL" },
            name,
            out.detail
        );
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
