//! Command-line front end: `gen`, `check`, `verify` and `demo-remark24`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use linrel::harness::gen::{gen_relation, GenOptions};
use linrel::harness::report::SCHEMA_VERSION;
use linrel::harness::{parse_dims, remark24_demo, verify, Remark24Row, SuiteId, TrialConfig, SUITE_TOL};
use linrel::hermitian::{hermitian_report, is_hermitian, Definiteness, HermitianReport};
use linrel::io::{fmt_sig, write_relation, write_text, RelationFile};
use linrel::norms::{graph_norm, point_norm, relation_norm};
use linrel::{CVector, Error, Field, LinearRelation, Result, C64, DEFAULT_TOL};

/// Exit status for a run whose checks failed.
const EXIT_FAILED: u8 = 1;
/// Exit status for bad input, usage errors and domain errors.
const EXIT_INPUT: u8 = 2;

/// Largest deviation allowed in the truncated diagonal table.
const DEMO_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "linrel", version, about = "Linear relations: generate, inspect and verify")]
struct Cli {
    /// Rank and containment tolerance (verify: check tolerance).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed of the random generator.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File to write the JSON result to.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Scalar field, `real` or `complex`.
    #[arg(long, global = true)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random relation with prescribed dimensions.
    Gen(GenArgs),
    /// Print the structure and norms of a relation file.
    Check(CheckArgs),
    /// Run the randomized verification suites.
    Verify(VerifyArgs),
    /// Print the norm table of the truncated diagonal example.
    #[command(name = "demo-remark24")]
    DemoRemark24(DemoArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    dim_graph: Option<usize>,
    #[arg(long)]
    dim_mulpart: Option<usize>,
    #[arg(long)]
    dim_domain: Option<usize>,
    /// Generate a Hermitian relation (needs n = m).
    #[arg(long)]
    hermitian: bool,
    /// Definiteness class of a Hermitian relation.
    #[arg(long, requires = "hermitian")]
    definiteness: Option<Definiteness>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Point of the domain, as `1,0,-2` or a JSON list of numbers and `[re, im]` pairs.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated suite ids, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 100, value_parser = parse_trials)]
    trials: usize,
    /// Dimension pairs such as `4x4,6x3`.
    #[arg(long, default_value = "4x4")]
    dims: String,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// Truncation orders, each at least 2.
    #[arg(long, default_value = "4,16,64", value_delimiter = ',')]
    n_list: Vec<usize>,
}

fn parse_trials(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("trials must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Serialize)]
struct Dims {
    graph: usize,
    domain: usize,
    range: usize,
    mulpart: usize,
    kernel: usize,
}

impl Dims {
    fn of(t: &LinearRelation) -> Self {
        Dims {
            graph: t.dim(),
            domain: t.domain().dim(),
            range: t.range().dim(),
            mulpart: t.mulpart().dim(),
            kernel: t.nullspace().dim(),
        }
    }
}

#[derive(Debug, Serialize)]
struct PointReport {
    x: Vec<[f64; 2]>,
    point_norm: f64,
    graph_norm: f64,
    y0: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    schema_version: u32,
    field: Field,
    n: usize,
    m: usize,
    dims: Dims,
    relation_norm: f64,
    /// Absent for relations between different spaces.
    #[serde(skip_serializing_if = "Option::is_none")]
    is_hermitian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hermitian: Option<HermitianReport>,
    operator_part_dim: usize,
    multivalued_part_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<PointReport>,
}

#[derive(Debug, Serialize)]
struct DemoReport {
    schema_version: u32,
    tolerance: f64,
    passed: bool,
    rows: Vec<Remark24Row>,
}

/// Parses the binary's arguments, runs the command and maps the outcome to
/// an exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// `Ok(false)` means the command ran but its checks failed.
fn run(cli: Cli) -> Result<bool> {
    let tol = cli.tol;
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Precondition(format!("--tol must be positive, got {t}")));
        }
    }
    let out = cli.out.as_deref();
    let seed = cli.seed.unwrap_or(0);
    let field = cli.field.unwrap_or_default();
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, field, seed, tol.unwrap_or(DEFAULT_TOL), out),
        Command::Check(args) => cmd_check(&args, tol, out),
        Command::Verify(args) => cmd_verify(&args, field, seed, tol.unwrap_or(SUITE_TOL), out),
        Command::DemoRemark24(args) => cmd_demo(&args, out),
    }
}

fn print_dims(w: &mut impl Write, t: &LinearRelation) -> Result<()> {
    let d = Dims::of(t);
    writeln!(w, "dim T = {}", d.graph)?;
    writeln!(w, "dim D(T) = {}", d.domain)?;
    writeln!(w, "dim R(T) = {}", d.range)?;
    writeln!(w, "dim T(0) = {}", d.mulpart)?;
    writeln!(w, "dim N(T) = {}", d.kernel)?;
    Ok(())
}

fn cmd_gen(args: &GenArgs, field: Field, seed: u64, tol: f64, out: Option<&Path>) -> Result<bool> {
    if args.n == 0 || args.m == 0 {
        return Err(Error::Generator(format!("n and m must be positive, got {} and {}", args.n, args.m)));
    }
    let opts = GenOptions {
        dim_domain: args.dim_domain,
        dim_mulpart: args.dim_mulpart,
        dim_graph: args.dim_graph,
        hermitian: args.hermitian,
        definiteness: args.definiteness,
        leak: false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = gen_relation(&mut rng, args.n, args.m, field, &opts, tol)?;
    match out {
        Some(path) => {
            write_relation(path, &t)?;
            print_dims(&mut std::io::stdout().lock(), &t)?;
        }
        None => {
            println!("{}", serde_json::to_string_pretty(&RelationFile::from_relation(&t))?);
            print_dims(&mut std::io::stderr().lock(), &t)?;
        }
    }
    Ok(true)
}

/// Reads `1,0,-2` or a JSON list whose entries are numbers or `[re, im]`.
fn parse_vector(text: &str) -> Result<CVector> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Real(f64),
        Pair([f64; 2]),
    }
    let trimmed = text.trim();
    let entries: Vec<C64> = if trimmed.starts_with('[') {
        let parsed: Vec<Entry> =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("--x: {e}")))?;
        parsed
            .into_iter()
            .map(|e| match e {
                Entry::Real(re) => C64::new(re, 0.0),
                Entry::Pair([re, im]) => C64::new(re, im),
            })
            .collect()
    } else {
        trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map(|re| C64::new(re, 0.0))
                    .map_err(|_| Error::Parse(format!("--x: bad number '{}'", p.trim())))
            })
            .collect::<Result<_>>()?
    };
    if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Parse("--x: entries must be finite".into()));
    }
    Ok(CVector::from_vec(entries))
}

fn fmt_vector(v: &[[f64; 2]]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|[re, im]| if *im == 0.0 { fmt_sig(*re) } else { format!("[{}, {}]", fmt_sig(*re), fmt_sig(*im)) })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_check(args: &CheckArgs, tol: Option<f64>, out: Option<&Path>) -> Result<bool> {
    let mut file: RelationFile = serde_json::from_str(&std::fs::read_to_string(&args.file)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", args.file.display())))?;
    if tol.is_some() {
        file.tol = tol;
    }
    let t = file.to_relation()?;
    let point = match &args.x {
        Some(text) => {
            let x = parse_vector(text)?;
            if !x.iter().all(|&z| t.field().admits(z)) {
                return Err(Error::Parse("--x has complex entries but the relation is real".into()));
            }
            let y0 = t.image_of(&x)?.representative;
            Some(PointReport {
                x: linrel::field::to_pairs(&x),
                point_norm: point_norm(&t, &x)?,
                graph_norm: graph_norm(&t, &x)?,
                y0: linrel::field::to_pairs(&y0),
            })
        }
        None => None,
    };
    let is_herm = if t.n() == t.m() { Some(is_hermitian(&t)?) } else { None };
    let hermitian = if is_herm == Some(true) { Some(hermitian_report(&t)?) } else { None };
    let arens = t.arens_decompose();
    let report = CheckReport {
        schema_version: SCHEMA_VERSION,
        field: t.field(),
        n: t.n(),
        m: t.m(),
        dims: Dims::of(&t),
        relation_norm: relation_norm(&t).relation_norm,
        is_hermitian: is_herm,
        hermitian,
        operator_part_dim: arens.operator_part.dim(),
        multivalued_part_dim: arens.multivalued_part.dim(),
        point,
    };

    let mut w = std::io::stdout().lock();
    writeln!(w, "field = {}", report.field)?;
    writeln!(w, "n = {}, m = {}", report.n, report.m)?;
    print_dims(&mut w, &t)?;
    writeln!(w, "relation_norm = {}", fmt_sig(report.relation_norm))?;
    match (&report.hermitian, report.is_hermitian) {
        (Some(h), _) => {
            writeln!(w, "hermitian = yes")?;
            writeln!(w, "lower_bound = {}", fmt_sig(h.lower_bound))?;
            writeln!(w, "upper_bound = {}", fmt_sig(h.upper_bound))?;
            writeln!(w, "class = {}", h.class)?;
        }
        (None, Some(_)) => writeln!(w, "hermitian = no")?,
        (None, None) => writeln!(w, "hermitian = n/a")?,
    }
    writeln!(
        w,
        "arens: dim T_s = {}, dim T_inf = {}",
        report.operator_part_dim, report.multivalued_part_dim
    )?;
    if let Some(p) = &report.point {
        writeln!(w, "point_norm = {}", fmt_sig(p.point_norm))?;
        writeln!(w, "graph_norm = {}", fmt_sig(p.graph_norm))?;
        writeln!(w, "y0 = {}", fmt_vector(&p.y0))?;
    }
    if let Some(path) = out {
        write_text(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs, field: Field, seed: u64, tol: f64, out: Option<&Path>) -> Result<bool> {
    let config = TrialConfig {
        seed,
        trials: args.trials,
        dims: parse_dims(&args.dims)?,
        field,
        tol,
        suites: SuiteId::parse_list(&args.suite)?,
    };
    let report = verify(&config)?;
    let mut w = std::io::stdout().lock();
    for s in &report.suites {
        writeln!(
            w,
            "{:<13} {}  {}/{}  worst residual {}",
            s.suite.as_str(),
            if s.passed { "PASS" } else { "FAIL" },
            s.passes,
            s.trials,
            fmt_sig(s.worst_residual)
        )?;
        if let Some(cx) = &s.counterexample {
            for c in &cx.failed_checks {
                writeln!(
                    w,
                    "    trial {} ({}x{}): {} residual {} > {}",
                    cx.trial,
                    cx.n,
                    cx.m,
                    c.name,
                    fmt_sig(c.residual),
                    fmt_sig(c.tolerance)
                )?;
            }
        }
    }
    writeln!(w, "{}", if report.passed { "all suites passed" } else { "verification FAILED" })?;
    if let Some(path) = out {
        write_text(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(report.passed)
}

fn cmd_demo(args: &DemoArgs, out: Option<&Path>) -> Result<bool> {
    let rows = remark24_demo(&args.n_list)?;
    let passed = rows.iter().all(|r| {
        let n = r.n as f64;
        let expected = [n, 0.0, 1.0, 0.0, n - 1.0];
        r.values().iter().zip(expected).all(|(got, want)| (got - want).abs() <= DEMO_TOL)
    });
    let mut w = std::io::stdout().lock();
    writeln!(w, "{:>6} {:>14} {:>14} {:>14} {:>14} {:>14}", "N", "|T|", "|S1|", "|S2|", "|S1-T|", "|S2-T|")?;
    for r in &rows {
        let v = r.values();
        writeln!(
            w,
            "{:>6} {:>14} {:>14} {:>14} {:>14} {:>14}",
            r.n,
            fmt_sig(v[0]),
            fmt_sig(v[1]),
            fmt_sig(v[2]),
            fmt_sig(v[3]),
            fmt_sig(v[4])
        )?;
    }
    writeln!(w, "{}", if passed { "matches (N, 0, 1, 0, N - 1)" } else { "MISMATCH with (N, 0, 1, 0, N - 1)" })?;
    if let Some(path) = out {
        let report = DemoReport {
            schema_version: SCHEMA_VERSION,
            tolerance: DEMO_TOL,
            passed,
            rows,
        };
        write_text(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(passed)
}
