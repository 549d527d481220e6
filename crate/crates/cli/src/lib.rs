//! Command dispatch for the `arcurve` binary. Every command returns a JSON
//! report wrapped in an envelope carrying the spec hash, the seed and the
//! degree windows used.

pub mod config;

use std::collections::BTreeMap;
use std::sync::Arc;

use arcurve::ar::{
    ar_factoring_check, gamma_for, ideal_module, push, verify_main_theorem, verify_syz_gamma,
    GammaDatum,
};
use arcurve::branches::gamma_prime;
use arcurve::decompose::decompose;
use arcurve::explore::explore_component;
use arcurve::module::GradedModule;
use arcurve::ring::HypersurfaceRing;
use arcurve::trace::oracle_agreement;
use arcurve::tube_example::tube_pipeline;
use arcurve::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use config::{ConfigError, JobSpec};

#[derive(Parser, Debug)]
#[command(name = "arcurve", version, about = "AR sequences and stable AR components over k[x,y]/(g)")]
pub struct Cli {
    /// Seed for randomized idempotent and isomorphism searches
    /// (falls back to AR_CURVE_SEED, then 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Half-width of the degree window for trace-oracle checks
    /// (default: deg g).
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Write the JSON report here; `explore` also writes a `.dot` file next
    /// to it.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Branches, value semigroups, Frobenius numbers and the gamma datum.
    RingInfo { spec: std::path::PathBuf },
    /// Run one verification suite; exit status 0 iff it passes.
    Verify {
        #[arg(value_enum)]
        which: Suite,
        spec: std::path::PathBuf,
    },
    /// Explore the stable AR component through the ideal (x^m, y^n).
    Explore {
        spec: std::path::PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// The AR sequence starting at a module.
    Push {
        spec: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "ideal")]
        module: Which,
    },
    /// Graded-indecomposable summands of a module.
    Decompose {
        spec: std::path::PathBuf,
        #[arg(long, value_enum, default_value = "ideal")]
        module: Which,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    MainTheorem,
    SyzGamma,
    TraceOracle,
    /// The worked tube example: theta, its block form, the degree table and
    /// the two-summand decomposition.
    TubeExample,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Ideal,
    Syz,
    Push,
    PushPush,
}

/// Exit statuses.
pub const PASS: i32 = 0;
pub const FAIL: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const INTERNAL_ERROR: i32 = 3;

pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
    /// Files to write, in order.
    pub files: Vec<(std::path::PathBuf, String)>,
}

enum Failure {
    Config(ConfigError),
    Core(Error),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Failure {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

#[derive(Serialize)]
struct Envelope {
    command: String,
    spec_hash: String,
    spec: BTreeMap<String, String>,
    seed: u64,
    windows: BTreeMap<String, (i64, i64)>,
    pass: bool,
    result: Value,
}

struct Report {
    pass: bool,
    windows: BTreeMap<String, (i64, i64)>,
    result: Value,
    dot: Option<String>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn seed_from_env() -> u64 {
    std::env::var("AR_CURVE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

fn load(path: &std::path::Path) -> Result<JobSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(JobSpec::parse(&text)?)
}

fn gamma(ring: &HypersurfaceRing, spec: &JobSpec) -> Result<GammaDatum, Failure> {
    Ok(gamma_for(ring, spec.branch()?)?)
}

fn ideal(ring: &Arc<HypersurfaceRing>) -> Result<GradedModule, Failure> {
    if ring.m.is_none() {
        return Err(Failure::Core(Error::Input("missing m, n: the ideal (x^m, y^n) is not set".into())));
    }
    Ok(ideal_module(ring)?)
}

fn module_for(which: Which, ring: &Arc<HypersurfaceRing>, gd: &GammaDatum) -> Result<GradedModule, Failure> {
    let i = ideal(ring)?;
    Ok(match which {
        Which::Ideal => i,
        Which::Syz => i.syz()?,
        Which::Push => push(&i, gd)?.middle,
        Which::PushPush => push(&push(&i, gd)?.middle, gd)?.middle,
    })
}

fn summands_json(m: &GradedModule, seed: u64) -> Result<Value, Failure> {
    let dec = decompose(m, seed)?;
    let parts = dec
        .parts
        .iter()
        .map(|x| {
            Ok(json!({
                "generators": x.gens(),
                "ranks": x.rank_vector()?,
                "presentation": x.pres.to_string(),
            }))
        })
        .collect::<Result<Vec<Value>, Error>>()?;
    Ok(json!({
        "module": m.label,
        "generators": m.gens(),
        "ranks": m.rank_vector()?,
        "nonfree_summands": parts,
        "free_generators": dec.free,
    }))
}

fn ring_info(ring: &HypersurfaceRing, spec: &JobSpec) -> Result<Report, Failure> {
    let branches = ring
        .branches()?
        .iter()
        .map(|br| {
            let gp = gamma_prime(br).map(|g| format!("{}/{}", g.num, g.den));
            json!({
                "branch": br.label(),
                "kind": to_value(&br.kind),
                "h": br.h.to_string(),
                "semigroup_generators": br.generators,
                "frobenius": br.frobenius,
                "conductor": br.conductor,
                "gamma_prime": gp.unwrap_or_else(|e| format!("unavailable: {e}")),
            })
        })
        .collect::<Vec<_>>();
    let gd = gamma(ring, spec)?;
    Ok(Report {
        pass: true,
        windows: BTreeMap::new(),
        result: json!({
            "ring": to_value(&ring.summary()),
            "branches": branches,
            "gamma": to_value(&gd.to_json()),
        }),
        dot: None,
    })
}

fn verify(which: Suite, ring: &Arc<HypersurfaceRing>, spec: &JobSpec, seed: u64, window: i64) -> Result<Report, Failure> {
    let mut windows = BTreeMap::new();
    match which {
        Suite::MainTheorem => {
            let gd = gamma(ring, spec)?;
            let rep = verify_main_theorem(&ideal(ring)?, &gd)?;
            windows.insert("end_generators".into(), rep.generator_window);
            Ok(Report {
                pass: rep.pass,
                windows,
                result: to_value(&rep),
                dot: None,
            })
        }
        Suite::SyzGamma => {
            let gd = gamma(ring, spec)?;
            let i = ideal(ring)?;
            let mid = push(&i, &gd)?.middle;
            let reps = [verify_syz_gamma(&i, &gd)?, verify_syz_gamma(&mid, &gd)?];
            Ok(Report {
                pass: reps.iter().all(|r| r.pass),
                windows,
                result: to_value(&reps),
                dot: None,
            })
        }
        Suite::TraceOracle => {
            let gd = gamma(ring, spec)?;
            let i = ideal(ring)?;
            let first = push(&i, &gd)?.middle;
            let second = push(&first, &gd)?.middle;
            let mut corpus = vec![i.syz()?, first];
            corpus.insert(0, i);
            corpus.extend(decompose(&second, seed)?.parts);
            let reps = corpus
                .iter()
                .map(|m| oracle_agreement(m, window))
                .collect::<Result<Vec<_>, _>>()?;
            windows.insert("endomorphism_degrees".into(), (-window, window));
            Ok(Report {
                pass: reps.iter().all(|r| r.pass),
                windows,
                result: to_value(&reps),
                dot: None,
            })
        }
        Suite::TubeExample => {
            let rep = tube_pipeline(ring, seed)?;
            Ok(Report {
                pass: rep.pass,
                windows,
                result: to_value(&rep),
                dot: None,
            })
        }
    }
}

fn explore(ring: &Arc<HypersurfaceRing>, spec: &JobSpec, depth: usize, seed: u64) -> Result<Report, Failure> {
    let gd = gamma(ring, spec)?;
    let i = ideal(ring)?;
    let ex = explore_component(&i, &gd, depth, seed)?;
    let tube = ex
        .certificate
        .as_ref()
        .map_or(true, |c| c.verdict.starts_with("tube"));
    let sub_ok = ex
        .subadditivity
        .as_ref()
        .map_or(true, |s| s.verdict != arcurve::quiver::Subadditivity::Fails);
    let pass = ex.violations.is_empty()
        && ex.value_conflicts.is_empty()
        && ex.e_avg_checks.iter().all(|c| c.pass)
        && sub_ok
        && tube;
    let mut windows = BTreeMap::new();
    let lo = i.min_gen().unwrap_or(0);
    windows.insert("sequence_exactness".into(), (lo, lo + 3 * ring.deg_g()));
    Ok(Report {
        pass,
        windows,
        result: to_value(&ex.to_json()?),
        dot: Some(ex.quiver.to_dot()),
    })
}

fn push_report(ring: &Arc<HypersurfaceRing>, spec: &JobSpec, which: Which, seed: u64) -> Result<Report, Failure> {
    let gd = gamma(ring, spec)?;
    let m = module_for(which, ring, &gd)?;
    let seq = push(&m, &gd)?;
    let fac = ar_factoring_check(&seq)?;
    let mut windows = BTreeMap::new();
    windows.insert("sequence_exactness".into(), seq.checks.window);
    let pass = seq.checks.mf.holds && seq.checks.exact && seq.checks.rank_additive && fac.pass();
    Ok(Report {
        pass,
        windows,
        result: json!({
            "gamma": to_value(&gd.to_json()),
            "alpha": seq.alpha.matrix.to_string(),
            "beta": seq.beta.to_string(),
            "xi": seq.pair.phi.to_string(),
            "eta": seq.pair.psi.to_string(),
            "checks": to_value(&seq.checks),
            "factoring": to_value(&fac),
            "left": summands_json(&seq.left, seed)?,
            "middle": summands_json(&seq.middle, seed)?,
            "right_generators": seq.right.gens(),
        }),
        dot: None,
    })
}

fn decompose_report(ring: &Arc<HypersurfaceRing>, spec: &JobSpec, which: Which, seed: u64) -> Result<Report, Failure> {
    let gd = gamma(ring, spec)?;
    let m = module_for(which, ring, &gd)?;
    Ok(Report {
        pass: true,
        windows: BTreeMap::new(),
        result: summands_json(&m, seed)?,
        dot: None,
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::RingInfo { .. } => "ring-info".into(),
        Command::Verify { which, .. } => format!(
            "verify {}",
            which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
        ),
        Command::Explore { .. } => "explore".into(),
        Command::Push { .. } => "push".into(),
        Command::Decompose { .. } => "decompose".into(),
    }
}

fn spec_path(c: &Command) -> &std::path::Path {
    match c {
        Command::RingInfo { spec }
        | Command::Verify { spec, .. }
        | Command::Explore { spec, .. }
        | Command::Push { spec, .. }
        | Command::Decompose { spec, .. } => spec,
    }
}

fn execute(cli: &Cli, spec: &JobSpec, seed: u64) -> Result<Report, Failure> {
    let ring = Arc::new(spec.ring()?);
    let window = cli.window.unwrap_or_else(|| ring.deg_g());
    match &cli.command {
        Command::RingInfo { .. } => ring_info(&ring, spec),
        Command::Verify { which, .. } => verify(*which, &ring, spec, seed, window),
        Command::Explore { depth, .. } => explore(&ring, spec, *depth, seed),
        Command::Push { module, .. } => push_report(&ring, spec, *module, seed),
        Command::Decompose { module, .. } => decompose_report(&ring, spec, *module, seed),
    }
}

fn failure_output(f: Failure) -> Output {
    let (status, kind, message) = match f {
        Failure::Config(e) => (INPUT_ERROR, "input", e.to_string()),
        Failure::Io(m) => (INPUT_ERROR, "input", m),
        Failure::Core(e) => match e {
            Error::Input(_) => (INPUT_ERROR, "input", e.to_string()),
            Error::Verification(_) => (FAIL, "verification", e.to_string()),
            Error::Certification(_) | Error::NoSolution(_) => (INTERNAL_ERROR, "certification", e.to_string()),
        },
    };
    Output {
        status,
        stdout: format!("{}\n", json!({ "error": kind, "message": message })),
        stderr: format!("error: {message}\n"),
        files: Vec::new(),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Output {
    let seed = cli.seed.unwrap_or_else(seed_from_env);
    let spec = match load(spec_path(&cli.command)) {
        Ok(s) => s,
        Err(f) => return failure_output(f),
    };
    let report = match execute(cli, &spec, seed) {
        Ok(r) => r,
        Err(f) => return failure_output(f),
    };
    let envelope = Envelope {
        command: command_name(&cli.command),
        spec_hash: spec.hash(),
        spec: spec.values(),
        seed,
        windows: report.windows,
        pass: report.pass,
        result: report.result,
    };
    let json = serde_json::to_string_pretty(&envelope).expect("reports serialize") + "\n";
    let mut files = Vec::new();
    if let Some(out) = &cli.out {
        files.push((out.clone(), json.clone()));
        if let Some(dot) = &report.dot {
            files.push((out.with_extension("dot"), dot.clone()));
        }
    }
    let stdout = match (cli.format, &report.dot) {
        (Format::Dot, Some(dot)) => dot.clone(),
        _ => json,
    };
    Output {
        status: if report.pass { PASS } else { FAIL },
        stdout,
        stderr: String::new(),
        files,
    }
}
