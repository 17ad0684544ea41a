//! `hilb`: verification suites and Segre-number computations on the Fock
//! space of a model surface.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hilb_core::error::ModelError;
use hilb_core::fock::{goettsche_betti, FockVector};
use hilb_core::operators::{chern_char_class, total_chern_classes};
use hilb_core::poly::UnivPoly;
use hilb_core::rational::{self, Rational};
use hilb_core::segre::{
    check_conjecture, dm_coefficients, dm_linear_fit, known_dm, segre_number, segre_polynomial, CachedSampler,
    DirectSampler, FitOptions, SegreError, SegreSampler, ENGINE_VERSION,
};
use hilb_core::surface::{KClassSpec, SurfaceModel};
use hilb_core::verify;

#[derive(Parser)]
#[command(name = "hilb", version, about = "Exact computations on the cohomology of Hilbert schemes of points")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest weight any command may reach.
    #[arg(long, default_value_t = 8, global = true)]
    max_weight: u32,
    /// Largest projected basis size (monomials of weight at most n) any command may build.
    #[arg(long, default_value_t = 200_000, global = true)]
    max_basis: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute N_n numerically or as a polynomial in (d, pi, kappa, e).
    Segre {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        symbolic: bool,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Extract the linear coefficients d_1..d_m of log(sum N_n z^n).
    Dm {
        #[arg(long)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = DmMethod::Symbolic)]
        method: DmMethod,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Compare N_n with the closed-form series.
    Conjecture {
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Total Chern class (or Chern character) of a tautological bundle.
    Chern {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "O", allow_hyphen_values = true)]
        bundle: String,
        #[arg(long)]
        character: bool,
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DmMethod {
    /// Interpolate N_1..N_m, then take the formal logarithm.
    Symbolic,
    /// Fit each d_m as a linear form from numeric N_n.
    LinearFit,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    d: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pi: String,
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value_t = 0)]
    b2_extra: usize,
}

#[derive(Args)]
struct SamplingArgs {
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "HILB_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = FitOptions::default().seed)]
    seed: u64,
}

enum Status {
    Pass,
    Fail,
    Computed,
}

impl Status {
    fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Computed => "computed",
        }
    }
}

struct RunReport {
    command: &'static str,
    parameters: Map<String, Value>,
    result: Value,
    status: Status,
    counterexample: Option<String>,
    text: String,
}

enum Failure {
    Usage(String),
    Model(String),
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::Model(e.to_string())
    }
}

impl From<SegreError> for Failure {
    fn from(e: SegreError) -> Self {
        match e {
            SegreError::Model(m) => Failure::Model(m.to_string()),
            SegreError::Fit(f) => Failure::Usage(format!("interpolation failed: {f}")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => {
                    let mut out = json!({
                        "engine_version": ENGINE_VERSION,
                        "command": report.command,
                        "parameters": report.parameters,
                        "result": report.result,
                        "status": report.status.name(),
                    });
                    if let Some(c) = &report.counterexample {
                        out["counterexample"] = json!(c);
                    }
                    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
                }
            }
            match report.status {
                Status::Fail => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Model(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<RunReport, Failure> {
    match &cli.command {
        Command::Verify { suite, max_n, seed } => {
            let max_n = max_n.unwrap_or_else(|| verify::default_max_n(suite));
            guard(cli, max_n, 5)?;
            threads(1)?;
            cmd_verify(suite, max_n, *seed)
        }
        Command::Segre { n, symbolic, model, sampling } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let euler = if *symbolic { 4 + (*n as usize / 2) } else { 4 + model.b2_extra };
            guard(cli, *n, euler)?;
            threads(sampling.jobs)?;
            cmd_segre(*n, *symbolic, model, sampling)
        }
        Command::Dm { max_m, method, sampling } => {
            if *max_m == 0 {
                return Err(Failure::Usage("--max-m must be at least 1".into()));
            }
            let euler = match method {
                DmMethod::Symbolic => 4 + (*max_m as usize / 2),
                DmMethod::LinearFit => 5,
            };
            guard(cli, *max_m, euler)?;
            threads(sampling.jobs)?;
            cmd_dm(*max_m, *method, sampling)
        }
        Command::Conjecture { n_max, model } => {
            guard(cli, *n_max, 4 + model.b2_extra)?;
            threads(1)?;
            cmd_conjecture(*n_max, model)
        }
        Command::Chern { n, bundle, character, model } => {
            guard(cli, *n, 4 + model.b2_extra)?;
            threads(1)?;
            cmd_chern(*n, bundle, *character, model)
        }
    }
}

/// Refuses weights whose projected basis would be too large.
fn guard(cli: &Cli, n: u32, euler: usize) -> Result<(), Failure> {
    if n > cli.max_weight {
        return Err(Failure::Usage(format!("weight {n} exceeds --max-weight {}", cli.max_weight)));
    }
    let size: u64 = goettsche_betti(n, euler).iter().flatten().sum();
    if size > cli.max_basis {
        return Err(Failure::Usage(format!(
            "projected basis size {size} at weight {n} exceeds --max-basis {}",
            cli.max_basis
        )));
    }
    Ok(())
}

fn threads(jobs: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn parse_rational(name: &str, s: &str) -> Result<Rational, Failure> {
    rational::parse(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn build_model(m: &ModelArgs) -> Result<SurfaceModel, Failure> {
    let d = parse_rational("d", &m.d)?;
    let pi = parse_rational("pi", &m.pi)?;
    let kappa = parse_rational("kappa", &m.kappa)?;
    Ok(SurfaceModel::new(d, pi, kappa, m.b2_extra)?)
}

fn model_params(model: &SurfaceModel) -> Vec<(&'static str, Value)> {
    vec![
        ("d", json!(rational::render(model.d()))),
        ("pi", json!(rational::render(model.pi()))),
        ("kappa", json!(rational::render(model.kappa()))),
        ("b2_extra", json!(model.b2_extra())),
    ]
}

fn sampler(s: &SamplingArgs) -> Result<Box<dyn SegreSampler>, Failure> {
    match &s.cache {
        Some(path) => CachedSampler::open(path)
            .map(|c| Box::new(c) as Box<dyn SegreSampler>)
            .map_err(|e| Failure::Usage(format!("cache {}: {e}", path.display()))),
        None => Ok(Box::new(DirectSampler)),
    }
}

fn fit_options(s: &SamplingArgs) -> FitOptions {
    FitOptions { seed: s.seed, ..FitOptions::default() }
}

fn cmd_verify(suite: &str, max_n: u32, seed: u64) -> Result<RunReport, Failure> {
    let report = verify::run_suite(suite, max_n, seed).map_err(|e| {
        Failure::Usage(format!("{e}; expected one of: {}", verify::SUITES.join(", ")))
    })?;
    let passed = report.passed();
    Ok(RunReport {
        command: "verify",
        parameters: params(&[("suite", json!(suite)), ("max_n", json!(max_n)), ("seed", json!(seed))]),
        result: json!({
            "checks": report.checks,
            "details": report.details,
        }),
        status: if passed { Status::Pass } else { Status::Fail },
        counterexample: report.counterexample.clone(),
        text: report.to_string(),
    })
}

fn cmd_segre(n: u32, symbolic: bool, model: &ModelArgs, s: &SamplingArgs) -> Result<RunReport, Failure> {
    if symbolic {
        let poly = segre_polynomial(n, sampler(s)?.as_ref(), &fit_options(s))?;
        let map = poly.to_json();
        Ok(RunReport {
            command: "segre",
            parameters: params(&[("n", json!(n)), ("mode", json!("symbolic")), ("seed", json!(s.seed))]),
            result: json!({ "polynomial": poly.to_string(), "coefficients": map }),
            status: Status::Computed,
            counterexample: None,
            text: format!("{poly}\n{map}\n"),
        })
    } else {
        let m = build_model(model)?;
        let value = segre_number(n, &m);
        let mut p = vec![("n", json!(n)), ("mode", json!("numeric"))];
        p.extend(model_params(&m));
        Ok(RunReport {
            command: "segre",
            parameters: params(&p),
            result: json!(rational::render(&value)),
            status: Status::Computed,
            counterexample: None,
            text: format!("{}\n", rational::render(&value)),
        })
    }
}

fn cmd_dm(max_m: u32, method: DmMethod, s: &SamplingArgs) -> Result<RunReport, Failure> {
    let sampler = sampler(s)?;
    let opts = fit_options(s);
    let max_m = max_m as usize;
    let dms = match method {
        DmMethod::Symbolic => {
            let mut polys = vec![UnivPoly::constant(rational::int(1))];
            for n in 1..=max_m as u32 {
                polys.push(segre_polynomial(n, sampler.as_ref(), &opts)?);
            }
            dm_coefficients(max_m, &polys)
        }
        DmMethod::LinearFit => dm_linear_fit(max_m, sampler.as_ref(), &opts)?,
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, dm) in dms.iter().enumerate() {
        let m = i + 1;
        let table = known_dm(m);
        let verdict = match &table {
            Some(t) if t == dm => "matches table".to_string(),
            Some(t) => format!("MISMATCH with table value {t}"),
            None => "no table entry".to_string(),
        };
        text.push_str(&format!("d{m} = {dm}  {}  [{verdict}]\n", dm.to_json()));
        rows.push(json!({
            "m": m,
            "polynomial": dm.to_string(),
            "coefficients": dm.to_json(),
            "table": table.map(|t| t.to_string()),
            "matches_table": table_matches(dm, m),
        }));
    }
    let method_name = match method {
        DmMethod::Symbolic => "symbolic",
        DmMethod::LinearFit => "linear-fit",
    };
    Ok(RunReport {
        command: "dm",
        parameters: params(&[("max_m", json!(max_m)), ("method", json!(method_name)), ("seed", json!(s.seed))]),
        result: Value::Array(rows),
        status: Status::Computed,
        counterexample: None,
        text,
    })
}

fn table_matches(dm: &UnivPoly, m: usize) -> Option<bool> {
    known_dm(m).map(|t| &t == dm)
}

fn cmd_conjecture(n_max: u32, model: &ModelArgs) -> Result<RunReport, Failure> {
    let m = build_model(model)?;
    let report = check_conjecture(n_max, &m);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = String::from("n | engine | conjecture | equal\n");
    let mut rows = Vec::new();
    for r in &report.rows {
        let (e, c) = (rational::render(&r.engine), rational::render(&r.conjecture));
        text.push_str(&format!("{} | {e} | {c} | {}\n", r.n, yes(r.equal())));
        rows.push(json!({ "n": r.n, "engine": e, "conjecture": c, "equal": r.equal() }));
    }
    let pass = report.all_equal();
    let first_bad = report.rows.iter().find(|r| !r.equal()).map(|r| {
        format!(
            "n={}: engine {} vs conjecture {}",
            r.n,
            rational::render(&r.engine),
            rational::render(&r.conjecture)
        )
    });
    let mut p = vec![("n_max", json!(n_max))];
    p.extend(model_params(&m));
    Ok(RunReport {
        command: "conjecture",
        parameters: params(&p),
        result: Value::Array(rows),
        status: if pass { Status::Pass } else { Status::Fail },
        counterexample: first_bad,
        text,
    })
}

fn cmd_chern(n: u32, bundle: &str, character: bool, model: &ModelArgs) -> Result<RunReport, Failure> {
    let m = build_model(model)?;
    let u = KClassSpec::parse(bundle, &m).map_err(|e| Failure::Usage(e.to_string()))?;
    let total: FockVector = total_chern_classes(&u, n, &m).swap_remove(n as usize);
    let mut result = json!({ "chern_class": total.render() });
    let mut text = format!("{}\n", total.render());
    if character {
        let ch = chern_char_class(&u, n, &m);
        result["chern_character"] = json!(ch.render());
        text.push_str(&format!("ch: {}\n", ch.render()));
    }
    let mut p = vec![("n", json!(n)), ("bundle", json!(bundle)), ("character", json!(character))];
    p.extend(model_params(&m));
    Ok(RunReport {
        command: "chern",
        parameters: params(&p),
        result,
        status: Status::Computed,
        counterexample: None,
        text,
    })
}
