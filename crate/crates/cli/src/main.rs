//! `buchi`: command-line driver for qualitative Büchi-MDP analysis.
//!
//! Exit codes: 0 when every requested check passes, 1 on failed checks or
//! data errors, 2 on usage errors, 3 when an enumeration capacity guard
//! trips.

mod config;

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, ColorChoice, Parser, Subcommand};

use buchi_core::bounds::{
    gnp_certificate, large_k_certificate_with, small_k_certificate, stirling_check,
    very_large_k_certificate, BoundCertificate, C1_NUMERATOR,
};
use buchi_core::error::Error as CoreError;
use buchi_core::exact::{brute_force_r_np, eq1_report, format_decimal, parse_rational, RnpTable};
use buchi_core::mc::{run_experiment, scaling_study, write_csv, ModelSpec};
use buchi_core::mdp::Mdp;
use buchi_core::models::{trial_rng, DegreeEntry, DegreeSpec, GnpSpec, TargetSpec};
use buchi_core::oracle::oracle_almost_sure;
use buchi_core::solve::classical_buchi;

use config::RunConfig;

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

enum CliError {
    Usage(String),
    Capacity(String),
    /// A requested check evaluated to FAIL (message already printed).
    ChecksFailed,
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::ChecksFailed => 1,
            CliError::Other(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Capacity(msg) => CliError::Capacity(format!("capacity error: {msg}")),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "buchi",
    version,
    about = "Qualitative Büchi analysis of MDPs: solver, random models, exact \
             recurrences, bound certificates, Monte Carlo experiments",
    color = ColorChoice::Auto
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an MDP file (or stdin) with the classical algorithm
    Solve(SolveArgs),
    /// Generate a random MDP file
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run seeded Monte Carlo trials and report statistics
    Experiment(ExperimentArgs),
    /// Mean work/iterations across a grid of sizes, with a log-log fit
    Scaling(ScalingArgs),
    /// Exact rational computations
    #[command(subcommand)]
    Recurrence(RecurrenceCommand),
    /// Analytic bound certificates
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

#[derive(Args)]
struct SolveArgs {
    /// Input path, or `-` for stdin
    #[arg(default_value = "-")]
    input: String,
    /// Cross-check the winning set against the strategy-enumeration oracle
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Constant out-degree model (degree classes `d:a:t,...`)
    ConstDeg(GenConstDegArgs),
    /// Directed G(n,p)
    Gnp(GenGnpArgs),
}

#[derive(Args)]
struct GenConstDegArgs {
    /// Degree classes as `degree:count:targets`, comma separated
    #[arg(long)]
    degrees: String,
    /// Optional declared vertex count (checked against the class counts)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    player1_prob: f64,
    #[arg(long)]
    seed: u64,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct GenGnpArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability; accepts `num/den` or a decimal
    #[arg(long)]
    p: String,
    /// Büchi set size (placed uniformly at random)
    #[arg(long, default_value_t = 1)]
    targets: usize,
    #[arg(long, default_value_t = 0.5)]
    player1_prob: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Model: `const-deg`, `gnp`, or `worst-case`
    #[arg(long)]
    model: Option<String>,
    /// Read the model from a key-value spec file instead of flags
    #[arg(long)]
    config: Option<String>,
    /// Degree classes for const-deg, as `d:a:t,...`
    #[arg(long)]
    degrees: Option<String>,
    /// Vertex count for gnp
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for gnp (`num/den` or decimal)
    #[arg(long)]
    p: Option<String>,
    /// Büchi set size for gnp
    #[arg(long)]
    targets: Option<usize>,
    /// Stage count for worst-case
    #[arg(long)]
    stages: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    player1_prob: f64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// CSV output path for the per-trial records
    #[arg(long)]
    out: Option<String>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ScalingArgs {
    /// Model family: `const-deg`, `gnp`, or `worst-case`
    #[arg(long)]
    model: String,
    /// Uniform out-degree for the const-deg family
    #[arg(long)]
    d: Option<usize>,
    /// Target count for const-deg (default 1)
    #[arg(long)]
    t: Option<usize>,
    /// gnp edge probability coefficient: p = c ln(n) / n
    #[arg(long)]
    c: Option<f64>,
    /// Büchi set size for gnp (default 1)
    #[arg(long)]
    targets: Option<usize>,
    /// Grid of sizes (const-deg/gnp: n; worst-case: stages), comma separated
    #[arg(long)]
    grid: String,
    #[arg(long, default_value_t = 100)]
    trials_per: u64,
    #[arg(long, default_value_t = 0.5)]
    player1_prob: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum RecurrenceCommand {
    /// R(n, p): probability that every vertex reaches the target in G(n,p)
    Rnp(RnpArgs),
    /// Verify the size-distribution mass identity by full enumeration
    Eq1(Eq1Args),
}

#[derive(Args)]
struct RnpArgs {
    #[arg(long)]
    n: usize,
    /// Exact probability as `num/den` (or integer/decimal)
    #[arg(long)]
    p: String,
    /// Also run the labeled-digraph enumeration oracle and compare
    #[arg(long)]
    brute_force: bool,
    /// Target vertex for the brute-force oracle
    #[arg(long, default_value_t = 0)]
    target: usize,
    /// Significant digits for the decimal rendering
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

#[derive(Args)]
struct Eq1Args {
    /// Degree classes as `d:a:t,...`
    #[arg(long)]
    degrees: String,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Small-k envelope chain certificate
    SmallK(SmallKArgs),
    /// Linear-range (large-k) chain certificate
    LargeK(LargeKArgs),
    /// Near-full-range certificate, parameterized by l = n - k
    VeryLargeK(VeryLargeKArgs),
    /// G(n,p) tail-term chain certificate
    Gnp(GnpBoundsArgs),
    /// Binomial upper bounds from Stirling inequalities
    Stirling(StirlingArgs),
}

#[derive(Args)]
struct SmallKArgs {
    #[arg(long)]
    degrees: String,
    #[arg(long)]
    k: usize,
    /// Also write the certificate as JSON (`-` for stdout)
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct LargeKArgs {
    #[arg(long)]
    degrees: String,
    #[arg(long)]
    k: usize,
    /// Override the lower range constant (default 0.04 / d_max)
    #[arg(long)]
    c1: Option<f64>,
    /// Override the upper range constant (default 1 - 1/e^2)
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct VeryLargeKArgs {
    #[arg(long)]
    degrees: String,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct GnpBoundsArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability (`num/den` or decimal); alternative to --c-log
    #[arg(long)]
    p: Option<String>,
    /// Shorthand: p = C ln(n) / n
    #[arg(long)]
    c_log: Option<f64>,
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long)]
    l: u64,
    #[arg(long)]
    j: u64,
    #[arg(long)]
    json: Option<String>,
}

// ---------------------------------------------------------------------------
// Shared parsing helpers
// ---------------------------------------------------------------------------

fn parse_degrees(s: &str) -> Result<Vec<DegreeEntry>, CliError> {
    let mut entries = Vec::new();
    for part in s.split(',') {
        let fields: Vec<&str> = part.split(':').collect();
        if fields.len() != 3 {
            return Err(usage(format!(
                "bad degree class `{part}`: expected degree:count:targets"
            )));
        }
        let parse = |f: &str, what: &str| {
            f.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad {what} `{f}` in degree class `{part}`")))
        };
        entries.push(DegreeEntry {
            degree: parse(fields[0], "degree")?,
            count: parse(fields[1], "count")?,
            targets: parse(fields[2], "target count")?,
        });
    }
    Ok(entries)
}

fn parse_prob(s: &str) -> Result<f64, CliError> {
    let v = if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad probability `{s}`")))?;
        let b: f64 = b
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad probability `{s}`")))?;
        a / b
    } else {
        s.trim()
            .parse()
            .map_err(|_| usage(format!("bad probability `{s}`")))?
    };
    if !(0.0..=1.0).contains(&v) {
        return Err(usage(format!("probability {v} outside [0, 1]")));
    }
    Ok(v)
}

fn parse_grid(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad grid entry `{part}`")))
        })
        .collect()
}

fn vertex_set(ids: &[usize]) -> String {
    let inner: Vec<String> = ids.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(" "))
}

fn write_out(path: Option<&str>, content: &str) -> CliResult {
    match path {
        None | Some("-") => {
            print!("{content}");
            Ok(())
        }
        Some(p) => {
            fs::write(p, content)?;
            Ok(())
        }
    }
}

/// Prints the certificate (text + optional JSON) and reduces it to a
/// pass/fail exit status.
fn finish_certificate(cert: &BoundCertificate, json: Option<&str>, cfg: &RunConfig) -> CliResult {
    print!("{}", cfg.echo_comments());
    print!("{}", cert.to_text());
    if let Some(path) = json {
        let body =
            serde_json::to_string_pretty(cert).map_err(|e| CliError::Other(e.to_string()))?;
        match path {
            "-" => println!("{body}"),
            p => fs::write(p, body)?,
        }
    }
    if cert.all_pass() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_solve(args: &SolveArgs) -> CliResult {
    let text = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(&args.input)?
    };
    let mdp = Mdp::from_text(&text).map_err(|e| CliError::Other(e.to_string()))?;

    let mut cfg = RunConfig::new("solve");
    cfg.set("input", &args.input);
    cfg.set("oracle", args.oracle);
    cfg.set("n", mdp.n());
    cfg.set("edges", mdp.edge_count());
    print!("{}", cfg.echo_comments());

    let res = classical_buchi(&mdp);
    println!("winning = {}", vertex_set(&res.winning));
    println!("winning_size = {}", res.winning.len());
    println!("iterations = {}", res.iterations);
    for (i, removal) in res.removals.iter().enumerate() {
        println!("removal {} = {}", i + 1, vertex_set(removal));
    }
    println!("work = {}", res.work);

    if args.oracle {
        let slow = oracle_almost_sure(&mdp)?;
        if slow == res.winning {
            println!("PASS oracle agrees");
        } else {
            println!("FAIL oracle disagrees: {}", vertex_set(&slow));
            return Err(CliError::ChecksFailed);
        }
    }
    Ok(())
}

fn cmd_gen(cmd: &GenCommand) -> CliResult {
    match cmd {
        GenCommand::ConstDeg(args) => {
            let entries = parse_degrees(&args.degrees)?;
            let spec = match args.n {
                Some(n) => DegreeSpec::with_declared_n(entries, n),
                None => DegreeSpec::new(entries),
            }?;
            let mut cfg = RunConfig::new("gen");
            cfg.set("model", "const-deg");
            cfg.set("degrees", &args.degrees);
            cfg.set("player1_prob", format!("{:?}", args.player1_prob));
            cfg.set("seed", args.seed);
            let mut rng = trial_rng(args.seed, 0);
            let graph = buchi_core::models::sample_constant_outdegree(&spec, &mut rng);
            let mdp = buchi_core::models::to_mdp(
                graph,
                args.player1_prob,
                TargetSpec::Set(spec.canonical_targets()),
                &mut rng,
            )?;
            let content = format!("{}{}", cfg.echo_comments(), mdp.to_text());
            write_out(args.out.as_deref(), &content)
        }
        GenCommand::Gnp(args) => {
            let p = parse_prob(&args.p)?;
            let spec = GnpSpec {
                n: args.n,
                p,
                player1_prob: args.player1_prob,
                target_count: args.targets,
            };
            spec.validate()?;
            let mut cfg = RunConfig::new("gen");
            cfg.set("model", "gnp");
            cfg.set("n", args.n);
            cfg.set("p", format!("{p:?}"));
            cfg.set("targets", args.targets);
            cfg.set("player1_prob", format!("{:?}", args.player1_prob));
            cfg.set("seed", args.seed);
            let mut rng = trial_rng(args.seed, 0);
            let graph = buchi_core::models::sample_gnp(&spec, &mut rng);
            let mdp = buchi_core::models::to_mdp(
                graph,
                spec.player1_prob,
                TargetSpec::Count(spec.target_count),
                &mut rng,
            )?;
            let content = format!("{}{}", cfg.echo_comments(), mdp.to_text());
            write_out(args.out.as_deref(), &content)
        }
    }
}

/// Builds a model from a key-value spec file (the same format the reports
/// echo).
fn model_from_kv(cfg: &RunConfig) -> Result<ModelSpec, CliError> {
    let get_parsed = |key: &str| -> Result<f64, CliError> {
        cfg.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| usage(format!("bad {key} `{v}` in config")))
            })
            .unwrap_or(Ok(0.5))
    };
    match cfg.get("model") {
        Some("const-deg") => {
            let degrees = cfg
                .get("degrees")
                .ok_or_else(|| usage("config misses `degrees`"))?;
            let spec = DegreeSpec::new(parse_degrees(degrees)?)?;
            Ok(ModelSpec::ConstDeg {
                degrees: spec,
                player1_prob: get_parsed("player1_prob")?,
            })
        }
        Some("gnp") => {
            let n: usize = cfg
                .get("n")
                .ok_or_else(|| usage("config misses `n`"))?
                .parse()
                .map_err(|_| usage("bad `n` in config"))?;
            let p = parse_prob(cfg.get("p").ok_or_else(|| usage("config misses `p`"))?)?;
            let targets: usize = cfg
                .get("targets")
                .unwrap_or("1")
                .parse()
                .map_err(|_| usage("bad `targets` in config"))?;
            Ok(ModelSpec::Gnp(GnpSpec {
                n,
                p,
                player1_prob: get_parsed("player1_prob")?,
                target_count: targets,
            }))
        }
        Some("worst-case") => {
            let stages: usize = cfg
                .get("stages")
                .ok_or_else(|| usage("config misses `stages`"))?
                .parse()
                .map_err(|_| usage("bad `stages` in config"))?;
            Ok(ModelSpec::WorstCase { stages })
        }
        Some(other) => Err(usage(format!("unknown model `{other}` in config"))),
        None => Err(usage("config misses `model`")),
    }
}

fn experiment_model(args: &ExperimentArgs) -> Result<ModelSpec, CliError> {
    let model = match (&args.model, &args.config) {
        (Some(m), None) => m.clone(),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let cfg = RunConfig::from_kv(&text).map_err(CliError::Usage)?;
            return model_from_kv(&cfg);
        }
        (Some(_), Some(_)) => return Err(usage("--model and --config conflict; give one")),
        (None, None) => return Err(usage("one of --model or --config is required")),
    };
    match model.as_str() {
        "const-deg" => {
            let degrees = args
                .degrees
                .as_deref()
                .ok_or_else(|| usage("const-deg model requires --degrees"))?;
            let spec = DegreeSpec::new(parse_degrees(degrees)?)?;
            Ok(ModelSpec::ConstDeg {
                degrees: spec,
                player1_prob: args.player1_prob,
            })
        }
        "gnp" => {
            let n = args.n.ok_or_else(|| usage("gnp model requires --n"))?;
            let p = parse_prob(
                args.p
                    .as_deref()
                    .ok_or_else(|| usage("gnp model requires --p"))?,
            )?;
            let targets = args.targets.unwrap_or(1);
            Ok(ModelSpec::Gnp(GnpSpec {
                n,
                p,
                player1_prob: args.player1_prob,
                target_count: targets,
            }))
        }
        "worst-case" => {
            let stages = args
                .stages
                .ok_or_else(|| usage("worst-case model requires --stages"))?;
            Ok(ModelSpec::WorstCase { stages })
        }
        other => Err(usage(format!(
            "unknown model `{other}` (expected const-deg, gnp, or worst-case)"
        ))),
    }
}

fn cmd_experiment(args: &ExperimentArgs) -> CliResult {
    let model = experiment_model(args)?;
    let mut cfg = RunConfig::new("experiment");
    for line in model.to_kv().lines() {
        let (k, v) = line.split_once(" = ").expect("model kv shape");
        cfg.set(k, v);
    }
    cfg.set("trials", args.trials);
    cfg.set("seed", args.seed);
    cfg.set_opt("jobs", args.jobs);
    cfg.set_opt("out", args.out.as_deref());

    let (summary, records) = run_experiment(&model, args.trials, args.seed, args.jobs)?;
    if let Some(path) = &args.out {
        let mut file = fs::File::create(path)?;
        write_csv(&mut file, &model, args.seed, &records)?;
    }
    print!("{}", cfg.echo_comments());
    print!("{}", summary.to_text());
    Ok(())
}

fn cmd_scaling(args: &ScalingArgs) -> CliResult {
    let grid = parse_grid(&args.grid)?;
    let mut cfg = RunConfig::new("scaling");
    cfg.set("model", &args.model);
    cfg.set("grid", &args.grid);
    cfg.set("trials_per", args.trials_per);
    cfg.set("seed", args.seed);

    let p1 = args.player1_prob;
    let table = match args.model.as_str() {
        "const-deg" => {
            let d = args
                .d
                .ok_or_else(|| usage("const-deg family requires --d"))?;
            let t = args.t.unwrap_or(1);
            cfg.set("d", d);
            cfg.set("t", t);
            scaling_study(
                &move |n| ModelSpec::ConstDeg {
                    degrees: DegreeSpec::uniform(d, n, t).expect("valid family point"),
                    player1_prob: p1,
                },
                &grid,
                args.trials_per,
                args.seed,
                args.jobs,
            )?
        }
        "gnp" => {
            let c = args
                .c
                .ok_or_else(|| usage("gnp family requires --c (p = c ln n / n)"))?;
            let targets = args.targets.unwrap_or(1);
            cfg.set("c", c);
            cfg.set("targets", targets);
            scaling_study(
                &move |n| {
                    ModelSpec::Gnp(GnpSpec {
                        n,
                        p: c * (n as f64).ln() / n as f64,
                        player1_prob: p1,
                        target_count: targets,
                    })
                },
                &grid,
                args.trials_per,
                args.seed,
                args.jobs,
            )?
        }
        "worst-case" => scaling_study(
            &|stages| ModelSpec::WorstCase { stages },
            &grid,
            args.trials_per,
            args.seed,
            args.jobs,
        )?,
        other => return Err(usage(format!("unknown model family `{other}`"))),
    };

    print!("{}", cfg.echo_comments());
    println!("n,trials,mean_work,mean_iterations");
    for row in &table.rows {
        println!(
            "{},{},{:.3},{:.6}",
            row.n, row.trials, row.mean_work, row.mean_iterations
        );
    }
    println!("work_growth_exponent = {:.6}", table.work_growth_exponent);
    Ok(())
}

fn cmd_recurrence(cmd: &RecurrenceCommand) -> CliResult {
    match cmd {
        RecurrenceCommand::Rnp(args) => {
            let p = parse_rational(&args.p).map_err(CliError::from)?;
            let mut cfg = RunConfig::new("recurrence-rnp");
            cfg.set("n", args.n);
            cfg.set("p", &args.p);
            cfg.set("brute_force", args.brute_force);
            cfg.set("digits", args.digits);
            print!("{}", cfg.echo_comments());

            let mut table = RnpTable::new(p.clone())?;
            let value = table.value(args.n)?;
            println!("R = {value}");
            println!("R ~ {}", format_decimal(&value, args.digits));
            if args.brute_force {
                let oracle = brute_force_r_np(args.n, &p, args.target)?;
                println!("brute_force = {oracle}");
                println!("brute_force ~ {}", format_decimal(&oracle, args.digits));
                if oracle == value {
                    println!("PASS recurrence matches brute force");
                } else {
                    println!("FAIL recurrence != brute force");
                    return Err(CliError::ChecksFailed);
                }
            }
            Ok(())
        }
        RecurrenceCommand::Eq1(args) => {
            let spec = DegreeSpec::new(parse_degrees(&args.degrees)?)?;
            let mut cfg = RunConfig::new("recurrence-eq1");
            cfg.set("degrees", &args.degrees);
            print!("{}", cfg.echo_comments());

            let report = eq1_report(&spec)?;
            for (k, formula, enumerated) in &report.per_k {
                let tag = if formula == enumerated {
                    "PASS"
                } else {
                    "FAIL"
                };
                println!(
                    "{tag} alpha_{k}: formula {} ~ {}, enumeration {}",
                    formula,
                    format_decimal(formula, 12),
                    enumerated
                );
            }
            println!(
                "{} total mass = {}",
                if report.mass_ok() { "PASS" } else { "FAIL" },
                report.sum_formula
            );
            if report.pass {
                Ok(())
            } else {
                Err(CliError::ChecksFailed)
            }
        }
    }
}

fn cmd_bounds(cmd: &BoundsCommand) -> CliResult {
    match cmd {
        BoundsCommand::SmallK(args) => {
            let spec = DegreeSpec::new(parse_degrees(&args.degrees)?)?;
            let mut cfg = RunConfig::new("bounds-small-k");
            cfg.set("degrees", &args.degrees);
            cfg.set("k", args.k);
            let cert = small_k_certificate(&spec, args.k)?;
            finish_certificate(&cert, args.json.as_deref(), &cfg)
        }
        BoundsCommand::LargeK(args) => {
            let spec = DegreeSpec::new(parse_degrees(&args.degrees)?)?;
            let c1 = args.c1.unwrap_or(C1_NUMERATOR / spec.d_max() as f64);
            let c2 = args.c2.unwrap_or(1.0 - (-2.0f64).exp());
            let mut cfg = RunConfig::new("bounds-large-k");
            cfg.set("degrees", &args.degrees);
            cfg.set("k", args.k);
            cfg.set("c1", format!("{c1:?}"));
            cfg.set("c2", format!("{c2:?}"));
            let cert = large_k_certificate_with(&spec, args.k, c1, c2)?;
            finish_certificate(&cert, args.json.as_deref(), &cfg)
        }
        BoundsCommand::VeryLargeK(args) => {
            let spec = DegreeSpec::new(parse_degrees(&args.degrees)?)?;
            let mut cfg = RunConfig::new("bounds-very-large-k");
            cfg.set("degrees", &args.degrees);
            cfg.set("l", args.l);
            let cert = very_large_k_certificate(&spec, args.l)?;
            finish_certificate(&cert, args.json.as_deref(), &cfg)
        }
        BoundsCommand::Gnp(args) => {
            let p = match (&args.p, args.c_log) {
                (Some(p), None) => parse_prob(p)?,
                (None, Some(c)) => c * (args.n as f64).ln() / args.n as f64,
                (Some(_), Some(_)) => {
                    return Err(usage("--p and --c-log conflict; give exactly one"))
                }
                (None, None) => return Err(usage("one of --p or --c-log is required")),
            };
            let mut cfg = RunConfig::new("bounds-gnp");
            cfg.set("n", args.n);
            cfg.set("p", format!("{p:?}"));
            let cert = gnp_certificate(args.n, p)?;
            finish_certificate(&cert, args.json.as_deref(), &cfg)
        }
        BoundsCommand::Stirling(args) => {
            let mut cfg = RunConfig::new("bounds-stirling");
            cfg.set("l", args.l);
            cfg.set("j", args.j);
            let cert = stirling_check(args.l, args.j)?;
            finish_certificate(&cert, args.json.as_deref(), &cfg)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gen(cmd) => cmd_gen(cmd),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Scaling(args) => cmd_scaling(args),
        Command::Recurrence(cmd) => cmd_recurrence(cmd),
        Command::Bounds(cmd) => cmd_bounds(cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("usage error: {msg}"),
                CliError::Capacity(msg) => eprintln!("{msg}"),
                CliError::ChecksFailed => eprintln!("one or more checks failed"),
                CliError::Other(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
