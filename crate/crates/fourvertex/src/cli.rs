//! Command-line front end. Every subcommand supports `--json` for
//! machine-readable output; exact values are emitted as decimal or `p/q`
//! strings so nothing is lost to floating point. Randomized commands use a
//! fixed default seed and take `--entropy` to opt into OS randomness.
//!
//! Exit codes: 0 success, 1 usage, 2 input validation, 3 infeasible parity
//! system, 4 size caps exceeded, 5 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::circuits::{circuit_sum_partition, classify, decompose};
use crate::estimator::{
    estimate_partition, prepare, sample_configuration_with, EstimateError, EstimatorConfig,
};
use crate::even_subgraph::exact_partition_from_even_capped;
use crate::graph::{
    instance_to_text, parse_instance, DartConfig, FourVertexInstance, InstanceError, Params,
    TooLarge, DEFAULT_ENUMERATION_CAP,
};
use crate::parity::{build_system, solve, SolveOutcome};
use crate::planar::{
    black_face_spin_sum, build_black_face_graph, canonical_label, planar_mixing_bound,
    trace_faces, two_color_faces, PlanarError,
};
use crate::rational::{parse_rational, rational_to_string};
use crate::windability::{check_windable, matchings, ConstraintFunction, Verdict};
use crate::worm::{WormError, WormKernel};

/// Fixed default seed so identical invocations are byte-identical.
pub const DEFAULT_SEED: u64 = 0x0004_7645;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "fourvertex",
    version,
    about = "Counting and sampling for the four-vertex model on 4-regular multigraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct InputArgs {
    /// Instance file (see README for the format).
    #[arg(long)]
    pub input: PathBuf,
    /// Override the normalized weight beta (decimal or p/q).
    #[arg(long)]
    pub beta: Option<String>,
    /// Override the raw weight a (requires --c).
    #[arg(long)]
    pub a: Option<String>,
    /// Override the raw weight c (requires --a).
    #[arg(long)]
    pub c: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact partition function by the brute-force oracle.
    Exact {
        #[command(flatten)]
        input: InputArgs,
        /// Enumeration cap in darts.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Circuit decomposition and agree/disagree classification.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build and solve the GF(2) flip system for the instance's weight.
    SolveParity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Ferromagnetic Ising / even-subgraph reduction.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run worm chains and report states.
    Worm {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        chains: u64,
        /// One of: trace, final, histogram.
        #[arg(long, default_value = "final")]
        report: String,
        /// Use OS entropy instead of the fixed default seed.
        #[arg(long)]
        entropy: bool,
        #[arg(long)]
        json: bool,
    },
    /// Randomized partition-function estimate (FPRAS pipeline).
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cap on worm steps per sample (default: the mixing-time bound).
        #[arg(long)]
        max_steps_per_level: Option<u64>,
        /// Median-of-means batch count override.
        #[arg(long)]
        batches: Option<usize>,
        /// Per-batch sample count override.
        #[arg(long)]
        batch_size: Option<usize>,
        #[arg(long)]
        entropy: bool,
        #[arg(long)]
        json: bool,
    },
    /// Draw approximate Gibbs configurations, one line per sample.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write samples to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        entropy: bool,
        #[arg(long)]
        json: bool,
    },
    /// Planar-path commands (require a rotation system and outer face).
    Planar {
        #[command(subcommand)]
        command: PlanarCommand,
    },
    /// Decide windability of a constraint function.
    Windable {
        /// Whitespace- or comma-separated table of 2^J nonnegative rationals.
        #[arg(long, conflicts_with = "fstar")]
        table: Option<String>,
        /// The four-vertex function with weights a and c.
        #[arg(long, num_args = 2, value_names = ["A", "C"])]
        fstar: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Mixing-time bound formulas.
    MixingBound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Evaluate the planar bound instead of the worm bound.
        #[arg(long)]
        planar: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check every exact route on an enumerable instance.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlanarCommand {
    /// Rewrite slot labels canonically and emit the relabeled instance.
    CanonicalLabel {
        #[command(flatten)]
        input: InputArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Partition function through the black-face reduction.
    Partition {
        #[command(flatten)]
        input: InputArgs,
        /// Cap on black faces for the exact spin sum.
        #[arg(long, default_value_t = crate::planar::DEFAULT_SPIN_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::new(EXIT_INPUT, e.to_string())
    }
}

impl From<TooLarge> for Failure {
    fn from(e: TooLarge) -> Self {
        Failure::new(EXIT_CAP, e.to_string())
    }
}

impl From<EstimateError> for Failure {
    fn from(e: EstimateError) -> Self {
        let code = match &e {
            EstimateError::NoFerroReduction(_) => EXIT_INFEASIBLE,
            EstimateError::TooLarge(_) => EXIT_CAP,
            EstimateError::Reduce(_) => EXIT_INFEASIBLE,
            EstimateError::InvariantViolation(_) => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<PlanarError> for Failure {
    fn from(e: PlanarError) -> Self {
        let code = match &e {
            PlanarError::MissingRotation
            | PlanarError::MissingOuterFace
            | PlanarError::NotPlanarEmbedding { .. }
            | PlanarError::BetaAtMostOne
            | PlanarError::NoInteriorEdges => EXIT_INPUT,
            PlanarError::NonBipartiteDual => EXIT_INTERNAL,
            PlanarError::TooLarge(_) => EXIT_CAP,
            PlanarError::Reduce(_) => EXIT_INFEASIBLE,
            PlanarError::Estimate(_) => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<WormError> for Failure {
    fn from(e: WormError) -> Self {
        Failure::new(EXIT_INPUT, e.to_string())
    }
}

struct Report {
    json: Value,
    text: String,
    exit: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            exit: EXIT_OK,
        }
    }
}

/// Entry point used by `main` and by integration tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    run_to_writer(args, &mut out)
}

pub fn run_to_writer<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; normalize the exit code.
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let json_requested = wants_json(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            if json_requested {
                let _ = writeln!(out, "{}", report.json);
            } else if !report.text.is_empty() {
                let _ = writeln!(out, "{}", report.text);
            }
            report.exit
        }
        Err(f) => {
            if json_requested {
                let _ = writeln!(out, "{}", json!({ "error": f.message }));
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Exact { json, .. }
        | Command::Decompose { json, .. }
        | Command::SolveParity { json, .. }
        | Command::Reduce { json, .. }
        | Command::Worm { json, .. }
        | Command::Estimate { json, .. }
        | Command::Sample { json, .. }
        | Command::Windable { json, .. }
        | Command::MixingBound { json, .. }
        | Command::Verify { json, .. } => *json,
        Command::Planar { command } => match command {
            PlanarCommand::CanonicalLabel { json, .. }
            | PlanarCommand::Partition { json, .. } => *json,
        },
    }
}

fn load_instance(args: &InputArgs) -> Result<FourVertexInstance, Failure> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| {
        Failure::new(
            EXIT_INPUT,
            format!("cannot read {}: {}", args.input.display(), e),
        )
    })?;
    let instance = parse_instance(&text)?;
    let params = match (&args.beta, &args.a, &args.c) {
        (Some(b), None, None) => Some(Params::Beta(parse_rational(b).ok_or_else(|| {
            Failure::new(EXIT_INPUT, "cannot parse --beta")
        })?)),
        (None, Some(a), Some(c)) => Some(Params::Raw {
            a: parse_rational(a)
                .ok_or_else(|| Failure::new(EXIT_INPUT, "cannot parse --a"))?,
            c: parse_rational(c)
                .ok_or_else(|| Failure::new(EXIT_INPUT, "cannot parse --c"))?,
        }),
        (None, None, None) => None,
        _ => {
            return Err(Failure::new(
                EXIT_INPUT,
                "give --beta alone or both --a and --c",
            ))
        }
    };
    match params {
        Some(p) => Ok(instance.with_params(p)?),
        None => Ok(instance),
    }
}

fn effective_seed(seed: u64, entropy: bool) -> u64 {
    if entropy {
        rand::random()
    } else {
        seed
    }
}

fn dispatch(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Exact { input, cap, .. } => {
            let instance = load_instance(&input)?;
            let z = instance.brute_force_partition_capped(cap)?;
            let s = rational_to_string(&z);
            Ok(Report::ok(json!({ "Z": s }), format!("Z = {}", s)))
        }
        Command::Decompose { input, .. } => {
            let instance = load_instance(&input)?;
            let dec = decompose(&instance);
            let graph = classify(&instance, &dec)
                .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            let circuits: Vec<Vec<String>> = dec
                .circuits()
                .iter()
                .map(|c| c.darts.iter().map(|d| d.to_string()).collect())
                .collect();
            let pairs: Vec<Value> = graph
                .edges()
                .iter()
                .map(|(&(i, j), c)| {
                    json!({ "i": i, "j": j, "agree": c.agree, "disagree": c.disagree })
                })
                .collect();
            let text = format!(
                "m = {}; {} interacting pairs; const_beta_exponent = {}, const_one_count = {}",
                graph.m(),
                pairs.len(),
                graph.const_beta_exponent(),
                graph.const_one_count()
            );
            Ok(Report::ok(
                json!({
                    "m": graph.m(),
                    "circuits": circuits,
                    "pairs": pairs,
                    "const_beta_exponent": graph.const_beta_exponent(),
                    "const_one_count": graph.const_one_count(),
                }),
                text,
            ))
        }
        Command::SolveParity { input, .. } => {
            let instance = load_instance(&input)?;
            let dec = decompose(&instance);
            let graph = classify(&instance, &dec)
                .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            let system = build_system(&graph, &instance.beta());
            match solve(&system) {
                SolveOutcome::Satisfiable(a) => {
                    let bits: Vec<u8> = a.values.iter().map(|&b| b as u8).collect();
                    Ok(Report::ok(
                        json!({ "feasible": true, "assignment": bits }),
                        format!("feasible; flips = {:?}", bits),
                    ))
                }
                SolveOutcome::Infeasible(w) => {
                    let witness: Vec<Value> = w
                        .constraints
                        .iter()
                        .map(|c| json!({ "i": c.i, "j": c.j, "rhs": c.rhs as u8 }))
                        .collect();
                    Ok(Report {
                        json: json!({ "feasible": false, "witness": witness }),
                        text: format!(
                            "infeasible; odd cycle through {} constraints",
                            w.constraints.len()
                        ),
                        exit: EXIT_INFEASIBLE,
                    })
                }
            }
        }
        Command::Reduce { input, .. } => {
            let instance = load_instance(&input)?;
            let pipeline = prepare(&instance)?;
            let ferro = &pipeline.ferro;
            let edges: Vec<Value> = ferro
                .edges()
                .iter()
                .map(|e| {
                    json!({
                        "u": e.u,
                        "v": e.v,
                        "beta_e": rational_to_string(&e.beta_e),
                        "x_e": rational_to_string(&e.x_e),
                    })
                })
                .collect();
            let text = format!(
                "m = {}; {} edges kept, {} dropped; prefactor = {}",
                ferro.m(),
                ferro.edges().len(),
                ferro.dropped_edges(),
                rational_to_string(ferro.prefactor())
            );
            Ok(Report::ok(
                json!({
                    "m": ferro.m(),
                    "edges": edges,
                    "dropped_edges": ferro.dropped_edges(),
                    "prefactor": rational_to_string(ferro.prefactor()),
                    "log_prefactor": ferro.log_prefactor(),
                    "log_even_normalizer": ferro.log_even_normalizer(),
                    "flips": pipeline.flips.iter().map(|&b| b as u8).collect::<Vec<u8>>(),
                }),
                text,
            ))
        }
        Command::Worm {
            input,
            steps,
            seed,
            chains,
            report,
            entropy,
            ..
        } => {
            let instance = load_instance(&input)?;
            let pipeline = prepare(&instance)?;
            let kernel = WormKernel::new(&pipeline.ferro)?;
            let seed = effective_seed(seed, entropy);
            run_worm_report(&kernel, steps, seed, chains, &report)
        }
        Command::Estimate {
            input,
            eps,
            delta,
            seed,
            max_steps_per_level,
            batches,
            batch_size,
            entropy,
            ..
        } => {
            let instance = load_instance(&input)?;
            if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
                return Err(Failure::new(EXIT_USAGE, "eps and delta must be in (0,1)"));
            }
            let mut config = EstimatorConfig::new(eps, delta, effective_seed(seed, entropy));
            config.max_steps_per_level = max_steps_per_level;
            config.batches = batches;
            config.batch_size = batch_size;
            let est = estimate_partition(&instance, &config)?;
            let text = format!(
                "ln Z ~= {:.6} (Z ~= {:.6e}); {} samples, seed {}",
                est.log_value,
                est.value(),
                est.samples_used,
                est.seed
            );
            Ok(Report::ok(
                json!({
                    "log_z": est.log_value,
                    "z": est.value(),
                    "eps": est.target_rel_error,
                    "delta": est.failure_prob,
                    "samples": est.samples_used,
                    "seed": est.seed,
                }),
                text,
            ))
        }
        Command::Sample {
            input,
            steps,
            count,
            seed,
            out,
            entropy,
            json: json_flag,
        } => {
            let instance = load_instance(&input)?;
            let pipeline = prepare(&instance)?;
            let seed = effective_seed(seed, entropy);
            let mut rng = <rand::rngs::SmallRng as rand::SeedableRng>::seed_from_u64(seed);
            let mut lines = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let config =
                    sample_configuration_with(&instance, &pipeline, steps, &mut rng)?;
                lines.push(config_line(&instance, &config));
            }
            let body = lines.join("\n");
            if let Some(path) = out {
                std::fs::write(&path, format!("{}\n", body)).map_err(|e| {
                    Failure::new(EXIT_INPUT, format!("cannot write {}: {}", path.display(), e))
                })?;
                Ok(Report::ok(
                    json!({ "count": count, "seed": seed, "written": path.display().to_string() }),
                    format!("wrote {} samples to {}", count, path.display()),
                ))
            } else if json_flag {
                Ok(Report::ok(
                    json!({ "count": count, "seed": seed, "configurations": lines }),
                    String::new(),
                ))
            } else {
                Ok(Report::ok(Value::Null, body))
            }
        }
        Command::Planar { command } => match command {
            PlanarCommand::CanonicalLabel { input, output, .. } => {
                let instance = load_instance(&input)?;
                let faces = trace_faces(&instance)?;
                let coloring = two_color_faces(&instance, &faces)?;
                let canonical = canonical_label(&instance, &faces, &coloring);
                let text = instance_to_text(&canonical);
                match output {
                    Some(path) => {
                        std::fs::write(&path, &text).map_err(|e| {
                            Failure::new(
                                EXIT_INPUT,
                                format!("cannot write {}: {}", path.display(), e),
                            )
                        })?;
                        Ok(Report::ok(
                            json!({ "written": path.display().to_string() }),
                            format!("wrote canonical labeling to {}", path.display()),
                        ))
                    }
                    None => Ok(Report::ok(json!({ "instance": text }), text.trim_end().to_string())),
                }
            }
            PlanarCommand::Partition { input, cap, .. } => {
                let instance = load_instance(&input)?;
                let faces = trace_faces(&instance)?;
                let coloring = two_color_faces(&instance, &faces)?;
                let bfg = build_black_face_graph(&instance, &faces, &coloring);
                let z = black_face_spin_sum(&instance, &bfg, cap)?;
                let canonical = canonical_label(&instance, &faces, &coloring) == instance;
                let s = rational_to_string(&z);
                let text = if canonical {
                    format!("Z = {}", s)
                } else {
                    format!("Z = {} (of the canonical labeling; input labels differ)", s)
                };
                Ok(Report::ok(
                    json!({
                        "Z": s,
                        "k": bfg.k(),
                        "self_loops": bfg.self_loops(),
                        "collapsed_edges": bfg.multiplicities().len(),
                        "canonical_input": canonical,
                    }),
                    text,
                ))
            }
        },
        Command::Windable { table, fstar, .. } => {
            let f = parse_constraint_function(table, fstar)?;
            let result =
                check_windable(&f).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
            let verdict = match result.verdict {
                Verdict::Windable => "windable",
                Verdict::Unwindable => "unwindable",
            };
            let mut payload = json!({ "verdict": verdict, "arity": f.arity() });
            if let Some(cert) = &result.certificate {
                let entries: Vec<Value> = cert
                    .iter()
                    .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                    .map(|(&(x, y, mi), v)| {
                        json!({
                            "x": format!("{:0width$b}", x, width = f.arity()),
                            "y": format!("{:0width$b}", y, width = f.arity()),
                            "matching": matching_label(x ^ y, mi),
                            "value": rational_to_string(v),
                        })
                    })
                    .collect();
                payload["certificate"] = Value::Array(entries);
            }
            if let Some(z) = result.failing_block {
                payload["failing_block"] =
                    Value::String(format!("{:0width$b}", z, width = f.arity()));
            }
            Ok(Report::ok(payload, verdict.to_string()))
        }
        Command::MixingBound {
            input, eps, planar, ..
        } => {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Failure::new(EXIT_USAGE, "eps must be in (0,1)"));
            }
            let instance = load_instance(&input)?;
            let (kind, bound) = if planar {
                ("planar", planar_mixing_bound(&instance, eps)?)
            } else {
                let pipeline = prepare(&instance)?;
                let kernel = WormKernel::new(&pipeline.ferro)?;
                ("worm", kernel.mixing_bound(eps)?)
            };
            Ok(Report::ok(
                json!({ "bound": bound, "eps": eps, "kind": kind }),
                format!("{} mixing bound at eps = {}: {:.4}", kind, eps, bound),
            ))
        }
        Command::Verify { input, cap, .. } => {
            let instance = load_instance(&input)?;
            verify_report(&instance, cap)
        }
    }
}

fn matching_label(z: u8, mi: usize) -> String {
    let ms = matchings(z);
    let m = &ms[mi];
    let mut parts: Vec<String> = m
        .pairs
        .iter()
        .map(|&(i, j)| format!("(x{},x{})", i + 1, j + 1))
        .collect();
    if let Some(s) = m.singleton {
        parts.push(format!("(x{})", s + 1));
    }
    parts.join("")
}

fn parse_constraint_function(
    table: Option<String>,
    fstar: Option<Vec<String>>,
) -> Result<ConstraintFunction, Failure> {
    if let Some(text) = table {
        let entries: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        return ConstraintFunction::from_strs(&entries)
            .ok_or_else(|| Failure::new(EXIT_INPUT, "cannot parse --table"));
    }
    if let Some(ac) = fstar {
        let a = parse_rational(&ac[0])
            .ok_or_else(|| Failure::new(EXIT_INPUT, "cannot parse a"))?;
        let c = parse_rational(&ac[1])
            .ok_or_else(|| Failure::new(EXIT_INPUT, "cannot parse c"))?;
        return Ok(ConstraintFunction::f_star(a, c));
    }
    Err(Failure::new(EXIT_USAGE, "give --table or --fstar"))
}

fn config_line(instance: &FourVertexInstance, config: &DartConfig) -> String {
    let mut s = String::with_capacity(instance.num_darts());
    for e in instance.edges() {
        s.push(if config.get(e.first) { '1' } else { '0' });
        s.push(if config.get(e.second) { '1' } else { '0' });
    }
    s
}

fn run_worm_report(
    kernel: &WormKernel,
    steps: u64,
    seed: u64,
    chains: u64,
    report: &str,
) -> Result<Report, Failure> {
    use rand::SeedableRng;
    let mut chain_values = Vec::new();
    let mut histogram: std::collections::BTreeMap<String, u64> = Default::default();
    for chain in 0..chains {
        let chain_seed = seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(chain);
        let mut rng = rand::rngs::SmallRng::seed_from_u64(chain_seed);
        let mut state = kernel.empty_state();
        let mut trace = Vec::new();
        for _ in 0..steps {
            kernel.step(&mut state, &mut rng);
            match report {
                "trace" => trace.push(format!("{:#x}", state.mask())),
                "histogram" => {
                    *histogram.entry(format!("{:#x}", state.mask())).or_insert(0) += 1
                }
                _ => {}
            }
        }
        match report {
            "trace" => chain_values.push(json!({ "chain": chain, "trace": trace })),
            "final" => chain_values.push(json!({
                "chain": chain,
                "mask": format!("{:#x}", state.mask()),
                "edges": state.edge_count(),
                "even": state.is_even(),
            })),
            "histogram" => {}
            other => {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("unknown report kind `{}`", other),
                ))
            }
        }
    }
    let json = match report {
        "histogram" => json!({ "steps": steps, "chains": chains, "seed": seed, "histogram": histogram }),
        _ => json!({ "steps": steps, "chains": chains, "seed": seed, "report": chain_values }),
    };
    Ok(Report::ok(
        json.clone(),
        serde_json::to_string_pretty(&json).unwrap_or_default(),
    ))
}

fn verify_report(instance: &FourVertexInstance, cap: usize) -> Result<Report, Failure> {
    let oracle = instance.brute_force_partition_capped(cap)?;
    let dec = decompose(instance);
    let circuit_sum = circuit_sum_partition(instance, &dec, cap)?;
    let mut checks = vec![("circuit_sum", circuit_sum == oracle)];
    let mut payload = json!({
        "Z_oracle": rational_to_string(&oracle),
        "Z_circuit_sum": rational_to_string(&circuit_sum),
    });
    let graph = classify(instance, &dec)
        .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    let system = build_system(&graph, &instance.beta());
    match solve(&system) {
        SolveOutcome::Satisfiable(assignment) => {
            payload["parity_feasible"] = json!(true);
            let fixed = graph.apply_flips(&assignment.values);
            let ferro = crate::even_subgraph::reduce(instance, &fixed)
                .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            let z_even = exact_partition_from_even_capped(&ferro, cap)?;
            payload["Z_even"] = json!(rational_to_string(&z_even));
            checks.push(("even_subgraph", z_even == oracle));
            let kernel = WormKernel::new(&ferro)?;
            let reversible = kernel.check_reversibility(crate::worm::DEFAULT_STATE_CAP)?;
            payload["reversible"] = json!(reversible);
            checks.push(("reversible", reversible));
            let bound = kernel.check_measure_lower_bound(crate::worm::DEFAULT_STATE_CAP)?;
            payload["measure_lower_bound"] = json!(bound);
            checks.push(("measure_lower_bound", bound));
        }
        SolveOutcome::Infeasible(_) => {
            payload["parity_feasible"] = json!(false);
        }
    }
    if instance.rotation().is_some() {
        let faces = trace_faces(instance)?;
        let coloring = two_color_faces(instance, &faces)?;
        let bfg = build_black_face_graph(instance, &faces, &coloring);
        let z_planar = black_face_spin_sum(instance, &bfg, cap)?;
        let canonical = canonical_label(instance, &faces, &coloring);
        let canonical_input = canonical == *instance;
        payload["canonical_input"] = json!(canonical_input);
        payload["Z_planar"] = json!(rational_to_string(&z_planar));
        let reference = if canonical_input {
            oracle.clone()
        } else {
            canonical.brute_force_partition_capped(cap)?
        };
        payload["Z_canonical_oracle"] = json!(rational_to_string(&reference));
        checks.push(("planar", z_planar == reference));
    }
    let all = checks.iter().all(|(_, ok)| *ok);
    payload["checks"] = json!(checks
        .iter()
        .map(|(name, ok)| json!({ "name": name, "ok": ok }))
        .collect::<Vec<_>>());
    payload["all_match"] = json!(all);
    let text = if all {
        format!(
            "all routes agree: Z = {}",
            rational_to_string(&oracle)
        )
    } else {
        let failing: Vec<&str> = checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect();
        format!("MISMATCH in: {}", failing.join(", "))
    };
    Ok(Report {
        json: payload,
        text,
        exit: if all { EXIT_OK } else { EXIT_INTERNAL },
    })
}

