//! Command-line surface: one-off bound and oracle queries, desk-scale
//! sweeps comparing the two, the boundary counterexample family, and
//! family-file verification.
//!
//! Exit codes are a contract: 0 success or attainment, 1 usage or parse
//! errors, 2 violated preconditions, 3 resource caps, 4 a valid but
//! suboptimal family pair, 5 a pair that is not cross t-intersecting,
//! and 6 a sweep that found a bound/oracle mismatch. All counts print as
//! exact decimal strings.

use std::fs;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bipgraph::{build_model, BipartiteModel, BuildError, ModelConfig};
use crate::bounds::{bound, BoundReport, BoundsError, FamilySpec, Side, SpecError};
use crate::exactnum::{binomial, BigNat};
use crate::extremal::{load_family_file, uniqueness_report, verify_attainment, ExtremalError};
use crate::oracle::{
    run_oracle, MethodChoice, OracleError, OracleOptions, OracleResult, DEFAULT_EXHAUSTIVE_CAP,
};
use crate::setworld;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_SUBOPTIMAL: i32 = 4;
pub const EXIT_NOT_CROSS: i32 = 5;
pub const EXIT_SWEEP_MISMATCH: i32 = 6;

/// Sweep rows whose smaller side is at most this large get the full
/// uniqueness comparison; larger ones report "skipped".
const SWEEP_UNIQUENESS_CAP: usize = 15;

/// Largest family the counterexample command checks pairwise.
const COUNTEREXAMPLE_FAMILY_CAP: u32 = 5_000;

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Bound(args) => cmd_bound(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Counterexample(args) => cmd_counterexample(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Probe(args) => cmd_probe(&args),
    }
}

#[derive(Parser)]
#[command(
    name = "crosscap",
    version,
    about = "Exact bounds and independence oracles for cross t-intersecting families",
    after_help = "Exit codes: 0 success or attainment, 1 usage or parse error, \
                  2 violated precondition, 3 resource cap, 4 valid but suboptimal \
                  family pair, 5 not cross t-intersecting, 6 sweep mismatch."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form bound for one instance.
    Bound(InstanceArgs),
    /// Run the independence oracle for one instance.
    Oracle(OracleArgs),
    /// Compare bound and oracle over every valid instance within limits.
    Sweep(SweepArgs),
    /// Show why max R + max S - t < n cannot be dropped.
    Counterexample(CounterexampleArgs),
    /// Check a family file for cross-intersection and attainment.
    Verify(VerifyArgs),
    /// Print the layer structure of one instance's bipartite model.
    Probe(InstanceArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Ambient world.
    #[arg(long, value_enum)]
    world: WorldArg,
    /// Ground set size (sets) or ambient dimension (subspaces).
    #[arg(long)]
    n: u32,
    /// Field order; required for subspaces, forbidden for sets.
    #[arg(long)]
    q: Option<u64>,
    /// Comma-separated sizes for the A side, e.g. "1,2".
    #[arg(long = "R", value_parser = parse_size_list)]
    r_sizes: SizeList,
    /// Comma-separated sizes for the B side.
    #[arg(long = "S", value_parser = parse_size_list)]
    s_sizes: SizeList,
    /// Required intersection size.
    #[arg(long)]
    t: u32,
    /// Emit the report as one JSON object instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WorldArg {
    Sets,
    Subspaces,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SizeList(Vec<u32>);

fn parse_size_list(s: &str) -> Result<SizeList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in size list".into());
        }
        out.push(
            part.parse::<u32>()
                .map_err(|e| format!("bad size {part:?}: {e}"))?,
        );
    }
    Ok(SizeList(out))
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Oracle selection; auto runs exhaustively when the smaller side
    /// fits under the cap and falls back to matching otherwise.
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Check every non-adjacent pair in the matching oracle instead of
    /// one representative per layer.
    #[arg(long)]
    paranoid: bool,
    /// With the matching oracle, also scan for fragments of at most this
    /// many members.
    #[arg(long)]
    max_fragment_size: Option<usize>,
    /// Largest side size the exhaustive scan accepts.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    exhaustive_cap: usize,
    /// Write the model's edge list ("xIndex yIndex" per line) to a file.
    #[arg(long)]
    dump_graph: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    Matching,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Exhaustive => MethodChoice::Exhaustive,
            MethodArg::Matching => MethodChoice::Matching,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Which worlds to cover.
    #[arg(long, value_enum, default_value = "both")]
    world: SweepWorldArg,
    /// Largest n to enumerate.
    #[arg(long)]
    n_max: u32,
    /// Largest element allowed in R and S.
    #[arg(long)]
    m_max: u32,
    /// Comma-separated field orders for the subspace world.
    #[arg(long, value_parser = parse_q_list, default_value = "2")]
    q_list: QList,
    /// Worker threads for row evaluation (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Rows whose smaller side exceeds this skip the uniqueness column.
    #[arg(long, default_value_t = SWEEP_UNIQUENESS_CAP)]
    uniqueness_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepWorldArg {
    Sets,
    Subspaces,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct QList(Vec<u64>);

fn parse_q_list(s: &str) -> Result<QList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty entry in field order list".into());
        }
        out.push(
            part.parse::<u64>()
                .map_err(|e| format!("bad field order {part:?}: {e}"))?,
        );
    }
    Ok(QList(out))
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Subset size of the all-z-subsets pair; n is set to 2z - 1.
    #[arg(long)]
    z: u32,
    /// Emit the report as one JSON object instead of text lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON family file to check.
    #[arg(long)]
    family_file: PathBuf,
    /// Emit the report as one JSON object instead of text lines.
    #[arg(long)]
    json: bool,
}

fn build_spec(args: &InstanceArgs) -> Result<FamilySpec, SpecError> {
    match args.world {
        WorldArg::Sets => {
            if args.q.is_some() {
                return Err(SpecError::QMismatch);
            }
            FamilySpec::sets(args.n, args.r_sizes.0.clone(), args.s_sizes.0.clone(), args.t)
        }
        WorldArg::Subspaces => {
            let q = args.q.ok_or(SpecError::QMismatch)?;
            FamilySpec::subspaces(args.n, q, args.r_sizes.0.clone(), args.s_sizes.0.clone(), args.t)
        }
    }
}

fn print_spec_line(spec: &FamilySpec) {
    match spec.q {
        Some(q) => println!(
            "world {} n {} q {} R {} S {} t {}",
            spec.world, spec.n, q, spec.r_sizes, spec.s_sizes, spec.t
        ),
        None => println!(
            "world {} n {} R {} S {} t {}",
            spec.world, spec.n, spec.r_sizes, spec.s_sizes, spec.t
        ),
    }
}

fn cmd_bound(args: &InstanceArgs) -> i32 {
    let spec = match build_spec(args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    match bound(&spec) {
        Ok(report) => {
            if args.json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                print_bound_text(&spec, &report);
            }
            EXIT_OK
        }
        Err(BoundsError::PreconditionViolated { hypothesis }) => {
            eprintln!("precondition violated: {hypothesis}");
            EXIT_PRECONDITION
        }
    }
}

fn print_bound_text(spec: &FamilySpec, report: &BoundReport) {
    print_spec_line(spec);
    println!("branch_A_singleton {}", report.branch_a_singleton);
    println!("branch_B_singleton {}", report.branch_b_singleton);
    println!("bound {}", report.bound);
    println!("attaining_side {}", report.attaining_side);
    println!("case {}", report.case_label);
}

/// Sets beyond this many ground elements have no machine-word encoding.
fn representable(spec: &FamilySpec) -> bool {
    spec.q.is_some() || spec.n <= 63
}

fn cmd_oracle(args: &OracleArgs) -> i32 {
    let spec = match build_spec(&args.instance) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    if !representable(&spec) {
        eprintln!("resource cap: ground sets beyond 63 elements are not representable");
        return EXIT_RESOURCE;
    }
    let model = match build_model(&spec, &ModelConfig::default()) {
        Ok(m) => m,
        Err(e @ BuildError::BudgetExceeded { .. }) => {
            eprintln!("{e}");
            return EXIT_RESOURCE;
        }
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &args.dump_graph {
        if let Err(e) = dump_graph(&model, path) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let opts = OracleOptions {
        method: args.method.into(),
        exhaustive_cap: args.exhaustive_cap,
        paranoid: args.paranoid,
        max_fragment_size: args.max_fragment_size,
    };
    match run_oracle(&model, &opts) {
        Ok(res) => {
            if args.instance.json {
                println!("{}", serde_json::to_string(&res).unwrap());
            } else {
                print_oracle_text(&res);
            }
            EXIT_OK
        }
        Err(e @ OracleError::CapExceeded { .. }) => {
            eprintln!("{e}");
            EXIT_RESOURCE
        }
        // Complete bipartite models have no nontrivial independent set;
        // alpha does not exist there, which only happens when the
        // preconditions already fail.
        Err(e @ OracleError::NoNontrivialIndependentSet) => {
            eprintln!("{e}");
            EXIT_PRECONDITION
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

fn print_oracle_text(res: &OracleResult) {
    println!("alpha {}", res.alpha);
    println!("epsilonX {}", res.epsilon_x);
    println!("epsilonY {}", res.epsilon_y);
    match &res.fragments_x {
        Some(f) => println!("fragmentsX {}", f.len()),
        None => println!("fragmentsX unknown"),
    }
    match &res.fragments_y {
        Some(f) => println!("fragmentsY {}", f.len()),
        None => println!("fragmentsY unknown"),
    }
    println!("complete {}", res.complete);
    println!("method {}", res.method);
}

fn dump_graph(model: &BipartiteModel, path: &Path) -> std::io::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    let mut failed = None;
    model.for_each_edge(|x, y| {
        if failed.is_none() {
            if let Err(e) = writeln!(out, "{x} {y}") {
                failed = Some(e);
            }
        }
    });
    match failed {
        Some(e) => Err(e),
        None => out.flush(),
    }
}

struct SweepRow {
    line: String,
    matched: Option<bool>,
}

fn cmd_sweep(args: &SweepArgs) -> i32 {
    if args.m_max > 16 {
        eprintln!("--m-max beyond 16 is not supported (the size-set space doubles per step)");
        return EXIT_USAGE;
    }
    let specs = match sweep_specs(args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let eval = || {
        specs
            .par_iter()
            .map(|spec| sweep_row(spec, args.uniqueness_cap))
            .collect::<Vec<SweepRow>>()
    };
    let rows = match args.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(eval),
            Err(e) => {
                eprintln!("cannot build worker pool: {e}");
                return EXIT_USAGE;
            }
        },
        None => eval(),
    };
    println!("# crosscap-sweep v1");
    println!("world,n,q,R,S,t,bound,alpha,match,case,uniqueness");
    let mut matches = 0usize;
    let mut mismatches = 0usize;
    let mut skipped = 0usize;
    for row in &rows {
        println!("{}", row.line);
        match row.matched {
            Some(true) => matches += 1,
            Some(false) => mismatches += 1,
            None => skipped += 1,
        }
    }
    println!(
        "# summary: rows {}, match {matches}, mismatch {mismatches}, skipped {skipped}",
        rows.len()
    );
    if mismatches > 0 {
        EXIT_SWEEP_MISMATCH
    } else {
        EXIT_OK
    }
}

/// Every spec within the limits whose structural checks and theorem
/// preconditions both pass.
fn sweep_specs(args: &SweepArgs) -> Result<Vec<FamilySpec>, SpecError> {
    let mut qs: Vec<Option<u64>> = Vec::new();
    if matches!(args.world, SweepWorldArg::Sets | SweepWorldArg::Both) {
        qs.push(None);
    }
    if matches!(args.world, SweepWorldArg::Subspaces | SweepWorldArg::Both) {
        for &q in &args.q_list.0 {
            qs.push(Some(q));
        }
    }
    let mut specs = Vec::new();
    for &q in &qs {
        for n in 1..=args.n_max {
            if q.is_none() && n > 63 {
                break;
            }
            let m = args.m_max.min(n);
            for r_mask in 1u32..(1u32 << m) {
                let r_sizes = mask_sizes(r_mask);
                for s_mask in 1u32..(1u32 << m) {
                    let s_sizes = mask_sizes(s_mask);
                    let r = *r_sizes.last().unwrap();
                    let s = *s_sizes.last().unwrap();
                    let t_hi = r_sizes[0].min(s_sizes[0]);
                    let t_lo = if r + s >= n { r + s - n + 1 } else { 1 };
                    for t in t_lo.max(1)..=t_hi {
                        let spec = match q {
                            None => FamilySpec::sets(n, r_sizes.clone(), s_sizes.clone(), t)?,
                            Some(q) => {
                                FamilySpec::subspaces(n, q, r_sizes.clone(), s_sizes.clone(), t)?
                            }
                        };
                        specs.push(spec);
                    }
                }
            }
        }
    }
    Ok(specs)
}

fn mask_sizes(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn sweep_row(spec: &FamilySpec, uniqueness_cap: usize) -> SweepRow {
    let report = bound(spec).expect("the sweep enumerates only precondition-satisfying instances");
    let q_col = spec.q.map_or(String::new(), |q| q.to_string());
    let prefix = format!(
        "{},{},{},{},{},{}",
        spec.world,
        spec.n,
        q_col,
        join_sizes(spec.r_sizes.as_slice()),
        join_sizes(spec.s_sizes.as_slice()),
        spec.t
    );
    let skipped = |bound: &BigNat| SweepRow {
        line: format!("{prefix},{bound},,skipped,{},skipped", report.case_label),
        matched: None,
    };
    let model = match build_model(spec, &ModelConfig::default()) {
        Ok(m) => m,
        Err(_) => return skipped(&report.bound),
    };
    let opts = OracleOptions {
        method: MethodChoice::Matching,
        ..OracleOptions::default()
    };
    let alpha = match run_oracle(&model, &opts) {
        Ok(res) => res.alpha,
        Err(_) => return skipped(&report.bound),
    };
    let matched = alpha == report.bound;
    let uniqueness = if model.x_len().min(model.y_len()) <= uniqueness_cap {
        match uniqueness_report(spec, uniqueness_cap) {
            Ok(u) => u.status.to_string(),
            Err(_) => "skipped".to_string(),
        }
    } else {
        "skipped".to_string()
    };
    SweepRow {
        line: format!(
            "{prefix},{},{alpha},{matched},{},{uniqueness}",
            report.bound, report.case_label
        ),
        matched: Some(matched),
    }
}

fn join_sizes(sizes: &[u32]) -> String {
    sizes
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub z: u32,
    pub n: u32,
    #[serde(with = "crate::exactnum::serde_string")]
    pub family_size: BigNat,
    #[serde(with = "crate::exactnum::serde_string")]
    pub total: BigNat,
    #[serde(with = "crate::exactnum::serde_string")]
    pub formula_value: BigNat,
    pub cross_1_intersecting: bool,
    pub exceeds: bool,
}

/// Takes A = B = all z-subsets of [2z-1]: any two meet (z + z > n), yet
/// the pair's total 2 C(n,z) beats the formula value 1 + z + C(n,z).
/// The formula needs max R + max S - t < n, which this shape violates.
fn cmd_counterexample(args: &CounterexampleArgs) -> i32 {
    if args.z < 3 {
        eprintln!("--z must be at least 3 (at z = 2 the total 2*C(3,2) = 6 equals 1 + 2 + C(3,2))");
        return EXIT_USAGE;
    }
    let z = args.z;
    if z > 32 {
        eprintln!("resource cap: ground sets beyond 63 elements are not representable");
        return EXIT_RESOURCE;
    }
    let n = 2 * z - 1;
    let family_size = binomial(u64::from(n), u64::from(z));
    if family_size > BigNat::from(COUNTEREXAMPLE_FAMILY_CAP) {
        eprintln!(
            "resource cap: {family_size} members exceed the {COUNTEREXAMPLE_FAMILY_CAP}-member pairwise check"
        );
        return EXIT_RESOURCE;
    }
    let family = setworld::enumerate_layer(n, z);
    let cross = setworld::is_cross_t_intersecting(&family, &family, 1)
        .expect("the layer is non-empty for z >= 3");
    let total = BigNat::from(2u32) * &family_size;
    let formula_value = BigNat::from(1u32) + BigNat::from(z) + &family_size;
    let exceeds = total > formula_value;
    let report = CounterexampleReport {
        z,
        n,
        family_size,
        total,
        formula_value,
        cross_1_intersecting: cross,
        exceeds,
    };
    if args.json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        println!("z {}", report.z);
        println!("n {}", report.n);
        println!("family_size {}", report.family_size);
        println!("total {}", report.total);
        println!("formula_value {}", report.formula_value);
        println!("cross_1_intersecting {}", report.cross_1_intersecting);
        println!("exceeds {}", report.exceeds);
        println!(
            "{} {} {}",
            report.total,
            if report.exceeds { ">" } else { "<=" },
            report.formula_value
        );
    }
    if report.cross_1_intersecting && report.exceeds {
        EXIT_OK
    } else {
        EXIT_SWEEP_MISMATCH
    }
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let text = match fs::read_to_string(&args.family_file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.family_file.display());
            return EXIT_USAGE;
        }
    };
    let (spec, a, b) = match load_family_file(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("parse error: {e}");
            return EXIT_USAGE;
        }
    };
    match verify_attainment(&spec, &a, &b) {
        Ok(report) => {
            if args.json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                print_spec_line(&spec);
                println!("cross_t_intersecting {}", report.cross_t_intersecting);
                println!("total {}", report.total);
                println!("bound {}", report.bound);
                println!("attains {}", report.attains);
            }
            if report.attains {
                EXIT_OK
            } else if !report.cross_t_intersecting {
                EXIT_NOT_CROSS
            } else {
                EXIT_SUBOPTIMAL
            }
        }
        Err(ExtremalError::Bounds(BoundsError::PreconditionViolated { hypothesis })) => {
            eprintln!("precondition violated: {hypothesis}");
            EXIT_PRECONDITION
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ProbeLayer {
    side: String,
    layer: usize,
    size: u32,
    count: usize,
    degree: String,
    example: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ProbeReport {
    spec: FamilySpec,
    x_len: usize,
    y_len: usize,
    edges: usize,
    layers: Vec<ProbeLayer>,
}

fn cmd_probe(args: &InstanceArgs) -> i32 {
    let spec = match build_spec(args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    if !representable(&spec) {
        eprintln!("resource cap: ground sets beyond 63 elements are not representable");
        return EXIT_RESOURCE;
    }
    let model = match build_model(&spec, &ModelConfig::default()) {
        Ok(m) => m,
        Err(e @ BuildError::BudgetExceeded { .. }) => {
            eprintln!("{e}");
            return EXIT_RESOURCE;
        }
        Err(e) => {
            eprintln!("{e}");
            return EXIT_USAGE;
        }
    };
    let mut layers = Vec::new();
    for side in [Side::X, Side::Y] {
        for layer in 0..model.layer_count(side) {
            let rep = model.layer_representative(side, layer);
            layers.push(ProbeLayer {
                side: format!("{side:?}"),
                layer,
                size: model.layer_size_param(side, layer),
                count: model.layer_range(side, layer).len(),
                degree: model.vertex_degree(side, rep).to_string(),
                example: model.describe_vertex(side, rep),
            });
        }
    }
    let report = ProbeReport {
        spec: spec.clone(),
        x_len: model.x_len(),
        y_len: model.y_len(),
        edges: model.edge_count(),
        layers,
    };
    if args.json {
        println!("{}", serde_json::to_string(&report).unwrap());
    } else {
        print_spec_line(&spec);
        println!("X {} vertices", report.x_len);
        println!("Y {} vertices", report.y_len);
        for l in &report.layers {
            println!(
                "layer {} {}: size {}, count {}, degree {}, example {}",
                l.side, l.layer, l.size, l.count, l.degree, l.example
            );
        }
        println!("edges {}", report.edges);
    }
    EXIT_OK
}
