use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zfc_opt::control::{self, CostParams, SControlInstance};
use zfc_opt::exact::{self, DEFAULT_EXACT_MAX_N};
use zfc_opt::forcing::{closure, ForbiddenSelfForcers};
use zfc_opt::harness::{self, ExperimentSpec};
use zfc_opt::io::{self, InputFormat};
use zfc_opt::mcmc::tpm::{check_tpm, DEFAULT_TPM_MAX_N};
use zfc_opt::mcmc::{run_chains, AnnealConfig, Mode, RunReport, SCHEMA};
use zfc_opt::{fixtures, generate, Error, PatternMatrix, VertexSet};

#[derive(Parser)]
#[command(name = "zfc", version, about = "Minimum input sets for strong structural controllability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Anneal for a small controlling input set.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        anneal: AnnealArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check whether a set of driven states gives strong structural controllability.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated 0-based state indices.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zero forcing closure of a set on the graph of the input.
    Zfs {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        set: String,
        /// Vertices whose self-loops may not force (comma-separated).
        #[arg(long, default_value = "")]
        forbid: String,
        /// Close on the modified graph, forbidding self-forces at original diagonal entries.
        #[arg(long)]
        modified: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact minimum by enumeration, or by fort search with --bounded.
    Exact {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_EXACT_MAX_N)]
        max_n: usize,
        /// Use the fort branch-and-bound, searching sizes up to this bound.
        #[arg(long)]
        bounded: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a batch experiment described by a JSON file.
    Experiment {
        spec: PathBuf,
        /// Also write per-instance records as CSV.
        #[arg(long)]
        details: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact transition matrix diagnostics at a fixed temperature.
    TpmCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long, default_value_t = control::DEFAULT_EPSILON)]
        epsilon: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a generated or built-in instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true, value_enum, default_value_t = FileFormat::Matrix)]
        as_format: FileFormat,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Convert a MATPOWER case file into an edge list.
    Convert {
        case: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    WorkedExample,
    Staircase15,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Matrix,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Pattern matrix (`0`/`x` rows) or edge list (`from to` per line).
    input: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<FileFormat>,
    /// Vertex count for edge lists with trailing isolated vertices.
    #[arg(long)]
    n: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<SControlInstance, Error> {
        let format = self.input_format.map(|f| match f {
            FileFormat::Matrix => InputFormat::Matrix,
            FileFormat::Edges => InputFormat::Edges,
        });
        let (pattern, duplicates) = io::read_pattern(&self.input, format, self.n)?;
        if duplicates > 0 {
            eprintln!("note: dropped {duplicates} duplicate edge(s) from {}", self.input.display());
        }
        Ok(SControlInstance::new(pattern))
    }
}

#[derive(Args)]
struct AnnealArgs {
    #[arg(long, default_value_t = 1.5)]
    t0: f64,
    #[arg(long, default_value_t = 0.95)]
    alpha: f64,
    #[arg(long, default_value_t = 0.001)]
    tstop: f64,
    #[arg(long, default_value_t = 1000)]
    epoch: usize,
    #[arg(long, default_value_t = control::DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::BestFeasible)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    chains: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Faithful,
    BestFeasible,
}

impl AnnealArgs {
    fn config(&self) -> AnnealConfig {
        AnnealConfig {
            t0: self.t0,
            alpha: self.alpha,
            t_stop: self.tstop,
            epoch_len: self.epoch,
            epsilon: self.epsilon,
            seed: self.seed,
            mode: match self.mode {
                ModeArg::Faithful => Mode::Faithful,
                ModeArg::BestFeasible => Mode::BestFeasible,
            },
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the machine-readable result here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

impl OutputArgs {
    fn write<T: Serialize>(&self, value: &T, csv_header: &[&str], csv_row: Vec<String>) -> Result<(), Error> {
        let Some(path) = &self.out else { return Ok(()) };
        let text = match self.format {
            OutFormat::Json => json(value),
            OutFormat::Csv => csv_text(csv_header, &[csv_row]),
        };
        io::write_file(path, &text)
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory");
    for r in rows {
        w.write_record(r).expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
}

fn set_cell(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

enum Outcome {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Solve { input, anneal, output } => solve(&input, &anneal, &output),
        Command::Verify { input, set, output } => verify(&input, &set, &output),
        Command::Zfs { input, set, forbid, modified, output } => zfs(&input, &set, &forbid, modified, &output),
        Command::Exact { input, max_n, bounded, output } => exact_cmd(&input, max_n, bounded, &output),
        Command::Experiment { spec, details, output } => experiment(&spec, details.as_deref(), &output),
        Command::TpmCheck { input, temperature, epsilon, output } => tpm(&input, temperature, epsilon, &output),
        Command::Gen { kind, as_format, out } => gen(kind, as_format, out.as_deref()),
        Command::Convert { case, out } => convert(&case, out.as_deref()),
    }
}

fn solve(input: &InputArgs, anneal: &AnnealArgs, output: &OutputArgs) -> Result<Outcome, Error> {
    let inst = input.load()?;
    let config = anneal.config();
    let report: RunReport = run_chains(&inst, &config, anneal.chains)?;
    println!("states: {}", inst.n());
    println!("inputs: {} {}", report.output_cardinality, report.output_set.labels());
    println!("feasible: {}", report.feasible);
    println!("iterations: {} (accepted {})", report.iterations, report.accepted);
    if anneal.chains > 1 {
        println!("best chain: {} of {}", report.chain_index, anneal.chains);
    }
    println!("wall time: {:.3} s", report.wall_time_s);
    output.write(
        &report,
        &["n", "cardinality", "feasible", "iterations", "accepted", "seed", "set"],
        vec![
            report.n.to_string(),
            report.output_cardinality.to_string(),
            report.feasible.to_string(),
            report.iterations.to_string(),
            report.accepted.to_string(),
            report.seed.to_string(),
            set_cell(&report.output_set),
        ],
    )?;
    Ok(if report.feasible { Outcome::Ok } else { Outcome::Negative })
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    set: VertexSet,
    controllable: bool,
    plain_residual: VertexSet,
    restricted_residual: VertexSet,
}

fn verify(input: &InputArgs, set: &str, output: &OutputArgs) -> Result<Outcome, Error> {
    let inst = input.load()?;
    let set = VertexSet::parse_list(inst.n(), set)?;
    let d = inst.diagnose(&set)?;
    println!("set: {}", set.labels());
    println!("verdict: {}", d.controllable());
    let status = |ok: bool| if ok { "holds" } else { "fails" };
    println!("condition 1 (zero forcing set of G(A)): {}", status(d.plain_ok()));
    if !d.plain_ok() {
        println!("  residual: {}", d.plain_residual.labels());
    }
    println!("condition 2 (zero forcing set of G(A×), no self-forces at nonzero diagonal): {}", status(d.restricted_ok()));
    if !d.restricted_ok() {
        println!("  residual: {}", d.restricted_residual.labels());
    }
    let report = VerifyReport {
        schema: SCHEMA,
        controllable: d.controllable(),
        plain_residual: d.plain_residual.clone(),
        restricted_residual: d.restricted_residual.clone(),
        set,
    };
    output.write(
        &report,
        &["controllable", "plain_residual", "restricted_residual"],
        vec![report.controllable.to_string(), set_cell(&report.plain_residual), set_cell(&report.restricted_residual)],
    )?;
    Ok(if report.controllable { Outcome::Ok } else { Outcome::Negative })
}

#[derive(Serialize)]
struct ZfsReport {
    schema: &'static str,
    set: VertexSet,
    forbidden: VertexSet,
    black: VertexSet,
    white_residual: VertexSet,
    forces: Vec<(usize, usize)>,
}

fn zfs(input: &InputArgs, set: &str, forbid: &str, modified: bool, output: &OutputArgs) -> Result<Outcome, Error> {
    let inst = input.load()?;
    let n = inst.n();
    let set = VertexSet::parse_list(n, set)?;
    let mut forbidden = VertexSet::parse_list(n, forbid)?;
    let graph = if modified {
        forbidden.union_with(inst.loops());
        inst.modified_graph()
    } else {
        inst.graph()
    };
    let r = closure(graph, &set, &ForbiddenSelfForcers::new(forbidden.clone()));
    for &(u, w) in &r.forces {
        println!("x{} -> x{}", u + 1, w + 1);
    }
    println!("black: {}", r.black.labels());
    println!("residual: {}", r.white_residual.labels());
    println!("zero forcing set: {}", r.white_residual.is_empty());
    let ok = r.white_residual.is_empty();
    let report = ZfsReport { schema: SCHEMA, set, forbidden, black: r.black, white_residual: r.white_residual, forces: r.forces };
    output.write(
        &report,
        &["zero_forcing", "black", "white_residual"],
        vec![ok.to_string(), set_cell(&report.black), set_cell(&report.white_residual)],
    )?;
    Ok(if ok { Outcome::Ok } else { Outcome::Negative })
}

fn exact_cmd(input: &InputArgs, max_n: usize, bounded: Option<usize>, output: &OutputArgs) -> Result<Outcome, Error> {
    let inst = input.load()?;
    let result = match bounded {
        Some(k) => exact::solve_exact_bounded(&inst, k)?,
        None => Some(exact::solve_exact(&inst, max_n)?),
    };
    let Some(result) = result else {
        println!("no controlling set of size <= {}", bounded.unwrap_or_default());
        return Ok(Outcome::Negative);
    };
    println!("optimum: {}", result.optimum);
    println!("witnesses: {}", result.witnesses.len());
    for w in result.witnesses.iter().take(10) {
        println!("  {}", w.labels());
    }
    if result.witnesses.len() > 10 {
        println!("  ...");
    }
    println!("subsets checked: {}", result.subsets_checked);
    let first = result.witnesses.first().map(set_cell).unwrap_or_default();
    output.write(
        &serde_json::json!({ "schema": SCHEMA, "n": inst.n(), "result": &result }),
        &["n", "optimum", "witnesses", "subsets_checked", "first_witness"],
        vec![
            inst.n().to_string(),
            result.optimum.to_string(),
            result.witnesses.len().to_string(),
            result.subsets_checked.to_string(),
            first,
        ],
    )?;
    Ok(Outcome::Ok)
}

fn experiment(spec_path: &Path, details: Option<&Path>, output: &OutputArgs) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(spec_path).map_err(|source| Error::Io { path: spec_path.to_path_buf(), source })?;
    let spec: ExperimentSpec =
        serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", spec_path.display())))?;
    let report = harness::run_experiment(&spec)?;
    let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.2}"));
    println!("{:>6} {:>6} {:>10} {:>10} {:>8} {:>10} {:>10}", "n", "count", "mcmc", "exact", "matches", "time_s", "reference");
    for row in &report.rows {
        let reference = if spec.family == harness::Family::Er { harness::reference_er_mean(row.n) } else { None };
        println!(
            "{:>6} {:>6} {:>10} {:>10} {:>8} {:>10.4} {:>10}",
            row.n,
            row.instances,
            fmt(row.mean_mcmc_cardinality),
            fmt(row.mean_exact_cardinality),
            row.exact_matches.map_or("-".to_string(), |m| m.to_string()),
            row.mean_wall_time_s,
            fmt(reference),
        );
    }
    if let Some(path) = &output.out {
        let text = match output.format {
            OutFormat::Json => json(&report),
            OutFormat::Csv => report.rows_csv(),
        };
        io::write_file(path, &text)?;
    }
    if let Some(path) = details {
        io::write_file(path, &report.details_csv())?;
    }
    Ok(Outcome::Ok)
}

fn tpm(input: &InputArgs, temperature: f64, epsilon: f64, output: &OutputArgs) -> Result<Outcome, Error> {
    let inst = input.load()?;
    let d = check_tpm(&inst, temperature, CostParams::new(epsilon)?, DEFAULT_TPM_MAX_N)?;
    println!("states: {} ({} subsets), T = {}", d.n, 1u64 << d.n, d.temperature);
    println!("max row-sum deviation: {:e}", d.max_row_sum_deviation);
    println!("max detailed-balance violation: {:e}", d.max_detailed_balance_violation);
    println!("TV(stationary, Gibbs): {:e}", d.stationary_gibbs_tv);
    println!("P(empty, empty): {}", d.p_empty_empty);
    output.write(
        &serde_json::json!({ "schema": SCHEMA, "diagnostics": &d }),
        &["n", "temperature", "max_row_sum_deviation", "max_detailed_balance_violation", "stationary_gibbs_tv", "p_empty_empty"],
        vec![
            d.n.to_string(),
            d.temperature.to_string(),
            d.max_row_sum_deviation.to_string(),
            d.max_detailed_balance_violation.to_string(),
            d.stationary_gibbs_tv.to_string(),
            d.p_empty_empty.to_string(),
        ],
    )?;
    Ok(Outcome::Ok)
}

fn render(pattern: &PatternMatrix, format: FileFormat) -> String {
    match format {
        FileFormat::Matrix => io::write_matrix_text(pattern),
        FileFormat::Edges => io::write_edge_list(&pattern.graph()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => io::write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(kind: GenKind, format: FileFormat, out: Option<&Path>) -> Result<Outcome, Error> {
    let pattern = match kind {
        GenKind::Er { n, delta, seed } => generate::gen_erdos_renyi(n, delta, seed)?,
        GenKind::Tree { n, seed } => generate::gen_selfdamped_tree(n, seed)?,
        GenKind::WorkedExample => fixtures::worked_example(),
        GenKind::Staircase15 => fixtures::staircase15(),
    };
    emit(&render(&pattern, format), out)?;
    Ok(Outcome::Ok)
}

fn convert(case: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(case).map_err(|source| Error::Io { path: case.to_path_buf(), source })?;
    let graph = io::parse_matpower_branches(&text)?;
    eprintln!("{} buses, {} branches", graph.vertex_count(), graph.edge_count());
    emit(&io::write_edge_list(&graph), out)?;
    Ok(Outcome::Ok)
}
