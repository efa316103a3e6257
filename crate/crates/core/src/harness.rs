//! Batch experiments over generated or file-based instance families.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::control::SControlInstance;
use crate::error::{Error, Result};
use crate::exact::{solve_exact, solve_exact_bounded};
use crate::generate::{gen_erdos_renyi, gen_selfdamped_tree};
use crate::io::read_pattern;
use crate::mcmc::{run_chains, AnnealConfig, Mode, SCHEMA};
use crate::pattern::PatternMatrix;
use crate::rng::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    #[serde(alias = "er")]
    Er,
    #[serde(alias = "tree")]
    Tree,
    #[serde(alias = "file")]
    File,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Er => "ER",
            Family::Tree => "TREE",
            Family::File => "FILE",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Solver {
    #[default]
    #[serde(alias = "mcmc")]
    Mcmc,
    #[serde(alias = "exact")]
    Exact,
    #[serde(alias = "both")]
    Both,
}

/// How the exact column is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactMethod {
    /// Plain enumeration, only for `n <= exact_max_n`.
    #[default]
    Enumerate,
    /// Fort-based branch and bound, no size guard.
    Forts,
}

/// Optional replacements for [`AnnealConfig`] fields.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealOverrides {
    pub t0: Option<f64>,
    pub alpha: Option<f64>,
    pub t_stop: Option<f64>,
    pub epoch_len: Option<usize>,
    pub epsilon: Option<f64>,
    pub mode: Option<Mode>,
}

impl AnnealOverrides {
    pub fn apply(&self, base: &AnnealConfig) -> AnnealConfig {
        AnnealConfig {
            t0: self.t0.unwrap_or(base.t0),
            alpha: self.alpha.unwrap_or(base.alpha),
            t_stop: self.t_stop.unwrap_or(base.t_stop),
            epoch_len: self.epoch_len.unwrap_or(base.epoch_len),
            epsilon: self.epsilon.unwrap_or(base.epsilon),
            mode: self.mode.unwrap_or(base.mode),
            seed: base.seed,
        }
    }
}

fn default_instances() -> usize {
    100
}
fn default_delta() -> f64 {
    0.5
}
fn default_chains() -> usize {
    1
}
fn default_exact_max_n() -> usize {
    crate::exact::DEFAULT_EXACT_MAX_N
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub family: Family,
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances_per_size: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub solver: Solver,
    #[serde(default)]
    pub anneal: AnnealOverrides,
    #[serde(default = "default_chains")]
    pub chains: usize,
    #[serde(default = "default_exact_max_n")]
    pub exact_max_n: usize,
    #[serde(default)]
    pub exact_method: ExactMethod,
    /// Instance files for the `FILE` family.
    #[serde(default)]
    pub files: Vec<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(family: Family, sizes: Vec<usize>, instances_per_size: usize) -> Self {
        Self {
            family,
            sizes,
            instances_per_size,
            delta: default_delta(),
            seed: 0,
            solver: Solver::default(),
            anneal: AnnealOverrides::default(),
            chains: 1,
            exact_max_n: default_exact_max_n(),
            exact_method: ExactMethod::default(),
            files: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        match self.family {
            Family::File if self.files.is_empty() => return bad("FILE family needs a non-empty `files` list"),
            Family::Er | Family::Tree if self.sizes.is_empty() => return bad("`sizes` must be non-empty"),
            Family::Er if self.sizes.iter().any(|&n| n < 2) => return bad("ER sizes must be at least 2"),
            Family::Tree if self.sizes.contains(&0) => return bad("tree sizes must be positive"),
            _ => {}
        }
        if self.instances_per_size == 0 {
            return bad("`instances_per_size` must be at least 1");
        }
        if self.chains == 0 {
            return bad("`chains` must be at least 1");
        }
        if self.family == Family::Er && !(self.delta.is_finite() && self.delta > 0.0) {
            return bad("`delta` must be positive");
        }
        self.anneal.apply(&AnnealConfig::default()).validate()
    }

    /// Seed for instance `index` of size `n`, with a role tag so instance
    /// generation and the chain draw from unrelated streams.
    pub fn instance_seed(&self, n: usize, index: usize, role: &str) -> u64 {
        derive_seed(self.seed, &[self.family.label(), &n.to_string(), &index.to_string(), role])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub n: usize,
    pub index: usize,
    pub source: Option<String>,
    pub instance_seed: Option<u64>,
    pub chain_seed: Option<u64>,
    pub stars: usize,
    pub mcmc_cardinality: Option<usize>,
    pub mcmc_feasible: Option<bool>,
    pub exact_optimum: Option<usize>,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeRow {
    pub n: usize,
    pub instances: usize,
    pub mean_mcmc_cardinality: Option<f64>,
    pub mean_exact_cardinality: Option<f64>,
    /// Instances on which both columns exist and agree.
    pub exact_matches: Option<usize>,
    pub mean_wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema: &'static str,
    pub spec: ExperimentSpec,
    pub rows: Vec<SizeRow>,
    pub details: Vec<InstanceRecord>,
}

/// Average optimum sizes published for the ER family at small `n` (the edge
/// density parameter behind them is unknown).
pub const REFERENCE_ER_OPTIMA: &[(usize, f64)] =
    &[(5, 2.15), (8, 2.86), (10, 3.33), (12, 3.56), (15, 4.37), (18, 4.84), (20, 5.26), (50, 11.58), (100, 23.45)];

pub fn reference_er_mean(n: usize) -> Option<f64> {
    REFERENCE_ER_OPTIMA.iter().find(|(m, _)| *m == n).map(|&(_, v)| v)
}

struct Job {
    n: usize,
    index: usize,
    source: Option<String>,
    instance_seed: Option<u64>,
    pattern: PatternMatrix,
}

fn jobs(spec: &ExperimentSpec) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    match spec.family {
        Family::File => {
            for (index, path) in spec.files.iter().enumerate() {
                let (pattern, _) = read_pattern(path, None, None)?;
                out.push(Job { n: pattern.dim(), index, source: Some(path.display().to_string()), instance_seed: None, pattern });
            }
        }
        Family::Er | Family::Tree => {
            for &n in &spec.sizes {
                for index in 0..spec.instances_per_size {
                    let seed = spec.instance_seed(n, index, "instance");
                    let pattern = match spec.family {
                        Family::Er => gen_erdos_renyi(n, spec.delta, seed)?,
                        _ => gen_selfdamped_tree(n, seed)?,
                    };
                    out.push(Job { n, index, source: None, instance_seed: Some(seed), pattern });
                }
            }
        }
    }
    Ok(out)
}

fn run_job(spec: &ExperimentSpec, job: Job) -> Result<InstanceRecord> {
    let inst = SControlInstance::new(job.pattern);
    let started = Instant::now();
    let (mut mcmc_cardinality, mut mcmc_feasible, mut chain_seed) = (None, None, None);
    if matches!(spec.solver, Solver::Mcmc | Solver::Both) {
        let seed = spec.instance_seed(job.n, job.index, "chain");
        let config = AnnealConfig { seed, ..spec.anneal.apply(&AnnealConfig::default()) };
        let report = run_chains(&inst, &config, spec.chains)?;
        mcmc_cardinality = Some(report.output_cardinality);
        mcmc_feasible = Some(report.feasible);
        chain_seed = Some(seed);
    }
    let wall_time_s = started.elapsed().as_secs_f64();
    let exact_optimum = if matches!(spec.solver, Solver::Exact | Solver::Both) {
        match spec.exact_method {
            ExactMethod::Enumerate if inst.n() <= spec.exact_max_n => Some(solve_exact(&inst, spec.exact_max_n)?.optimum),
            ExactMethod::Enumerate => None,
            ExactMethod::Forts => solve_exact_bounded(&inst, inst.n())?.map(|r| r.optimum),
        }
    } else {
        None
    };
    Ok(InstanceRecord {
        n: job.n,
        index: job.index,
        source: job.source,
        instance_seed: job.instance_seed,
        chain_seed,
        stars: inst.pattern().star_count(),
        mcmc_cardinality,
        mcmc_feasible,
        exact_optimum,
        wall_time_s,
    })
}

fn mean<I: Iterator<Item = usize>>(it: I) -> Option<f64> {
    let (sum, count) = it.fold((0usize, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum as f64 / count as f64)
}

pub fn summarize(details: &[InstanceRecord]) -> Vec<SizeRow> {
    let mut sizes: Vec<usize> = details.iter().map(|d| d.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|n| {
            let group: Vec<&InstanceRecord> = details.iter().filter(|d| d.n == n).collect();
            let both: Vec<_> = group.iter().filter_map(|d| Some((d.mcmc_cardinality?, d.exact_optimum?))).collect();
            SizeRow {
                n,
                instances: group.len(),
                mean_mcmc_cardinality: mean(group.iter().filter_map(|d| d.mcmc_cardinality)),
                mean_exact_cardinality: mean(group.iter().filter_map(|d| d.exact_optimum)),
                exact_matches: (!both.is_empty()).then(|| both.iter().filter(|(m, e)| m == e).count()),
                mean_wall_time_s: group.iter().map(|d| d.wall_time_s).sum::<f64>() / group.len() as f64,
            }
        })
        .collect()
}

/// Runs every instance (in parallel) and aggregates per size.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let details = jobs(spec)?
        .into_par_iter()
        .map(|job| run_job(spec, job))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport { schema: SCHEMA, spec: spec.clone(), rows: summarize(&details), details })
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Per-size rows as CSV.
    pub fn rows_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("row serialises");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    /// Per-instance records as CSV.
    pub fn details_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for d in &self.details {
            w.serialize(d).expect("record serialises");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }
}
