//! Annealed Metropolis chain over subsets of the state set.
//!
//! From `S` the chain proposes adding a uniform non-member with probability
//! `2(n-|S|)/3n`, removing a uniform member with probability `2|S|/3n`, or
//! swapping one of each with probability `1/3`, and accepts with the
//! Metropolis rule. At fixed temperature `T` this is reversible with respect
//! to `exp(-C(S)/T)`. The annealing loop cools `T` geometrically once per
//! epoch while `T >= t_stop`.

pub mod propose;
pub mod tpm;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use propose::{accept, acceptance_probability, move_class_probabilities, propose, Move};

use crate::control::{repair, Cost, CostEvaluator, CostParams, SControlInstance, DEFAULT_EPSILON};
use crate::error::{Error, Result};
use crate::rng::{self, Rng, RNG_ALGORITHM};
use crate::vertex_set::VertexSet;

pub const SCHEMA: &str = "zfc-opt/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Report the chain state at the stopping time, feasible or not.
    Faithful,
    /// Report the smallest controlling set the chain visited, falling back to
    /// repairing the final state.
    #[default]
    BestFeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub t0: f64,
    pub alpha: f64,
    pub t_stop: f64,
    pub epoch_len: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub mode: Mode,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        Self { t0: 1.5, alpha: 0.95, t_stop: 0.001, epoch_len: 1000, epsilon: DEFAULT_EPSILON, seed: 0, mode: Mode::default() }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return bad(format!("t0 must be positive, got {}", self.t0));
        }
        if !(self.t_stop > 0.0 && self.t_stop < self.t0) {
            return bad(format!("t_stop must lie in (0, t0), got {}", self.t_stop));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if self.epoch_len == 0 {
            return bad("epoch_len must be positive".into());
        }
        CostParams::new(self.epsilon).map(|_| ()).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Number of epochs the loop runs, replaying the same float updates.
    pub fn planned_epochs(&self) -> usize {
        let mut t = self.t0;
        let mut epochs = 0;
        while self.t_stop <= t {
            t *= self.alpha;
            epochs += 1;
        }
        epochs
    }

    pub fn planned_iterations(&self) -> usize {
        self.planned_epochs() * self.epoch_len
    }
}

/// Live state of a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainState {
    pub set: VertexSet,
    pub cost: Cost,
    pub iteration: u64,
    pub temperature: f64,
    pub accepted: u64,
    pub best_feasible: Option<VertexSet>,
}

/// One Metropolis chain. The temperature is supplied per step.
pub struct Chain<'a> {
    eval: CostEvaluator<'a>,
    rng: Rng,
    state: ChainState,
}

impl<'a> Chain<'a> {
    /// A chain started from the empty set.
    pub fn new(inst: &'a SControlInstance, params: CostParams, seed: u64) -> Self {
        let mut eval = CostEvaluator::new(inst, params);
        let set = VertexSet::empty(inst.n());
        let cost = eval.evaluate(&set);
        let best_feasible = cost.is_feasible().then(|| set.clone());
        Self {
            eval,
            rng: rng::seeded(seed),
            state: ChainState { set, cost, iteration: 0, temperature: f64::NAN, accepted: 0, best_feasible },
        }
    }

    pub fn state(&self) -> &ChainState {
        &self.state
    }

    /// Performs one propose/accept step at `temperature`; returns whether the
    /// proposal was accepted.
    pub fn step(&mut self, temperature: f64) -> bool {
        let (proposal, mv) = propose(&self.state.set, &mut self.rng);
        self.state.iteration += 1;
        self.state.temperature = temperature;
        if mv == Move::Stay {
            self.state.accepted += 1;
            return true;
        }
        let cost = self.eval.evaluate(&proposal);
        let delta = self.state.cost.delta_to(&cost);
        if !accept(delta, temperature, &mut self.rng) {
            return false;
        }
        self.state.accepted += 1;
        if cost.is_feasible() && self.state.best_feasible.as_ref().is_none_or(|b| proposal.len() < b.len()) {
            self.state.best_feasible = Some(proposal.clone());
        }
        self.state.set = proposal;
        self.state.cost = cost;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub temperature: f64,
    pub cost: f64,
}

/// Structured outcome of an annealing run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub rng: &'static str,
    pub n: usize,
    pub config: AnnealConfig,
    pub output_set: VertexSet,
    pub output_cardinality: usize,
    pub feasible: bool,
    pub final_set: VertexSet,
    pub final_cost: f64,
    pub iterations: u64,
    pub accepted: u64,
    /// Cost sampled at the start and after every epoch.
    pub cost_trace: Vec<TracePoint>,
    pub seed: u64,
    pub chains: usize,
    pub chain_index: usize,
    /// Excluded from the determinism contract.
    pub wall_time_s: f64,
}

/// Runs the annealing schedule from the empty set.
pub fn run(inst: &SControlInstance, config: &AnnealConfig) -> Result<RunReport> {
    config.validate()?;
    let started = Instant::now();
    let params = CostParams::new(config.epsilon)?;
    let mut chain = Chain::new(inst, params, config.seed);
    let mut temperature = config.t0;
    let mut trace = vec![TracePoint { iteration: 0, temperature, cost: chain.state().cost.value() }];
    let epoch = config.epoch_len as u64;
    while config.t_stop <= temperature {
        chain.step(temperature);
        if chain.state().iteration.is_multiple_of(epoch) {
            temperature *= config.alpha;
            trace.push(TracePoint { iteration: chain.state().iteration, temperature, cost: chain.state().cost.value() });
        }
    }
    let state = chain.state;
    let output_set = match config.mode {
        Mode::Faithful => state.set.clone(),
        Mode::BestFeasible => match state.best_feasible {
            Some(best) => best,
            None => repair(inst, &state.set)?,
        },
    };
    let feasible = crate::control::verify(inst, &output_set)?;
    Ok(RunReport {
        schema: SCHEMA,
        rng: RNG_ALGORITHM,
        n: inst.n(),
        config: config.clone(),
        output_cardinality: output_set.len(),
        output_set,
        feasible,
        final_set: state.set,
        final_cost: state.cost.value(),
        iterations: state.iteration,
        accepted: state.accepted,
        cost_trace: trace,
        seed: config.seed,
        chains: 1,
        chain_index: 0,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

/// Seed of chain `index`; chain 0 uses the configured seed unchanged.
pub fn chain_seed(seed: u64, index: usize) -> u64 {
    if index == 0 {
        seed
    } else {
        rng::derive_seed(seed, &["chain", &index.to_string()])
    }
}

/// Runs independent chains in parallel and keeps the best: feasible first,
/// then smallest output, then lowest chain index.
pub fn run_chains(inst: &SControlInstance, config: &AnnealConfig, chains: usize) -> Result<RunReport> {
    if chains == 0 {
        return Err(Error::InvalidConfig("at least one chain is required".into()));
    }
    let started = Instant::now();
    let reports = (0..chains)
        .into_par_iter()
        .map(|i| run(inst, &AnnealConfig { seed: chain_seed(config.seed, i), ..config.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let (index, best) = reports
        .into_iter()
        .enumerate()
        .min_by_key(|(i, r)| (!r.feasible, r.output_cardinality, *i))
        .expect("at least one chain");
    Ok(RunReport {
        chains,
        chain_index: index,
        seed: config.seed,
        config: config.clone(),
        wall_time_s: started.elapsed().as_secs_f64(),
        ..best
    })
}
