//! Exact minimum input sets.
//!
//! [`solve_exact`] enumerates subsets by increasing cardinality, in
//! lexicographic order within each cardinality. It is the ground truth for
//! instances up to about twenty states.
//!
//! [`solve_exact_bounded`] is exact as well but scales to sparse instances
//! with large optima. It relies on forts: the white vertices left by any
//! failed closure form a set that every zero forcing set of that graph must
//! meet. The search branches on forts until the chosen vertices meet all
//! known forts, checks the candidate, and learns new forts from whatever
//! stays white. Iterative deepening on the cardinality makes the first level
//! with a witness the optimum.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::control::{CostEvaluator, CostParams, SControlInstance};
use crate::error::{Error, Result};
use crate::forcing::{ForbiddenSelfForcers, ForcingEngine};
use crate::graph::LoopDigraph;
use crate::vertex_set::VertexSet;

pub const DEFAULT_EXACT_MAX_N: usize = 20;
pub const DEFAULT_WITNESS_CAP: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactResult {
    pub optimum: usize,
    /// Optimal sets in lexicographic order, at most the witness cap.
    pub witnesses: Vec<VertexSet>,
    /// Candidate sets whose closures were computed.
    pub subsets_checked: u64,
}

pub fn solve_exact(inst: &SControlInstance, max_n: usize) -> Result<ExactResult> {
    solve_exact_with_cap(inst, max_n, DEFAULT_WITNESS_CAP)
}

pub fn solve_exact_with_cap(inst: &SControlInstance, max_n: usize, witness_cap: usize) -> Result<ExactResult> {
    let n = inst.n();
    if n > max_n {
        return Err(Error::SizeGuard { n, max: max_n });
    }
    let params = CostParams::default();
    let mut checked = 0u64;
    for k in 0..=n {
        let combos: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        checked += combos.len() as u64;
        let feasible: Vec<bool> = combos
            .par_iter()
            .map_init(
                || CostEvaluator::new(inst, params),
                |eval, combo| {
                    let set = VertexSet::from_indices(n, combo.iter().copied()).expect("in range");
                    eval.evaluate(&set).is_feasible()
                },
            )
            .collect();
        let witnesses: Vec<VertexSet> = combos
            .into_iter()
            .zip(feasible)
            .filter(|(_, ok)| *ok)
            .take(witness_cap)
            .map(|(c, _)| VertexSet::from_indices(n, c).expect("in range"))
            .collect();
        if !witnesses.is_empty() {
            return Ok(ExactResult { optimum: k, witnesses, subsets_checked: checked });
        }
    }
    unreachable!("driving every state is always controlling")
}

/// Exact optimum restricted to cardinalities `<= k_max`; `None` when no
/// controlling set that small exists.
pub fn solve_exact_bounded(inst: &SControlInstance, k_max: usize) -> Result<Option<ExactResult>> {
    solve_exact_bounded_with_cap(inst, k_max, DEFAULT_WITNESS_CAP)
}

pub fn solve_exact_bounded_with_cap(
    inst: &SControlInstance,
    k_max: usize,
    witness_cap: usize,
) -> Result<Option<ExactResult>> {
    let mut search = FortSearch::new(inst, witness_cap.max(1));
    let empty = VertexSet::empty(inst.n());
    if !search.check(&empty) {
        search.learn();
    }
    let start = search.lower_bound();
    for k in start..=k_max.min(inst.n()) {
        search.dfs(k);
        if !search.witnesses.is_empty() {
            let mut witnesses = std::mem::take(&mut search.witnesses);
            witnesses.sort_by_key(VertexSet::to_vec);
            return Ok(Some(ExactResult { optimum: k, witnesses, subsets_checked: search.checked }));
        }
    }
    Ok(None)
}

/// Shrinks a fort of `g` towards an inclusion-minimal one. Each step keeps
/// the residual of closing from the complement of a smaller candidate, which
/// is itself a fort.
fn shrink_fort(g: &LoopDigraph, forbidden: &ForbiddenSelfForcers, engine: &mut ForcingEngine, fort: VertexSet) -> Vec<usize> {
    let mut fort = fort;
    for w in fort.to_vec() {
        if !fort.contains(w) || fort.len() == 1 {
            continue;
        }
        let mut smaller = fort.clone();
        smaller.remove(w);
        engine.propagate(g, &smaller.complement(), forbidden, |_, _| {});
        let residual = engine.white_set();
        if !residual.is_empty() {
            fort = residual;
        }
    }
    fort.to_vec()
}

struct FortSearch<'a> {
    inst: &'a SControlInstance,
    no_forbidden: ForbiddenSelfForcers,
    plain: ForcingEngine,
    restricted: ForcingEngine,
    scratch: ForcingEngine,
    forts: Vec<Vec<usize>>,
    known: HashSet<Vec<usize>>,
    chosen: VertexSet,
    excluded: Vec<bool>,
    witnesses: Vec<VertexSet>,
    cap: usize,
    checked: u64,
}

impl<'a> FortSearch<'a> {
    fn new(inst: &'a SControlInstance, cap: usize) -> Self {
        let n = inst.n();
        Self {
            inst,
            no_forbidden: ForbiddenSelfForcers::none(n),
            plain: ForcingEngine::new(),
            restricted: ForcingEngine::new(),
            scratch: ForcingEngine::new(),
            forts: Vec::new(),
            known: HashSet::new(),
            chosen: VertexSet::empty(n),
            excluded: vec![false; n],
            witnesses: Vec::new(),
            cap,
            checked: 0,
        }
    }

    fn check(&mut self, set: &VertexSet) -> bool {
        self.checked += 1;
        let n = self.inst.n();
        self.plain.propagate(self.inst.graph(), set, &self.no_forbidden, |_, _| {});
        self.restricted.propagate(self.inst.modified_graph(), set, self.inst.forbidden(), |_, _| {});
        self.plain.black_count() == n && self.restricted.black_count() == n
    }

    /// Records forts from the residuals of the last failed [`check`](Self::check).
    fn learn(&mut self) -> bool {
        let n = self.inst.n();
        let mut added = false;
        if self.plain.black_count() < n {
            let white = self.plain.white_set();
            let fort = shrink_fort(self.inst.graph(), &self.no_forbidden, &mut self.scratch, white);
            added |= self.add_fort(fort);
        }
        if self.restricted.black_count() < n {
            let white = self.restricted.white_set();
            let fort = shrink_fort(self.inst.modified_graph(), self.inst.forbidden(), &mut self.scratch, white);
            added |= self.add_fort(fort);
        }
        added
    }

    fn add_fort(&mut self, fort: Vec<usize>) -> bool {
        if self.known.insert(fort.clone()) {
            self.forts.push(fort);
            true
        } else {
            false
        }
    }

    fn is_hit(&self, fort: &[usize]) -> bool {
        fort.iter().any(|&v| self.chosen.contains(v))
    }

    /// Size of a greedy packing of unhit forts with disjoint open candidates.
    fn lower_bound(&self) -> usize {
        let mut open: Vec<Vec<usize>> = self
            .forts
            .iter()
            .filter(|f| !self.is_hit(f))
            .map(|f| f.iter().copied().filter(|&v| !self.excluded[v]).collect())
            .collect();
        open.sort_by_key(Vec::len);
        let mut used = vec![false; self.inst.n()];
        let mut count = 0;
        for cands in open {
            if cands.iter().all(|&v| !used[v]) {
                count += 1;
                for v in cands {
                    used[v] = true;
                }
            }
        }
        count
    }

    fn dfs(&mut self, k: usize) {
        if self.witnesses.len() >= self.cap {
            return;
        }
        let branch = loop {
            let mut best: Option<Vec<usize>> = None;
            for fort in &self.forts {
                if self.is_hit(fort) {
                    continue;
                }
                let cands: Vec<usize> = fort.iter().copied().filter(|&v| !self.excluded[v]).collect();
                if cands.is_empty() {
                    return;
                }
                if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                    best = Some(cands);
                }
            }
            match best {
                Some(cands) => break cands,
                None => {
                    let chosen = self.chosen.clone();
                    if self.check(&chosen) {
                        self.witnesses.push(chosen);
                        return;
                    }
                    let added = self.learn();
                    debug_assert!(added, "a white residual disjoint from the chosen set is a new fort");
                }
            }
        };
        if self.chosen.len() + self.lower_bound() > k {
            return;
        }
        for &v in &branch {
            self.chosen.insert(v);
            self.dfs(k);
            self.chosen.remove(v);
            self.excluded[v] = true;
            if self.witnesses.len() >= self.cap {
                break;
            }
        }
        for &v in &branch {
            self.excluded[v] = false;
        }
    }
}
