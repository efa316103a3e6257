//! Strong structural controllability with dedicated inputs.
//!
//! Driving the states in `S` makes the pair `(A, B(S))` strongly structurally
//! controllable exactly when `S` is a zero forcing set of the graph of `A`,
//! and also of the graph of the modified pattern under the restriction that
//! vertices with a free diagonal entry in `A` never force themselves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{ForbiddenSelfForcers, ForcingEngine};
use crate::graph::LoopDigraph;
use crate::pattern::PatternMatrix;
use crate::vertex_set::VertexSet;

pub const DEFAULT_EPSILON: f64 = 0.1;

/// A state pattern with both derived graphs.
#[derive(Clone, Debug)]
pub struct SControlInstance {
    pattern: PatternMatrix,
    graph: LoopDigraph,
    modified_graph: LoopDigraph,
    loops: ForbiddenSelfForcers,
}

impl SControlInstance {
    pub fn new(pattern: PatternMatrix) -> Self {
        let graph = pattern.graph();
        let loops = pattern.diagonal_stars();
        let missing: Vec<usize> = loops.iter_complement().collect();
        let modified_graph = graph.with_self_loops(missing);
        debug_assert_eq!(modified_graph, pattern.modified().graph());
        Self { pattern, graph, modified_graph, loops: ForbiddenSelfForcers::new(loops) }
    }

    pub fn n(&self) -> usize {
        self.pattern.dim()
    }

    pub fn pattern(&self) -> &PatternMatrix {
        &self.pattern
    }

    pub fn graph(&self) -> &LoopDigraph {
        &self.graph
    }

    pub fn modified_graph(&self) -> &LoopDigraph {
        &self.modified_graph
    }

    /// Vertices with a free diagonal entry in the original pattern.
    pub fn loops(&self) -> &VertexSet {
        self.loops.members()
    }

    pub fn forbidden(&self) -> &ForbiddenSelfForcers {
        &self.loops
    }

    fn check(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| v >= self.n()) {
            Some(index) => Err(Error::Dimension { index, n: self.n() }),
            None if set.universe() != self.n() => Err(Error::Domain(format!(
                "vertex set universe {} does not match instance size {}",
                set.universe(),
                self.n()
            ))),
            None => Ok(()),
        }
    }

    /// Both residual white sets plus the individual condition verdicts.
    pub fn diagnose(&self, set: &VertexSet) -> Result<Diagnosis> {
        self.check(set)?;
        let mut engine = ForcingEngine::new();
        engine.propagate(&self.graph, set, &ForbiddenSelfForcers::none(self.n()), |_, _| {});
        let plain = engine.white_set();
        engine.propagate(&self.modified_graph, set, &self.loops, |_, _| {});
        let restricted = engine.white_set();
        Ok(Diagnosis { plain_residual: plain, restricted_residual: restricted })
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self::new(self.pattern.relabel(perm))
    }
}

/// Per-condition outcome of [`SControlInstance::diagnose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    /// White vertices left in the plain graph.
    pub plain_residual: VertexSet,
    /// White vertices left in the modified graph with self-forces restricted.
    pub restricted_residual: VertexSet,
}

impl Diagnosis {
    pub fn plain_ok(&self) -> bool {
        self.plain_residual.is_empty()
    }

    pub fn restricted_ok(&self) -> bool {
        self.restricted_residual.is_empty()
    }

    pub fn controllable(&self) -> bool {
        self.plain_ok() && self.restricted_ok()
    }

    pub fn residual_union(&self) -> VertexSet {
        self.plain_residual.union(&self.restricted_residual)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CostParams {
    pub epsilon: f64,
}

impl CostParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon.is_finite() {
            Ok(Self { epsilon })
        } else {
            Err(Error::Domain(format!("epsilon must be positive and finite, got {epsilon}")))
        }
    }
}

impl Default for CostParams {
    fn default() -> Self {
        Self { epsilon: DEFAULT_EPSILON }
    }
}

/// `size + (1 + epsilon) * residual`, kept in integer parts so that cost
/// differences between sets are formed before any rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cost {
    pub size: usize,
    /// `|W(S) ∪ Wx(S)|`.
    pub residual: usize,
    pub epsilon: f64,
}

impl Cost {
    pub fn value(&self) -> f64 {
        self.size as f64 + (1.0 + self.epsilon) * self.residual as f64
    }

    pub fn is_feasible(&self) -> bool {
        self.residual == 0
    }

    /// `other - self`.
    pub fn delta_to(&self, other: &Cost) -> f64 {
        let ds = other.size as i64 - self.size as i64;
        let dr = other.residual as i64 - self.residual as i64;
        ds as f64 + (1.0 + self.epsilon) * dr as f64
    }
}

/// Cost evaluation with buffers reused across calls; the chain's hot path.
#[derive(Debug)]
pub struct CostEvaluator<'a> {
    inst: &'a SControlInstance,
    params: CostParams,
    no_forbidden: ForbiddenSelfForcers,
    plain: ForcingEngine,
    restricted: ForcingEngine,
}

impl<'a> CostEvaluator<'a> {
    pub fn new(inst: &'a SControlInstance, params: CostParams) -> Self {
        Self {
            inst,
            params,
            no_forbidden: ForbiddenSelfForcers::none(inst.n()),
            plain: ForcingEngine::new(),
            restricted: ForcingEngine::new(),
        }
    }

    pub fn instance(&self) -> &'a SControlInstance {
        self.inst
    }

    pub fn evaluate(&mut self, set: &VertexSet) -> Cost {
        let inst = self.inst;
        self.plain.propagate(&inst.graph, set, &self.no_forbidden, |_, _| {});
        self.restricted.propagate(&inst.modified_graph, set, &inst.loops, |_, _| {});
        let n = inst.n();
        let residual = if self.plain.black_count() == n && self.restricted.black_count() == n {
            0
        } else {
            (0..n).filter(|&v| !self.plain.is_black(v) || !self.restricted.is_black(v)).count()
        };
        Cost { size: set.len(), residual, epsilon: self.params.epsilon }
    }
}

/// Whether driving `set` makes the system strongly structurally controllable.
pub fn verify(inst: &SControlInstance, set: &VertexSet) -> Result<bool> {
    Ok(inst.diagnose(set)?.controllable())
}

/// `(W(S), Wx(S))`: residual white sets of the plain and restricted closures.
pub fn white_residuals(inst: &SControlInstance, set: &VertexSet) -> Result<(VertexSet, VertexSet)> {
    let d = inst.diagnose(set)?;
    Ok((d.plain_residual, d.restricted_residual))
}

pub fn cost(inst: &SControlInstance, set: &VertexSet, params: CostParams) -> Result<Cost> {
    inst.check(set)?;
    Ok(CostEvaluator::new(inst, params).evaluate(set))
}

/// `S ∪ W(S) ∪ Wx(S)`, which is always a controlling input set.
pub fn repair(inst: &SControlInstance, set: &VertexSet) -> Result<VertexSet> {
    Ok(set.union(&inst.diagnose(set)?.residual_union()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, ids.iter().copied()).unwrap()
    }

    fn worked() -> SControlInstance {
        SControlInstance::new(fixtures::worked_example())
    }

    #[test]
    fn verify_worked_example() {
        let inst = worked();
        assert!(verify(&inst, &set(6, &[0])).unwrap());
        assert!(!verify(&inst, &set(6, &[5])).unwrap());
        assert!(verify(&inst, &VertexSet::full(6)).unwrap());
        let d = inst.diagnose(&set(6, &[5])).unwrap();
        assert!(d.plain_ok());
        assert!(!d.restricted_ok());
        assert_eq!(d.restricted_residual, set(6, &[0]));
    }

    #[test]
    fn verify_staircase() {
        let inst = SControlInstance::new(fixtures::staircase15());
        assert!(verify(&inst, &fixtures::staircase15_inputs()).unwrap());
    }

    #[test]
    fn residuals_worked_example() {
        let inst = worked();
        let (w, wx) = white_residuals(&inst, &VertexSet::empty(6)).unwrap();
        assert_eq!(w, set(6, &[0, 5]));
        assert_eq!(wx, set(6, &[0]));
        let (w, wx) = white_residuals(&inst, &set(6, &[0])).unwrap();
        assert!(w.is_empty() && wx.is_empty());
    }

    #[test]
    fn cost_values() {
        let inst = worked();
        let p = CostParams::new(0.1).unwrap();
        assert_eq!(cost(&inst, &set(6, &[0]), p).unwrap().value(), 1.0);
        let c = cost(&inst, &VertexSet::empty(6), p).unwrap();
        assert_eq!((c.size, c.residual), (0, 2));
        assert!((c.value() - 2.2).abs() < 1e-12);
        assert_eq!(cost(&inst, &VertexSet::full(6), p).unwrap().value(), 6.0);
    }

    #[test]
    fn cost_delta_is_antisymmetric() {
        let a = Cost { size: 1, residual: 0, epsilon: 0.1 };
        let b = Cost { size: 0, residual: 2, epsilon: 0.1 };
        assert_eq!(a.delta_to(&b), -b.delta_to(&a));
        assert!((a.delta_to(&b) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn repair_worked_example() {
        let inst = worked();
        let r = repair(&inst, &VertexSet::empty(6)).unwrap();
        assert_eq!(r, set(6, &[0, 5]));
        assert!(verify(&inst, &r).unwrap());
        assert_eq!(repair(&inst, &set(6, &[0])).unwrap(), set(6, &[0]));
        assert_eq!(repair(&inst, &VertexSet::full(6)).unwrap(), VertexSet::full(6));
    }

    #[test]
    fn bad_params_and_sets() {
        assert!(CostParams::new(0.0).is_err());
        assert!(CostParams::new(-1.0).is_err());
        let inst = worked();
        assert!(verify(&inst, &VertexSet::empty(5)).is_err());
    }
}
