//! Zero forcing closure.
//!
//! A vertex whose out-neighbourhood contains exactly one white vertex forces
//! that vertex black. The forcer's own colour only matters through a
//! self-loop, since then the forcer is one of its own out-neighbours. A set
//! of vertices may additionally be barred from forcing themselves.
//!
//! Any force that is legal stays legal while its target is white, so the
//! final black set does not depend on the order in which forces are applied.
//! Greedy propagation therefore also answers whether *some* chronological
//! list of forces avoiding the barred self-forces colours everything.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::LoopDigraph;
use crate::vertex_set::VertexSet;

/// Default guard for [`zero_forcing_number_exact`].
pub const DEFAULT_ZFN_MAX_N: usize = 25;

/// Vertices `i` for which the force `i -> i` is not allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenSelfForcers(VertexSet);

impl ForbiddenSelfForcers {
    pub fn none(n: usize) -> Self {
        Self(VertexSet::empty(n))
    }

    pub fn new(members: VertexSet) -> Self {
        Self(members)
    }

    pub fn members(&self) -> &VertexSet {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }
}

/// Outcome of propagating from an initial black set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub black: VertexSet,
    pub white_residual: VertexSet,
    /// `(forcer, forced)` pairs in the order they were applied.
    pub forces: Vec<(usize, usize)>,
}

/// Reusable buffers for repeated closures on graphs of the same size.
///
/// Maintains, per vertex, the number of white out-neighbours, and a FIFO of
/// vertices for which that number is one. The queue starts in ascending
/// vertex order, which fixes the reported force list. Runs in `O(n + m)`.
#[derive(Debug, Default)]
pub struct ForcingEngine {
    black: Vec<bool>,
    white_out: Vec<usize>,
    queue: VecDeque<usize>,
    black_count: usize,
}

impl ForcingEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs the closure, calling `on_force(forcer, forced)` for every force.
    pub fn propagate<F>(&mut self, g: &LoopDigraph, initial: &VertexSet, forbidden: &ForbiddenSelfForcers, mut on_force: F)
    where
        F: FnMut(usize, usize),
    {
        let n = g.vertex_count();
        debug_assert_eq!(initial.universe(), n);
        self.black.clear();
        self.black.resize(n, false);
        for v in initial.iter() {
            self.black[v] = true;
        }
        self.black_count = initial.len();
        self.white_out.clear();
        self.white_out.extend((0..n).map(|u| g.out_neighbors(u).iter().filter(|&&w| !self.black[w]).count()));
        self.queue.clear();
        self.queue.extend((0..n).filter(|&u| self.white_out[u] == 1));

        while let Some(u) = self.queue.pop_front() {
            if self.white_out[u] != 1 {
                continue;
            }
            let target = *g
                .out_neighbors(u)
                .iter()
                .find(|&&w| !self.black[w])
                .expect("count says one white out-neighbour");
            if target == u && forbidden.contains(u) {
                // Only u itself is left white here, so the count can never
                // come back to one for another target.
                continue;
            }
            self.black[target] = true;
            self.black_count += 1;
            on_force(u, target);
            for &p in g.in_neighbors(target) {
                self.white_out[p] -= 1;
                if self.white_out[p] == 1 {
                    self.queue.push_back(p);
                }
            }
        }
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black[v]
    }

    pub fn black_count(&self) -> usize {
        self.black_count
    }

    /// White vertices left by the last [`propagate`](Self::propagate).
    pub fn white_set(&self) -> VertexSet {
        let n = self.black.len();
        VertexSet::from_indices(n, (0..n).filter(|&v| !self.black[v])).expect("in range")
    }
}

/// Full closure with force list.
pub fn closure(g: &LoopDigraph, initial: &VertexSet, forbidden: &ForbiddenSelfForcers) -> ClosureResult {
    let mut engine = ForcingEngine::new();
    let mut forces = Vec::new();
    engine.propagate(g, initial, forbidden, |u, w| forces.push((u, w)));
    let white_residual = engine.white_set();
    ClosureResult { black: white_residual.complement(), white_residual, forces }
}

/// Whether `set` colours the whole graph.
pub fn is_zfs(g: &LoopDigraph, set: &VertexSet, forbidden: &ForbiddenSelfForcers) -> bool {
    let mut engine = ForcingEngine::new();
    engine.propagate(g, set, forbidden, |_, _| {});
    engine.black_count() == g.vertex_count()
}

/// Minimum zero forcing set size by enumeration in increasing cardinality.
pub fn zero_forcing_number_exact(g: &LoopDigraph, forbidden: &ForbiddenSelfForcers, max_n: usize) -> Result<usize> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(Error::SizeGuard { n, max: max_n });
    }
    let mut engine = ForcingEngine::new();
    for k in 0..=n {
        for combo in (0..n).combinations(k) {
            let set = VertexSet::from_indices(n, combo)?;
            engine.propagate(g, &set, forbidden, |_, _| {});
            if engine.black_count() == n {
                return Ok(k);
            }
        }
    }
    unreachable!("the full vertex set is always a zero forcing set")
}
