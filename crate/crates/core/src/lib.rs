//! Minimum dedicated-input selection for strong structural controllability.
//!
//! A structured state matrix is given as a zero/nonzero [`PatternMatrix`].
//! Driving a set of states `S` makes the system strongly structurally
//! controllable iff `S` is a zero forcing set of the pattern's graph and,
//! with self-forces at originally self-damped states barred, of the graph of
//! the diagonal-completed pattern ([`control::verify`]).
//!
//! The smallest such `S` is searched for by an annealed Metropolis chain over
//! subsets ([`mcmc::run`]) minimising `|S| + (1 + eps) |W(S) ∪ Wx(S)|`, where
//! the `W` terms are the vertices left white by the two closures. Exhaustive
//! solvers in [`exact`] provide ground truth for small instances.

pub mod control;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod forcing;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod mcmc;
pub mod pattern;
pub mod rng;
pub mod vertex_set;

pub use control::{Cost, CostParams, SControlInstance};
pub use error::{Error, Result};
pub use forcing::{ClosureResult, ForbiddenSelfForcers};
pub use graph::LoopDigraph;
pub use pattern::{InputPattern, PatternMatrix};
pub use vertex_set::VertexSet;
