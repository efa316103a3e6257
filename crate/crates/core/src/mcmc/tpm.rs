//! Exact transition matrix of the fixed-temperature chain, for small `n`.
//!
//! States are indexed by bit mask: vertex `v` is in the set for state `s`
//! iff bit `v` of `s` is one.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::Chain;
use crate::control::{Cost, CostEvaluator, CostParams, SControlInstance};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub const DEFAULT_TPM_MAX_N: usize = 10;

fn guard(inst: &SControlInstance, max_n: usize) -> Result<usize> {
    let n = inst.n();
    if n > max_n || n > 20 {
        return Err(Error::SizeGuard { n, max: max_n.min(20) });
    }
    Ok(n)
}

/// Cost of every subset, indexed by mask.
pub fn all_costs(inst: &SControlInstance, params: CostParams, max_n: usize) -> Result<Vec<Cost>> {
    let n = guard(inst, max_n)?;
    let mut eval = CostEvaluator::new(inst, params);
    Ok((0..1u64 << n).map(|m| eval.evaluate(&VertexSet::from_mask(n, m))).collect())
}

/// The `2^n x 2^n` one-step transition matrix at temperature `t`.
pub fn build_exact_tpm(inst: &SControlInstance, t: f64, params: CostParams, max_n: usize) -> Result<DMatrix<f64>> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Domain(format!("temperature must be positive, got {t}")));
    }
    let costs = all_costs(inst, params, max_n)?;
    let n = inst.n();
    let states = costs.len();
    let single = 2.0 / (3.0 * n as f64);
    let mut p = DMatrix::<f64>::zeros(states, states);
    for s in 0..states {
        let k = (s as u64).count_ones() as usize;
        let metropolis = |to: usize| super::acceptance_probability(costs[s].delta_to(&costs[to]), t);
        let mut off = 0.0;
        for v in 0..n {
            let to = s ^ (1 << v);
            let q = single * metropolis(to);
            p[(s, to)] = q;
            off += q;
        }
        if k > 0 && k < n {
            let pair = 1.0 / (3.0 * k as f64 * (n - k) as f64);
            for out in (0..n).filter(|v| s >> v & 1 == 1) {
                for inn in (0..n).filter(|v| s >> v & 1 == 0) {
                    let to = s ^ (1 << out) ^ (1 << inn);
                    let q = pair * metropolis(to);
                    p[(s, to)] = q;
                    off += q;
                }
            }
        }
        p[(s, s)] = 1.0 - off;
    }
    Ok(p)
}

/// `exp(-C(S)/t) / Z` by mask.
pub fn gibbs_distribution(inst: &SControlInstance, t: f64, params: CostParams, max_n: usize) -> Result<DVector<f64>> {
    let costs = all_costs(inst, params, max_n)?;
    let base = costs.iter().map(Cost::value).fold(f64::INFINITY, f64::min);
    let weights = DVector::from_iterator(costs.len(), costs.iter().map(|c| (-(c.value() - base) / t).exp()));
    let z = weights.sum();
    Ok(weights / z)
}

/// Solves `pi P = pi`, `sum(pi) = 1` by LU on `P^T - I` with the last row
/// replaced by the normalisation. `None` if the system is singular.
pub fn stationary_distribution(p: &DMatrix<f64>) -> Option<DVector<f64>> {
    let m = p.nrows();
    let mut a = p.transpose() - DMatrix::<f64>::identity(m, m);
    a.row_mut(m - 1).fill(1.0);
    let mut b = DVector::<f64>::zeros(m);
    b[m - 1] = 1.0;
    a.lu().solve(&b)
}

/// Count of eigenvalues with modulus within `tol` of one, for a chain
/// reversible with respect to the positive vector `pi`.
///
/// `D^1/2 P D^-1/2` with `D = diag(pi)` is symmetric under detailed balance
/// and shares the spectrum of `P`, so a symmetric eigensolver applies.
pub fn unit_modulus_eigenvalues(p: &DMatrix<f64>, pi: &DVector<f64>, tol: f64) -> usize {
    let root = pi.map(f64::sqrt);
    let s = DMatrix::from_fn(p.nrows(), p.ncols(), |i, j| root[i] * p[(i, j)] / root[j]);
    let sym = (&s + s.transpose()) * 0.5;
    sym.symmetric_eigenvalues().iter().filter(|l| (l.abs() - 1.0).abs() < tol).count()
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Summary of the exact chain at one temperature.
#[derive(Clone, Debug, Serialize)]
pub struct TpmDiagnostics {
    pub n: usize,
    pub temperature: f64,
    pub max_row_sum_deviation: f64,
    /// `max |pi(S) P(S,S') - pi(S') P(S',S)|` with `pi` the Gibbs distribution.
    pub max_detailed_balance_violation: f64,
    /// Total variation between the solved stationary vector and Gibbs.
    pub stationary_gibbs_tv: f64,
    pub p_empty_empty: f64,
}

impl TpmDiagnostics {
    pub fn within(&self, tol: f64) -> bool {
        self.max_row_sum_deviation < tol && self.max_detailed_balance_violation < tol && self.stationary_gibbs_tv < tol
    }
}

pub fn check_tpm(inst: &SControlInstance, t: f64, params: CostParams, max_n: usize) -> Result<TpmDiagnostics> {
    let p = build_exact_tpm(inst, t, params, max_n)?;
    let gibbs = gibbs_distribution(inst, t, params, max_n)?;
    let m = p.nrows();
    let max_row_sum_deviation = p.row_iter().map(|r| (r.sum() - 1.0).abs()).fold(0.0, f64::max);
    let mut max_db = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            max_db = max_db.max((gibbs[i] * p[(i, j)] - gibbs[j] * p[(j, i)]).abs());
        }
    }
    let stationary_gibbs_tv = match stationary_distribution(&p) {
        Some(pi) => total_variation(pi.as_slice(), gibbs.as_slice()),
        None => f64::INFINITY,
    };
    Ok(TpmDiagnostics {
        n: inst.n(),
        temperature: t,
        max_row_sum_deviation,
        max_detailed_balance_violation: max_db,
        stationary_gibbs_tv,
        p_empty_empty: p[(0, 0)],
    })
}

/// Histogram of post-burn-in states of a fixed-temperature chain started at
/// the empty set. Intended for `n <= 10`.
pub fn empirical_distribution(
    inst: &SControlInstance,
    t: f64,
    params: CostParams,
    steps: u64,
    burn_in: u64,
    seed: u64,
) -> BTreeMap<VertexSet, f64> {
    let mut chain = Chain::new(inst, params, seed);
    for _ in 0..burn_in {
        chain.step(t);
    }
    let mut counts: BTreeMap<VertexSet, u64> = BTreeMap::new();
    for _ in 0..steps {
        chain.step(t);
        *counts.entry(chain.state().set.clone()).or_default() += 1;
    }
    counts.into_iter().map(|(s, c)| (s, c as f64 / steps as f64)).collect()
}

/// Dense mask-indexed vector from a histogram.
pub fn histogram_to_vector(n: usize, hist: &BTreeMap<VertexSet, f64>) -> Vec<f64> {
    let mut out = vec![0.0; 1 << n];
    for (s, f) in hist {
        out[s.to_mask() as usize] = *f;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_matrix_text;

    #[test]
    fn two_state_rows_sum_to_one() {
        let inst = SControlInstance::new(parse_matrix_text("x0\nxx\n").unwrap());
        let p = build_exact_tpm(&inst, 1.0, CostParams::default(), 10).unwrap();
        for r in p.row_iter() {
            assert!((r.sum() - 1.0).abs() < 1e-12);
        }
        assert!(p[(0, 0)] > 0.0);
    }

    #[test]
    fn truncated_worked_example_is_reversible() {
        let inst = SControlInstance::new(parse_matrix_text("x00\nx00\n0x0\n").unwrap());
        let d = check_tpm(&inst, 1.0, CostParams::default(), 10).unwrap();
        assert!(d.within(1e-10), "{d:?}");
        let p = build_exact_tpm(&inst, 1.0, CostParams::default(), 10).unwrap();
        let pi = gibbs_distribution(&inst, 1.0, CostParams::default(), 10).unwrap();
        assert_eq!(unit_modulus_eigenvalues(&p, &pi, 1e-8), 1);
    }

    #[test]
    fn guard_and_domain() {
        let inst = SControlInstance::new(crate::pattern::PatternMatrix::identity(11).unwrap());
        assert!(matches!(build_exact_tpm(&inst, 1.0, CostParams::default(), 10), Err(Error::SizeGuard { .. })));
        let small = SControlInstance::new(crate::pattern::PatternMatrix::identity(2).unwrap());
        assert!(build_exact_tpm(&small, 0.0, CostParams::default(), 10).is_err());
    }

    #[test]
    fn zero_steps_gives_empty_histogram() {
        let inst = SControlInstance::new(parse_matrix_text("x0\nxx\n").unwrap());
        assert!(empirical_distribution(&inst, 1.0, CostParams::default(), 0, 10, 1).is_empty());
    }
}
