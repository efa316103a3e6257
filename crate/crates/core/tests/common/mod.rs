//! Naive reference implementations used as test oracles. They work on plain
//! boolean matrices and share no code with the library's closure engine.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zfc_opt::{PatternMatrix, VertexSet};

/// `rows[i][j]` is true when entry (i, j) is a free parameter, i.e. the graph
/// has an edge `j -> i`.
pub type Rows = Vec<Vec<bool>>;

pub fn rows_of(a: &PatternMatrix) -> Rows {
    let n = a.dim();
    (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect()
}

pub fn with_full_diagonal(rows: &Rows) -> Rows {
    let mut out = rows.clone();
    for (i, r) in out.iter_mut().enumerate() {
        r[i] = true;
    }
    out
}

fn out_neighbours(rows: &Rows, u: usize) -> Vec<usize> {
    (0..rows.len()).filter(|&i| rows[i][u]).collect()
}

/// Applies one randomly chosen legal force at a time until none is left.
/// Returns the final colouring and the forces in order.
pub fn naive_closure<R: Rng>(rows: &Rows, initial: &[bool], forbidden: &[bool], rng: &mut R) -> (Vec<bool>, Vec<(usize, usize)>) {
    let n = rows.len();
    let mut black = initial.to_vec();
    let mut forces = Vec::new();
    loop {
        let mut candidates = Vec::new();
        for u in 0..n {
            let whites: Vec<usize> = out_neighbours(rows, u).into_iter().filter(|&w| !black[w]).collect();
            if whites.len() == 1 && !(whites[0] == u && forbidden[u]) {
                candidates.push((u, whites[0]));
            }
        }
        let Some(&(u, w)) = candidates.choose(rng) else { break };
        black[w] = true;
        forces.push((u, w));
    }
    (black, forces)
}

pub fn mask_to_bools(n: usize, mask: u64) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

pub fn bools_to_set(b: &[bool]) -> VertexSet {
    VertexSet::from_indices(b.len(), b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i)).unwrap()
}

pub fn set_to_bools(s: &VertexSet) -> Vec<bool> {
    (0..s.universe()).map(|i| s.contains(i)).collect()
}

/// Residual white sets (plain, restricted) computed naively.
pub fn naive_residuals(rows: &Rows, set: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let n = rows.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let diag: Vec<bool> = (0..n).map(|i| rows[i][i]).collect();
    let (plain, _) = naive_closure(rows, set, &vec![false; n], &mut rng);
    let (restricted, _) = naive_closure(&with_full_diagonal(rows), set, &diag, &mut rng);
    (plain.iter().map(|b| !b).collect(), restricted.iter().map(|b| !b).collect())
}

pub fn naive_controllable(rows: &Rows, set: &[bool]) -> bool {
    let (w, wx) = naive_residuals(rows, set);
    !w.iter().chain(&wx).any(|&b| b)
}

pub fn naive_cost(rows: &Rows, set: &[bool], epsilon: f64) -> f64 {
    let (w, wx) = naive_residuals(rows, set);
    let size = set.iter().filter(|&&b| b).count();
    let union = w.iter().zip(&wx).filter(|(a, b)| **a || **b).count();
    size as f64 + (1.0 + epsilon) * union as f64
}

/// Minimum size of a controlling set and all masks achieving it.
pub fn brute_force_optimum(rows: &Rows) -> (usize, Vec<u64>) {
    let n = rows.len();
    let mut best = n + 1;
    let mut witnesses = Vec::new();
    for mask in 0..(1u64 << n) {
        let k = mask.count_ones() as usize;
        if k > best {
            continue;
        }
        if naive_controllable(rows, &mask_to_bools(n, mask)) {
            if k < best {
                best = k;
                witnesses.clear();
            }
            witnesses.push(mask);
        }
    }
    (best, witnesses)
}

pub fn random_pattern(n: usize, density: f64, seed: u64) -> PatternMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
    PatternMatrix::from_entries(n, entries).unwrap()
}

pub fn random_set(n: usize, seed: u64) -> VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    VertexSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.3))).unwrap()
}
