//! Random instance families.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::pattern::PatternMatrix;
use crate::rng;

/// Entry probability `(1 + delta) ln(n) / n`, clamped to 1.
pub fn erdos_renyi_probability(n: usize, delta: f64) -> f64 {
    ((1.0 + delta) * (n as f64).ln() / n as f64).min(1.0)
}

/// Pattern whose `n^2` entries are independently free with probability
/// [`erdos_renyi_probability`]. Diagonal entries are drawn like any other.
pub fn gen_erdos_renyi(n: usize, delta: f64, seed: u64) -> Result<PatternMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!("Erdos-Renyi generator needs n >= 2, got {n}")));
    }
    if delta.is_nan() || delta <= 0.0 || delta.is_infinite() {
        return Err(Error::Domain(format!("delta must be positive and finite, got {delta}")));
    }
    let p = erdos_renyi_probability(n, delta);
    let mut rng = rng::seeded(seed);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(p) {
                entries.push((i, j));
            }
        }
    }
    PatternMatrix::from_entries(n, entries)
}

/// Self-damped random recursive tree.
///
/// Vertex 0 is the root; vertex `k >= 1` picks its parent uniformly from
/// `[0, k)` and receives the edge `parent -> k`. Every diagonal entry is free.
pub fn gen_selfdamped_tree(n: usize, seed: u64) -> Result<PatternMatrix> {
    let mut rng = rng::seeded(seed);
    let mut entries: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for child in 1..n {
        let parent = rng.gen_range(0..child);
        entries.push((child, parent));
    }
    PatternMatrix::from_entries(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_rejects_small_n_and_bad_delta() {
        assert!(gen_erdos_renyi(1, 0.5, 0).is_err());
        assert!(gen_erdos_renyi(5, 0.0, 0).is_err());
        assert!(gen_erdos_renyi(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn er_clamps_to_full() {
        // (1 + 2) ln 2 / 2 > 1
        let a = gen_erdos_renyi(2, 2.0, 3).unwrap();
        assert_eq!(a.star_count(), 4);
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(gen_erdos_renyi(30, 0.5, 11).unwrap(), gen_erdos_renyi(30, 0.5, 11).unwrap());
        assert_ne!(gen_erdos_renyi(30, 0.5, 11).unwrap(), gen_erdos_renyi(30, 0.5, 12).unwrap());
    }

    #[test]
    fn tree_single_vertex() {
        let a = gen_selfdamped_tree(1, 0).unwrap();
        assert_eq!(a.star_count(), 1);
        assert!(a.get(0, 0));
    }

    #[test]
    fn tree_is_deterministic() {
        assert_eq!(gen_selfdamped_tree(40, 5).unwrap(), gen_selfdamped_tree(40, 5).unwrap());
    }
}
