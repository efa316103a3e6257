use rand::Rng as _;
use serde::Serialize;

use crate::rng::Rng;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Add,
    Remove,
    Swap,
    /// A swap drawn while the set is empty or full.
    Stay,
}

/// Probabilities `(add, remove, swap)` for a set of size `k` in a universe of `n`:
/// `2(n-k)/3n`, `2k/3n`, `1/3`.
pub fn move_class_probabilities(k: usize, n: usize) -> (f64, f64, f64) {
    let n3 = 3.0 * n as f64;
    (2.0 * (n - k) as f64 / n3, 2.0 * k as f64 / n3, 1.0 / 3.0)
}

/// Draws a neighbour of `set`.
///
/// The move class is picked from one integer in `[0, 3n)` so the class
/// probabilities are exact. Add takes a uniform non-member, remove a uniform
/// member, and swap one of each.
pub fn propose(set: &VertexSet, rng: &mut Rng) -> (VertexSet, Move) {
    let n = set.universe();
    let k = set.len();
    let r = rng.gen_range(0..3 * n);
    let mut next = set.clone();
    if r < 2 * (n - k) {
        let v = set.nth_non_member(rng.gen_range(0..n - k)).expect("non-member exists");
        next.insert(v);
        (next, Move::Add)
    } else if r < 2 * n {
        let v = set.nth_member(rng.gen_range(0..k)).expect("member exists");
        next.remove(v);
        (next, Move::Remove)
    } else if k == 0 || k == n {
        (next, Move::Stay)
    } else {
        let out = set.nth_member(rng.gen_range(0..k)).expect("member exists");
        let inn = set.nth_non_member(rng.gen_range(0..n - k)).expect("non-member exists");
        next.remove(out);
        next.insert(inn);
        (next, Move::Swap)
    }
}

/// `min(1, exp(-delta / t))` where `delta = C(S_p) - C(S)`.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-delta / temperature).exp()
    }
}

/// Metropolis acceptance. Downhill and level moves never consume randomness.
pub fn accept(delta: f64, temperature: f64, rng: &mut Rng) -> bool {
    debug_assert!(temperature > 0.0);
    delta <= 0.0 || rng.gen::<f64>() < acceptance_probability(delta, temperature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn empty_set_never_removes() {
        let mut rng = seeded(1);
        let s = VertexSet::empty(6);
        assert_eq!(move_class_probabilities(0, 6), (2.0 / 3.0, 0.0, 1.0 / 3.0));
        for _ in 0..2000 {
            let (sp, mv) = propose(&s, &mut rng);
            match mv {
                Move::Add => assert_eq!(sp.len(), 1),
                Move::Stay => assert_eq!(sp, s),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn full_set_never_adds() {
        let mut rng = seeded(2);
        let s = VertexSet::full(6);
        assert_eq!(move_class_probabilities(6, 6), (0.0, 2.0 / 3.0, 1.0 / 3.0));
        for _ in 0..2000 {
            let (sp, mv) = propose(&s, &mut rng);
            assert!(matches!(mv, Move::Remove | Move::Stay));
            assert_eq!(sp.len(), if mv == Move::Stay { 6 } else { 5 });
        }
    }

    #[test]
    fn swap_keeps_size() {
        let mut rng = seeded(3);
        let s = VertexSet::from_indices(6, [1, 4]).unwrap();
        for _ in 0..2000 {
            let (sp, mv) = propose(&s, &mut rng);
            if mv == Move::Swap {
                assert_eq!(sp.len(), 2);
                assert_eq!(sp.difference(&s).len(), 1);
            }
        }
    }

    #[test]
    fn acceptance_rules() {
        let mut rng = seeded(4);
        for _ in 0..100 {
            assert!(accept(0.0, 0.5, &mut rng));
            assert!(accept(-1.0, 0.5, &mut rng));
        }
        assert!((acceptance_probability(1.1, 1.0) - (-1.1f64).exp()).abs() < 1e-15);
        // At the stopping temperature an uphill step of one is never taken.
        assert!(acceptance_probability(1.0, 0.001) < 1e-300);
    }
}
