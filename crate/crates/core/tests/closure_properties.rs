mod common;

use common::{bools_to_set, naive_closure, random_pattern, rows_of, set_to_bools, with_full_diagonal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zfc_opt::forcing::{closure, is_zfs, zero_forcing_number_exact, ForbiddenSelfForcers};
use zfc_opt::{LoopDigraph, PatternMatrix, VertexSet};

fn instance() -> impl Strategy<Value = (PatternMatrix, VertexSet, VertexSet)> {
    (1usize..=9, 0.05f64..0.6, any::<u64>()).prop_flat_map(|(n, density, seed)| {
        let a = random_pattern(n, density, seed);
        (Just(a), proptest::bits::u64::between(0, n), proptest::bits::u64::between(0, n)).prop_map(move |(a, s, f)| {
            (a, VertexSet::from_mask(n, s), VertexSet::from_mask(n, f))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn engine_matches_random_order_closure((a, s, f) in instance(), seed in any::<u64>()) {
        let n = a.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = a.graph();
        let engine = closure(&g, &s, &ForbiddenSelfForcers::new(f.clone()));
        for _ in 0..5 {
            let (black, _) = naive_closure(&rows_of(&a), &set_to_bools(&s), &set_to_bools(&f), &mut rng);
            prop_assert_eq!(&bools_to_set(&black), &engine.black);
        }
        prop_assert_eq!(engine.black.union(&engine.white_residual), VertexSet::full(n));
        prop_assert!(engine.black.is_disjoint(&engine.white_residual));
    }

    #[test]
    fn closure_is_monotone((a, s, f) in instance(), extra in any::<u64>()) {
        let n = a.dim();
        let g = a.graph();
        let forb = ForbiddenSelfForcers::new(f);
        let t = s.union(&VertexSet::from_mask(n, extra & ((1u64 << n) - 1)));
        let bs = closure(&g, &s, &forb).black;
        let bt = closure(&g, &t, &forb).black;
        prop_assert!(bs.is_subset(&bt));
    }

    #[test]
    fn closure_is_idempotent((a, s, f) in instance()) {
        let g = a.graph();
        let forb = ForbiddenSelfForcers::new(f);
        let once = closure(&g, &s, &forb);
        let twice = closure(&g, &once.black, &forb);
        prop_assert_eq!(&twice.black, &once.black);
        prop_assert!(twice.forces.is_empty());
    }

    #[test]
    fn forbidding_more_never_enlarges((a, s, f) in instance(), more in any::<u64>()) {
        let n = a.dim();
        let g = a.graph();
        let bigger = f.union(&VertexSet::from_mask(n, more & ((1u64 << n) - 1)));
        let loose = closure(&g, &s, &ForbiddenSelfForcers::new(f)).black;
        let tight = closure(&g, &s, &ForbiddenSelfForcers::new(bigger)).black;
        prop_assert!(tight.is_subset(&loose));
    }

    #[test]
    fn force_list_replays((a, s, f) in instance()) {
        let rows = rows_of(&a);
        let n = a.dim();
        let r = closure(&a.graph(), &s, &ForbiddenSelfForcers::new(f.clone()));
        let mut black = set_to_bools(&s);
        for &(u, w) in &r.forces {
            let whites: Vec<usize> = (0..n).filter(|&i| rows[i][u] && !black[i]).collect();
            prop_assert_eq!(&whites, &vec![w]);
            prop_assert!(!(u == w && f.contains(u)));
            black[w] = true;
        }
        prop_assert_eq!(bools_to_set(&black), r.black);
    }

    #[test]
    fn modified_graph_matches_full_diagonal(n in 1usize..=8, density in 0.05f64..0.6, seed in any::<u64>()) {
        let a = random_pattern(n, density, seed);
        prop_assert_eq!(rows_of(&a.modified()), with_full_diagonal(&rows_of(&a)));
    }
}

#[test]
fn path_needs_one_vertex() {
    let (g, _) = LoopDigraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let none = ForbiddenSelfForcers::none(3);
    assert_eq!(zero_forcing_number_exact(&g, &none, 10).unwrap(), 1);
    let singles: Vec<usize> = (0..3).filter(|&v| is_zfs(&g, &VertexSet::from_indices(3, [v]).unwrap(), &none)).collect();
    assert_eq!(singles, vec![0]);
}

#[test]
fn zero_forcing_number_matches_brute_force() {
    for seed in 0..40 {
        let a = random_pattern(7, 0.3, seed);
        let rows = rows_of(&a);
        let none = vec![false; 7];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let brute = (0u64..128)
            .filter(|&m| {
                let (black, _) = naive_closure(&rows, &common::mask_to_bools(7, m), &none, &mut rng);
                black.iter().all(|&b| b)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap();
        let z = zero_forcing_number_exact(&a.graph(), &ForbiddenSelfForcers::none(7), 10).unwrap();
        assert_eq!(z, brute, "seed {seed}");
    }
}
