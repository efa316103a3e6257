mod common;

use common::{brute_force_optimum, mask_to_bools, naive_controllable, naive_cost, naive_residuals, random_pattern, rows_of, set_to_bools, bools_to_set};
use proptest::prelude::*;
use zfc_opt::control::{cost, repair, verify, white_residuals};
use zfc_opt::exact::{solve_exact, solve_exact_bounded};
use zfc_opt::{CostParams, SControlInstance, VertexSet};

fn small_instance(max_n: usize) -> impl Strategy<Value = SControlInstance> {
    (1usize..=max_n, 0.05f64..0.6, any::<u64>()).prop_map(|(n, d, s)| SControlInstance::new(random_pattern(n, d, s)))
}

fn with_set(max_n: usize) -> impl Strategy<Value = (SControlInstance, VertexSet)> {
    small_instance(max_n).prop_flat_map(|inst| {
        let n = inst.n();
        proptest::bits::u64::between(0, n).prop_map(move |m| (inst.clone(), VertexSet::from_mask(n, m)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residuals_and_cost_match_oracle((inst, s) in with_set(9), eps in 0.01f64..2.0) {
        let rows = rows_of(inst.pattern());
        let (w, wx) = white_residuals(&inst, &s).unwrap();
        let (nw, nwx) = naive_residuals(&rows, &set_to_bools(&s));
        prop_assert_eq!(w, bools_to_set(&nw));
        prop_assert_eq!(wx, bools_to_set(&nwx));
        let c = cost(&inst, &s, CostParams::new(eps).unwrap()).unwrap();
        prop_assert!((c.value() - naive_cost(&rows, &set_to_bools(&s), eps)).abs() < 1e-9);
        prop_assert_eq!(verify(&inst, &s).unwrap(), naive_controllable(&rows, &set_to_bools(&s)));
    }

    #[test]
    fn verify_is_monotone((inst, s) in with_set(9), extra in any::<u64>()) {
        let n = inst.n();
        let t = s.union(&VertexSet::from_mask(n, extra & ((1u64 << n) - 1)));
        if verify(&inst, &s).unwrap() {
            prop_assert!(verify(&inst, &t).unwrap());
        }
    }

    #[test]
    fn repair_is_feasible_and_idempotent((inst, s) in with_set(9)) {
        let r = repair(&inst, &s).unwrap();
        prop_assert!(s.is_subset(&r));
        prop_assert!(verify(&inst, &r).unwrap());
        prop_assert_eq!(&repair(&inst, &r).unwrap(), &r);
        if verify(&inst, &s).unwrap() {
            prop_assert_eq!(&r, &s);
        }
    }

    #[test]
    fn relabeling_preserves_verdicts((inst, s) in with_set(8), seed in any::<u64>()) {
        let n = inst.n();
        let perm = {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            p
        };
        let moved = inst.relabel(&perm);
        prop_assert_eq!(verify(&inst, &s).unwrap(), verify(&moved, &s.relabel(&perm)).unwrap());
        let (w, wx) = white_residuals(&inst, &s).unwrap();
        let (mw, mwx) = white_residuals(&moved, &s.relabel(&perm)).unwrap();
        prop_assert_eq!(w.relabel(&perm), mw);
        prop_assert_eq!(wx.relabel(&perm), mwx);
    }

    #[test]
    fn exact_solvers_agree_with_brute_force(inst in small_instance(8)) {
        let (opt, masks) = brute_force_optimum(&rows_of(inst.pattern()));
        let enumerated = solve_exact(&inst, 20).unwrap();
        prop_assert_eq!(enumerated.optimum, opt);
        let want: Vec<VertexSet> = masks.iter().map(|&m| VertexSet::from_mask(inst.n(), m)).collect();
        let mut got = enumerated.witnesses.clone();
        got.sort();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        prop_assert_eq!(got, want_sorted);
        let bounded = solve_exact_bounded(&inst, inst.n()).unwrap().expect("V is always feasible");
        prop_assert_eq!(bounded.optimum, opt);
        prop_assert_eq!(&bounded.witnesses, &enumerated.witnesses);
        if opt > 0 {
            prop_assert!(solve_exact_bounded(&inst, opt - 1).unwrap().is_none());
        }
    }

    #[test]
    fn relabeling_preserves_optimum(inst in small_instance(8), perm_seed in any::<u64>()) {
        let n = inst.n();
        let perm = {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
            p
        };
        prop_assert_eq!(solve_exact(&inst, 20).unwrap().optimum, solve_exact(&inst.relabel(&perm), 20).unwrap().optimum);
    }
}

/// Cost minimisers are exactly the minimum-size controlling sets.
fn check_cost_minimisers(inst: &SControlInstance, eps: f64) {
    let n = inst.n();
    let rows = rows_of(inst.pattern());
    let (opt, masks) = brute_force_optimum(&rows);
    let params = CostParams::new(eps).unwrap();
    let costs: Vec<f64> = (0..1u64 << n).map(|m| cost(inst, &VertexSet::from_mask(n, m), params).unwrap().value()).collect();
    let min = costs.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!((min - opt as f64).abs() < 1e-9);
    let argmin: Vec<u64> = (0..1u64 << n).filter(|&m| (costs[m as usize] - min).abs() < 1e-9).collect();
    assert_eq!(argmin, masks);
    for m in masks {
        assert!(naive_controllable(&rows, &mask_to_bools(n, m)));
    }
}

#[test]
fn cost_minimisers_are_optimal_controlling_sets() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 7);
        let inst = SControlInstance::new(random_pattern(n, 0.15 + 0.05 * (seed % 6) as f64, seed));
        for eps in [0.01, 0.1, 1.0] {
            check_cost_minimisers(&inst, eps);
        }
    }
}

#[test]
fn full_set_costs_n() {
    for seed in 0..20 {
        let inst = SControlInstance::new(random_pattern(6, 0.3, seed));
        let c = cost(&inst, &VertexSet::full(6), CostParams::default()).unwrap();
        assert_eq!(c.value(), 6.0);
        assert!(c.is_feasible());
    }
}
