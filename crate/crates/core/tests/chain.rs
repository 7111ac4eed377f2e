use std::collections::BTreeMap;

use motzkin_core::mcmc::{
    acceptance_ratio, apply_move, initial_state, neighbors, proposal_count, proposal_universe,
    ratio_to_f64, reachable_from, transition_row, tv_distance, Histogram,
};
use motzkin_core::random::derive_seed;
use motzkin_core::{enumerate_sequences, BigUint, Binomials, BuildingSequence, ChainState, Ratio};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn move_graph_is_connected_for_small_widths() {
    for n in 0..=10 {
        for a in 0..=n * n / 4 {
            let class = enumerate_sequences(n, a, usize::MAX).unwrap();
            let start = initial_state(n, a).unwrap();
            let reached = reachable_from(&start);
            assert_eq!(reached.len(), class.len(), "S({n},{a})");
            assert!(class.iter().all(|s| reached.contains(s)));
        }
    }
}

#[test]
fn neighbour_relation_is_symmetric() {
    for a in enumerate_sequences(10, 12, usize::MAX).unwrap() {
        for b in neighbors(&a) {
            assert!(neighbors(&b).contains(&a), "{a} -> {b}");
        }
    }
}

#[test]
fn detailed_balance_holds_exactly() {
    let binom = Binomials::for_width(6);
    let class = enumerate_sequences(6, 4, usize::MAX).unwrap();
    assert!(class.len() > 2);
    let rows: BTreeMap<BuildingSequence, BTreeMap<BuildingSequence, Ratio<BigUint>>> =
        class.iter().map(|a| (a.clone(), transition_row(a, &binom))).collect();
    let zero = Ratio::from_integer(BigUint::zero());
    let mut pairs = 0;
    for a in &class {
        for b in &class {
            let ab = rows[a].get(b).unwrap_or(&zero);
            let ba = rows[b].get(a).unwrap_or(&zero);
            let lhs = Ratio::from_integer(a.total_weight(&binom)) * ab;
            let rhs = Ratio::from_integer(b.total_weight(&binom)) * ba;
            assert_eq!(lhs, rhs, "{a} <-> {b}");
            if a != b && !ab.is_zero() {
                pairs += 1;
            }
        }
    }
    assert!(pairs > 0);
}

#[test]
fn stationary_law_is_invariant() {
    let binom = Binomials::for_width(10);
    let class = enumerate_sequences(10, 12, usize::MAX).unwrap();
    let mut flow: BTreeMap<BuildingSequence, Ratio<BigUint>> = BTreeMap::new();
    for a in &class {
        let w = Ratio::from_integer(a.total_weight(&binom));
        for (b, p) in transition_row(a, &binom) {
            *flow.entry(b).or_insert_with(|| Ratio::from_integer(BigUint::zero())) += &w * p;
        }
    }
    for a in &class {
        assert_eq!(flow[a], Ratio::from_integer(a.total_weight(&binom)), "{a}");
    }
}

#[test]
fn incremental_ratios_match_recomputation() {
    let n = 16;
    let binom = Binomials::for_width(n);
    let universe: Vec<_> = proposal_universe(n).collect();
    assert_eq!(universe.len(), proposal_count(n));
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    for (k, area) in [10usize, 25, 40, 64].into_iter().enumerate() {
        let mut a = initial_state(n, area).unwrap();
        while checked < 25_000 * (k + 1) {
            let mv = universe[rng.random_range(0..universe.len())];
            let Ok(b) = apply_move(&a, &mv) else { continue };
            let direct = Ratio::new(b.total_weight(&binom), a.total_weight(&binom));
            assert_eq!(acceptance_ratio(&a, &b, &binom), direct, "{a} -> {b} by {mv:?}");
            checked += 1;
            a = b;
        }
    }
    assert_eq!(checked, 100_000);
}

#[test]
fn chains_conserve_width_and_area() {
    let binom = Binomials::for_width(20);
    for (n, area) in [(12usize, 20usize), (20, 60), (20, 90)] {
        let start = initial_state(n, area).unwrap();
        let mut chain = ChainState::new(&start, ChaCha8Rng::seed_from_u64(derive_seed(5, n as u64)));
        for _ in 0..5000 {
            chain.step(&binom);
            let a = chain.sequence();
            assert_eq!((a.width(), a.area()), (n, area));
        }
        assert!(chain.accepted() > 0);
    }
}

#[test]
fn long_run_frequencies_approach_stationarity() {
    let (n, area) = (8, 9);
    let binom = Binomials::for_width(n);
    let start = initial_state(n, area).unwrap();
    let total: BigUint = enumerate_sequences(n, area, usize::MAX)
        .unwrap()
        .iter()
        .map(|a| a.total_weight(&binom))
        .sum();
    let mut hist = Histogram::new();
    for run in 0..2000 {
        let mut chain = ChainState::new(&start, ChaCha8Rng::seed_from_u64(derive_seed(77, run)));
        chain.run(3000, &binom);
        *hist.entry(chain.sequence()).or_default() += 1;
    }
    let tv = ratio_to_f64(&tv_distance(hist.iter().map(|(a, c)| (a, *c)), &total, &binom));
    assert!(tv < 0.06, "tv = {tv}");
}

#[test]
fn derived_seeds_are_distinct() {
    let seeds: std::collections::BTreeSet<u64> = (0..10_000).map(|i| derive_seed(1, i)).collect();
    assert_eq!(seeds.len(), 10_000);
    assert_eq!(derive_seed(3, 4), derive_seed(3, 4));
    assert_ne!(derive_seed(3, 4), derive_seed(4, 4));
}
