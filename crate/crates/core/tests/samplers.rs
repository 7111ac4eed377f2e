use std::collections::BTreeMap;

use motzkin_core::oracle::{all_paths, for_each_permutation};
use motzkin_core::random::{derive_seed, uniform_below};
use motzkin_core::{
    enumerate_sequences, sample_perm_for_path, BigUint, Binomials, BuildingSequence, CountTable,
    Kind, Mode, MotzkinPath, Permutation, TableError,
};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson statistic against `weights` (unnormalized), checked at the 99.9% level.
fn chi_square_passes<K: Ord + std::fmt::Debug>(observed: &BTreeMap<K, u64>, weights: &BTreeMap<K, f64>) -> bool {
    for k in observed.keys() {
        assert!(weights.contains_key(k), "sample outside the support: {k:?}");
    }
    let total: u64 = observed.values().sum();
    let mass: f64 = weights.values().sum();
    let stat: f64 = weights
        .iter()
        .map(|(k, w)| {
            let e = total as f64 * w / mass;
            let o = *observed.get(k).unwrap_or(&0) as f64;
            (o - e) * (o - e) / e
        })
        .sum();
    let df = (weights.len() - 1) as f64;
    stat <= ChiSquared::new(df).unwrap().inverse_cdf(0.999)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn unweighted_backtrace_is_uniform() {
    let table = CountTable::build(4, Kind::Unweighted, Mode::Full);
    let mut r = rng(1);
    let mut seen: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..30_000 {
        *seen.entry(table.sample_path(4, 2, &mut r).unwrap().to_string()).or_default() += 1;
    }
    let target: BTreeMap<String, f64> = ["UDUD", "UHDH", "HUHD"].iter().map(|s| (s.to_string(), 1.0)).collect();
    assert!(chi_square_passes(&seen, &target), "{seen:?}");
}

#[test]
fn weighted_backtrace_follows_weights() {
    let table = CountTable::build(6, Kind::Weighted, Mode::Full);
    let target: BTreeMap<String, f64> = all_paths(6)
        .into_iter()
        .filter(|p| p.area() == 3)
        .map(|p| (p.to_string(), p.weight().to_f64().unwrap()))
        .collect();
    let mut r = rng(2);
    let mut seen: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..100_000 {
        *seen.entry(table.sample_path(6, 3, &mut r).unwrap().to_string()).or_default() += 1;
    }
    assert!(chi_square_passes(&seen, &target), "{seen:?}");
}

#[test]
fn backtrace_hits_every_class_member() {
    for kind in [Kind::Unweighted, Kind::Weighted] {
        let table = CountTable::build(9, kind, Mode::Full);
        let mut r = rng(3);
        for n in 0..=9 {
            for a in 0..=n * n / 4 {
                let members: Vec<String> = all_paths(n)
                    .into_iter()
                    .filter(|p| p.area() == a)
                    .map(|p| p.to_string())
                    .collect();
                if members.is_empty() {
                    assert_eq!(table.sample_path(n, a, &mut r), Err(TableError::EmptyClass { n, area: a }));
                    continue;
                }
                for _ in 0..20 {
                    let p = table.sample_path(n, a, &mut r).unwrap();
                    assert_eq!((p.width(), p.area()), (n, a));
                    assert!(members.contains(&p.to_string()));
                }
            }
        }
    }
}

#[test]
fn rolling_tables_refuse_to_sample() {
    let table = CountTable::build(6, Kind::Weighted, Mode::Rolling);
    assert_eq!(table.sample_path(6, 3, &mut rng(0)), Err(TableError::WrongMode));
}

#[test]
fn sequence_sampler_is_uniform_over_eighteen_paths() {
    let seq: BuildingSequence = "1;1,1;2,2".parse().unwrap();
    let target: BTreeMap<String, f64> = all_paths(10)
        .into_iter()
        .filter(|p| p.building_sequence() == seq)
        .map(|p| (p.to_string(), 1.0))
        .collect();
    assert_eq!(target.len(), 18);
    let mut r = rng(4);
    let mut seen: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..100_000 {
        *seen.entry(seq.sample_path(&mut r).to_string()).or_default() += 1;
    }
    assert!(chi_square_passes(&seen, &target), "{seen:?}");
}

#[test]
fn sequence_sampler_roundtrips() {
    let binom = Binomials::for_width(10);
    let mut r = rng(5);
    for n in 0..=10 {
        for a in 0..=n * n / 4 {
            for seq in enumerate_sequences(n, a, usize::MAX).unwrap() {
                let draws = 3 * seq.path_count(&binom).to_usize().unwrap().min(10);
                for _ in 0..draws {
                    assert_eq!(seq.sample_path(&mut r).building_sequence(), seq);
                }
            }
        }
    }
}

#[test]
fn figure_permutations_are_uniform() {
    let path: MotzkinPath = "UUHDHUHDDH".parse().unwrap();
    let mut target: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for_each_permutation(10, |images| {
        let perm = Permutation::from_images(images.iter().map(|x| x + 1).collect()).unwrap();
        if perm.to_path() == path {
            target.insert(perm.images().to_vec(), 1.0);
        }
    });
    assert_eq!(target.len(), 1200);
    let mut r = rng(6);
    let mut seen: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for _ in 0..100_000 {
        let perm = sample_perm_for_path(&path, &mut r);
        assert_eq!(perm.displacement(), 24);
        *seen.entry(perm.images().to_vec()).or_default() += 1;
    }
    assert_eq!(seen.len(), 1200);
    assert!(chi_square_passes(&seen, &target));
}

#[test]
fn permutation_sampler_roundtrips_on_all_small_paths() {
    for n in 0..=10 {
        for (k, path) in all_paths(n).into_iter().enumerate() {
            let mut r = rng(derive_seed(7, (n * 10_000 + k) as u64));
            for _ in 0..3 {
                let perm = sample_perm_for_path(&path, &mut r);
                assert_eq!(perm.to_path(), path);
                assert_eq!(perm.displacement(), 2 * path.area() as u64);
            }
        }
    }
}

#[test]
fn fibres_have_path_weight_many_permutations() {
    for n in 0..=8 {
        let mut fibres: BTreeMap<MotzkinPath, u64> = BTreeMap::new();
        for_each_permutation(n, |images| {
            let perm = Permutation::from_images(images.iter().map(|x| x + 1).collect()).unwrap();
            *fibres.entry(perm.to_path()).or_default() += 1;
        });
        for (path, size) in fibres {
            assert_eq!(path.weight(), BigUint::from(size), "{path}");
        }
    }
}

#[test]
fn big_uniform_draws_stay_below_bound() {
    let bound = BigUint::from(3u32).pow(100);
    let mut r = rng(8);
    let mut top_half = 0;
    for _ in 0..2000 {
        let x = uniform_below(&bound, &mut r);
        assert!(x < bound);
        if x.clone() * 2u32 >= bound {
            top_half += 1;
        }
    }
    assert!((850..1150).contains(&top_half), "{top_half}");
}

#[test]
fn seeded_samplers_repeat() {
    let table = CountTable::build(20, Kind::Weighted, Mode::Full);
    let draw = |seed| {
        let mut r = rng(seed);
        let path = table.sample_path(20, 50, &mut r).unwrap();
        let perm = sample_perm_for_path(&path, &mut r);
        (path, perm)
    };
    assert_eq!(draw(11), draw(11));
    assert_ne!(draw(11), draw(12));
}
