//! Cross-checks between the counting backends, the oracles and the samplers.

use std::collections::BTreeMap;
use std::time::Instant;

use motzkin_core::mcmc::{
    acceptance_ratio, apply_move, initial_state, proposal_universe, reachable_from, transition_row,
};
use motzkin_core::oracle::{all_paths, brute_force_displacement_table, path_area_histogram, MAX_BRUTE_FORCE_N};
use motzkin_core::random::derive_seed;
use motzkin_core::{
    enumerate_sequences, sample_perm_for_path, BigUint, Binomials, BuildingSequence, CountTable,
    Kind, Mode, MotzkinPath, Ratio, TopDownTable,
};
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::harness::{estimate_mixing_time, worst_area, ExperimentConfig};

/// Widths above this are not brute-forced over paths.
const MAX_PATH_ENUMERATION: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(usize) -> Result<String, String>;

const CHECKS: [(&str, Check); 10] = [
    ("displacement counts match brute force", oracle_equality),
    ("last-fall, top-down and sequence sums agree", backend_agreement),
    ("row sums are n! and Motzkin numbers", row_sums),
    ("worked example", worked_example),
    ("path weights and multiplicities match sequences", sequence_algebra),
    ("rolling and full tables agree", rolling_matches_full),
    ("samplers roundtrip", sampler_roundtrips),
    ("move graph is connected", connectivity),
    ("detailed balance on (6,4)", detailed_balance),
    ("incremental ratios match recomputation", incremental_ratios),
];

/// Runs every check for widths up to `max_n`.
pub fn run_checks(max_n: usize) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            log::info!("verify: {name}");
            let (passed, detail) = match check(max_n) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name, passed, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equality(max_n: usize) -> Result<String, String> {
    let top = max_n.min(MAX_BRUTE_FORCE_N);
    let table = CountTable::build(top, Kind::Weighted, Mode::Rolling);
    for n in 0..=top {
        let brute = brute_force_displacement_table(n).map_err(|e| e.to_string())?;
        let dp = table.marginals(n).map_err(|e| e.to_string())?;
        for (d, b) in brute.iter().enumerate() {
            ensure(dp[d] == BigUint::from(*b), || format!("D({n},{d}) = {} but brute force gives {b}", dp[d]))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn class_weight(a: &BuildingSequence, kind: Kind, binom: &Binomials) -> BigUint {
    match kind {
        Kind::Unweighted => a.path_count(binom),
        Kind::Weighted => a.total_weight(binom),
    }
}

fn backend_agreement(max_n: usize) -> Result<String, String> {
    let binom = Binomials::for_width(max_n);
    for kind in [Kind::Unweighted, Kind::Weighted] {
        let table = CountTable::build(max_n, kind, Mode::Rolling);
        let mut top = TopDownTable::new(kind, max_n);
        for n in 0..=max_n {
            let dp = table.marginals(n).map_err(|e| e.to_string())?;
            for (a, want) in dp.iter().enumerate() {
                let td = top.marginal(n, a);
                ensure(&td == want, || format!("{kind:?} ({n},{a}): last-fall {want}, top-down {td}"))?;
                let seqs = enumerate_sequences(n, a, usize::MAX).map_err(|e| e.to_string())?;
                let sum: BigUint = seqs.iter().map(|s| class_weight(s, kind, &binom)).sum();
                ensure(&sum == want, || format!("{kind:?} ({n},{a}): last-fall {want}, sequences {sum}"))?;
            }
        }
    }
    Ok(format!("n <= {max_n}, both kinds"))
}

fn row_sums(max_n: usize) -> Result<String, String> {
    let weighted = CountTable::build(max_n, Kind::Weighted, Mode::Rolling);
    let mut factorial = BigUint::one();
    for n in 0..=max_n {
        if n > 0 {
            factorial *= n;
        }
        let sum: BigUint = weighted.marginals(n).map_err(|e| e.to_string())?.iter().sum();
        ensure(sum == factorial, || format!("sum of D({n},.) is {sum}, not {n}!"))?;
    }
    let top = max_n.min(MAX_PATH_ENUMERATION);
    let unweighted = CountTable::build(top, Kind::Unweighted, Mode::Rolling);
    for n in 0..=top {
        let brute = path_area_histogram(n);
        let dp = unweighted.marginals(n).map_err(|e| e.to_string())?;
        for (a, b) in brute.iter().enumerate() {
            ensure(dp[a] == BigUint::from(*b), || format!("M({n},{a}) = {} but enumeration gives {b}", dp[a]))?;
        }
    }
    Ok(format!("n! for n <= {max_n}, Motzkin for n <= {top}"))
}

fn worked_example(_: usize) -> Result<String, String> {
    let path: MotzkinPath = "UUHDHUHDDH".parse().map_err(|e| format!("{e}"))?;
    let seq = path.building_sequence();
    let binom = Binomials::for_width(10);
    let got = (
        path.weight(),
        seq.to_string(),
        seq.path_count(&binom),
        seq.total_weight(&binom),
    );
    let want = (BigUint::from(1200u32), "1;1,1;2,2".to_string(), BigUint::from(18u32), BigUint::from(21_600u32));
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("weight 1200, m 18, P 21600".into())
}

fn sequence_algebra(max_n: usize) -> Result<String, String> {
    let top = max_n.min(MAX_BRUTE_FORCE_N);
    let binom = Binomials::for_width(top);
    for n in 0..=top {
        let mut multiplicity: BTreeMap<BuildingSequence, u64> = BTreeMap::new();
        for path in all_paths(n) {
            let seq = path.building_sequence();
            ensure(seq.perm_weight() == path.weight(), || format!("perm({seq}) differs from weight({path})"))?;
            *multiplicity.entry(seq).or_default() += 1;
        }
        for (seq, count) in &multiplicity {
            let m = seq.path_count(&binom);
            ensure(m == BigUint::from(*count), || format!("m({seq}) = {m} but {count} paths"))?;
        }
        let listed: usize = (0..=n * n / 4)
            .map(|a| enumerate_sequences(n, a, usize::MAX).map(|v| v.len()))
            .sum::<Result<usize, _>>()
            .map_err(|e| e.to_string())?;
        ensure(listed == multiplicity.len(), || format!("width {n}: {listed} sequences listed, {} seen", multiplicity.len()))?;
    }
    Ok(format!("n <= {top}"))
}

fn rolling_matches_full(max_n: usize) -> Result<String, String> {
    let top = max_n.max(1);
    for kind in [Kind::Unweighted, Kind::Weighted] {
        let full = CountTable::build(top, kind, Mode::Full);
        let rolling = CountTable::build(top, kind, Mode::Rolling);
        for n in 0..=top {
            ensure(full.marginals(n) == rolling.marginals(n), || format!("{kind:?} width {n}"))?;
        }
    }
    Ok(format!("n <= {top}"))
}

fn sampler_roundtrips(max_n: usize) -> Result<String, String> {
    let top = max_n.min(MAX_BRUTE_FORCE_N);
    let mut draws = 0u64;
    for n in 0..=top {
        let table = CountTable::build(n, Kind::Weighted, Mode::Full);
        for (k, path) in all_paths(n).into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(n as u64, k as u64));
            let perm = sample_perm_for_path(&path, &mut rng);
            ensure(perm.to_path() == path, || format!("{perm} does not map back to {path}"))?;
            ensure(perm.displacement() == 2 * path.area() as u64, || format!("{perm}: displacement"))?;
            let seq = path.building_sequence();
            let back = seq.sample_path(&mut rng);
            ensure(back.building_sequence() == seq, || format!("{seq}: sampled {back}"))?;
            let dp = table.sample_path(n, path.area(), &mut rng).map_err(|e| e.to_string())?;
            ensure((dp.width(), dp.area()) == (n, path.area()), || format!("backtrace gave {dp}"))?;
            draws += 1;
        }
    }
    Ok(format!("{draws} paths of width <= {top}"))
}

fn connectivity(max_n: usize) -> Result<String, String> {
    let top = max_n.min(MAX_BRUTE_FORCE_N);
    let mut classes = 0;
    for n in 0..=top {
        for a in 0..=n * n / 4 {
            let class = enumerate_sequences(n, a, usize::MAX).map_err(|e| e.to_string())?;
            let start = initial_state(n, a).map_err(|_| format!("no initial state for ({n},{a})"))?;
            let reached = reachable_from(&start);
            ensure(reached.len() == class.len(), || {
                format!("({n},{a}): reached {} of {}", reached.len(), class.len())
            })?;
            classes += 1;
        }
    }
    Ok(format!("{classes} classes, n <= {top}"))
}

fn detailed_balance(_: usize) -> Result<String, String> {
    let binom = Binomials::for_width(6);
    let class = enumerate_sequences(6, 4, usize::MAX).map_err(|e| e.to_string())?;
    let rows: Vec<_> = class.iter().map(|a| transition_row(a, &binom)).collect();
    let zero = Ratio::from_integer(BigUint::zero());
    for (x, a) in class.iter().enumerate() {
        for (y, b) in class.iter().enumerate() {
            let lhs = Ratio::from_integer(a.total_weight(&binom)) * rows[x].get(b).unwrap_or(&zero);
            let rhs = Ratio::from_integer(b.total_weight(&binom)) * rows[y].get(a).unwrap_or(&zero);
            ensure(lhs == rhs, || format!("{a} <-> {b}"))?;
        }
    }
    Ok(format!("{} states", class.len()))
}

fn incremental_ratios(max_n: usize) -> Result<String, String> {
    let n = max_n.clamp(2, 24);
    let binom = Binomials::for_width(n);
    let universe: Vec<_> = proposal_universe(n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut a = initial_state(n, n * n / 8).map_err(|_| "no initial state".to_string())?;
    let mut checked = 0;
    for _ in 0..200_000 {
        let mv = universe[(rng.next_u64() % universe.len() as u64) as usize];
        let Ok(b) = apply_move(&a, &mv) else { continue };
        let direct = Ratio::new(b.total_weight(&binom), a.total_weight(&binom));
        ensure(acceptance_ratio(&a, &b, &binom) == direct, || format!("{a} -> {b}"))?;
        checked += 1;
        a = b;
    }
    Ok(format!("{checked} transitions at width {n}"))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub series: &'static str,
    pub n: usize,
    pub value: f64,
}

/// Wall-clock seconds for the weighted rolling table at each width.
pub fn build_scaling(widths: &[usize]) -> Vec<ScalingRow> {
    widths
        .iter()
        .map(|&n| {
            let start = Instant::now();
            let table = CountTable::build(n, Kind::Weighted, Mode::Rolling);
            let secs = start.elapsed().as_secs_f64();
            debug_assert!(table.width() == n);
            ScalingRow {
                series: "build_seconds",
                n,
                value: secs,
            }
        })
        .collect()
}

/// Estimated mixing time at `A*_n` for each width.
pub fn mixing_scaling(widths: &[usize], runs: u64, seed: u64, threads: usize) -> Vec<ScalingRow> {
    widths
        .iter()
        .map(|&n| {
            let cfg = ExperimentConfig {
                n,
                area: worst_area(n),
                steps: 100 * (n as u64).pow(3),
                runs,
                seed,
                tv_every: 10,
            };
            let t = estimate_mixing_time(&cfg, 0.05, threads).map_or(f64::NAN, |t| t as f64);
            ScalingRow {
                series: "mixing_time",
                n,
                value: t,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_on_small_widths() {
        for r in run_checks(7) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0].iter().map(|&x: &f64| (x, 3.0 * x.powi(4))).collect();
        assert!((log_log_slope(&pts) - 4.0).abs() < 1e-9);
    }
}
