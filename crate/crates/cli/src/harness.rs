//! Many independent Metropolis chains advanced in lockstep, with the total
//! variation distance to the stationary law measured on a fixed schedule.

use std::thread;

use motzkin_core::mcmc::{initial_state, ratio_to_f64, tv_distance, Histogram};
use motzkin_core::random::derive_seed;
use motzkin_core::{BigUint, Binomials, ChainState, CountTable, Kind, Mode};
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarnessError {
    #[error("no building sequence has width {n} and area {area}")]
    EmptyClass { n: usize, area: usize },
    #[error("runs must be at least 1")]
    NoRuns,
    #[error("tv-every must be at least 1")]
    ZeroInterval,
    #[error("not mixed within {horizon} steps (last tv = {last_tv:.4})")]
    NotMixed { horizon: u64, last_tv: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub area: usize,
    /// Horizon `t`.
    pub steps: u64,
    pub runs: u64,
    pub seed: u64,
    /// Report the distance every `tv_every` steps, and at the horizon.
    pub tv_every: u64,
}

impl ExperimentConfig {
    /// Scheduled report times: `0, k, 2k, ...` and the horizon itself.
    pub fn schedule(&self) -> Vec<u64> {
        let k = self.tv_every.max(1);
        let mut times: Vec<u64> = (0..=self.steps / k).map(|i| i * k).collect();
        if !self.steps.is_multiple_of(k) {
            times.push(self.steps);
        }
        times
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TvPoint {
    pub t: u64,
    pub tv: f64,
    pub visited: usize,
}

/// All chains of one experiment, started from the greedy initial state.
///
/// Chain `i` draws from `ChaCha8Rng` seeded with `derive_seed(seed, i)`, so
/// results do not depend on how chains are split across threads.
pub struct Experiment {
    binom: Binomials,
    total: BigUint,
    chains: Vec<ChainState<ChaCha8Rng>>,
    time: u64,
}

impl Experiment {
    pub fn new(n: usize, area: usize, runs: u64, seed: u64) -> Result<Self, HarnessError> {
        if runs == 0 {
            return Err(HarnessError::NoRuns);
        }
        let start = initial_state(n, area).map_err(|_| HarnessError::EmptyClass { n, area })?;
        let total = CountTable::build(n, Kind::Weighted, Mode::Rolling)
            .marginal(n, area)
            .expect("table covers width n");
        if total.is_zero() {
            return Err(HarnessError::EmptyClass { n, area });
        }
        let chains = (0..runs)
            .map(|i| ChainState::new(&start, ChaCha8Rng::seed_from_u64(derive_seed(seed, i))))
            .collect();
        Ok(Experiment {
            binom: Binomials::for_width(n),
            total,
            chains,
            time: 0,
        })
    }

    /// Steps taken by every chain so far.
    pub fn time(&self) -> u64 {
        self.time
    }

    /// `D(n, A)`, the normalizer of the stationary law.
    pub fn total_weight(&self) -> &BigUint {
        &self.total
    }

    pub fn advance(&mut self, steps: u64, threads: usize) {
        let binom = &self.binom;
        let chunk = self.chains.len().div_ceil(threads.max(1));
        if chunk >= self.chains.len() {
            self.chains.iter_mut().for_each(|c| c.run(steps, binom));
        } else {
            thread::scope(|s| {
                for part in self.chains.chunks_mut(chunk) {
                    s.spawn(move || part.iter_mut().for_each(|c| c.run(steps, binom)));
                }
            });
        }
        self.time += steps;
    }

    /// Current states of all chains, counted.
    pub fn histogram(&self) -> Histogram {
        let mut hist = Histogram::new();
        for chain in &self.chains {
            *hist.entry(chain.sequence()).or_default() += 1;
        }
        hist
    }

    pub fn observe(&self) -> TvPoint {
        let hist = self.histogram();
        let tv = tv_distance(hist.iter().map(|(a, c)| (a, *c)), &self.total, &self.binom);
        TvPoint {
            t: self.time,
            tv: ratio_to_f64(&tv),
            visited: hist.len(),
        }
    }
}

/// Runs the experiment to its horizon, calling `report` at every scheduled
/// time. Returning `false` from `report` stops early.
pub fn tv_curve(
    cfg: &ExperimentConfig,
    threads: usize,
    mut report: impl FnMut(&TvPoint) -> bool,
) -> Result<Vec<TvPoint>, HarnessError> {
    if cfg.tv_every == 0 {
        return Err(HarnessError::ZeroInterval);
    }
    let mut exp = Experiment::new(cfg.n, cfg.area, cfg.runs, cfg.seed)?;
    let mut points = Vec::new();
    for t in cfg.schedule() {
        exp.advance(t - exp.time(), threads);
        let point = exp.observe();
        let go_on = report(&point);
        points.push(point);
        if !go_on {
            break;
        }
    }
    Ok(points)
}

/// First scheduled time at which the estimated distance is at most
/// `epsilon`.
pub fn estimate_mixing_time(
    cfg: &ExperimentConfig,
    epsilon: f64,
    threads: usize,
) -> Result<u64, HarnessError> {
    let points = tv_curve(cfg, threads, |p| p.tv > epsilon)?;
    let last = points.last().expect("schedule starts at 0");
    if last.tv <= epsilon {
        Ok(last.t)
    } else {
        Err(HarnessError::NotMixed {
            horizon: cfg.steps,
            last_tv: last.tv,
        })
    }
}

/// `A*_n`, the area at which the mixing time from the greedy start peaks.
pub fn worst_area(n: usize) -> usize {
    let half = if n.is_multiple_of(2) { n.saturating_sub(2) / 2 } else { (n - 1) / 2 };
    half * half
}
