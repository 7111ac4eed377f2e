//! Metropolis chain over building sequences of fixed width and area.
//!
//! Four local operations move blocks between heights while conserving width
//! and area:
//!
//! | op | changes |
//! |----|---------|
//! | `PF(i,j)` | `p_i -= 1, f_{i-1} += 2, f_j -= 1, f_{j+1} += 1` |
//! | `FV(i,j)` | `f_i -= 2, p_i += 1,     f_j -= 1, f_{j+1} += 1` |
//! | `FF(i,j)` | `f_i -= 1, f_{i+1} += 1, f_j -= 1, f_{j-1} += 1` |
//! | `PV(i,j)` | `p_i -= 1, f_{i-1} += 2, p_j -= 1, f_j += 2`     |
//!
//! and each can be applied in reverse. A step holds with probability 1/2,
//! otherwise proposes one move uniformly from the fixed universe
//! `{op} x {forward, reverse} x [0, n/2]^2` and accepts it with probability
//! `min(1, P(a')/P(a))`. Proposals leaving the set of building sequences
//! hold. The universe does not depend on the state and is closed under
//! reversal, so the chain is reversible with stationary law `P(a) / D(n, A)`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::binomial::Binomials;
use crate::blocks::BuildingSequence;
use crate::random::{bernoulli_ratio, bernoulli_ratio_u128};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    PeakToFlat,
    FlatToValley,
    FlatToFlat,
    PeakIntoValley,
}

impl Operation {
    pub const ALL: [Operation; 4] = [
        Operation::PeakToFlat,
        Operation::FlatToValley,
        Operation::FlatToFlat,
        Operation::PeakIntoValley,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalMove {
    pub op: Operation,
    pub i: usize,
    pub j: usize,
    pub direction: Direction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Flat(isize),
    Peak(isize),
}

impl LocalMove {
    pub fn new(op: Operation, i: usize, j: usize, direction: Direction) -> Self {
        LocalMove { op, i, j, direction }
    }

    pub fn forward(op: Operation, i: usize, j: usize) -> Self {
        LocalMove::new(op, i, j, Direction::Forward)
    }

    /// The move undoing this one.
    pub fn reversed(self) -> Self {
        let direction = match self.direction {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        };
        LocalMove { direction, ..self }
    }

    fn deltas(&self) -> [(Slot, i32); 4] {
        let (i, j) = (self.i as isize, self.j as isize);
        let forward = match self.op {
            Operation::PeakToFlat => [
                (Slot::Peak(i), -1),
                (Slot::Flat(i - 1), 2),
                (Slot::Flat(j), -1),
                (Slot::Flat(j + 1), 1),
            ],
            Operation::FlatToValley => [
                (Slot::Flat(i), -2),
                (Slot::Peak(i), 1),
                (Slot::Flat(j), -1),
                (Slot::Flat(j + 1), 1),
            ],
            Operation::FlatToFlat => [
                (Slot::Flat(i), -1),
                (Slot::Flat(i + 1), 1),
                (Slot::Flat(j), -1),
                (Slot::Flat(j - 1), 1),
            ],
            Operation::PeakIntoValley => [
                (Slot::Peak(i), -1),
                (Slot::Flat(i - 1), 2),
                (Slot::Peak(j), -1),
                (Slot::Flat(j), 2),
            ],
        };
        match self.direction {
            Direction::Forward => forward,
            Direction::Reverse => forward.map(|(slot, d)| (slot, -d)),
        }
    }
}

/// All moves the chain can propose for paths of width `n`.
pub fn proposal_universe(n: usize) -> impl Iterator<Item = LocalMove> {
    let k = n / 2 + 1;
    (0..proposal_count(n)).map(move |idx| decode_proposal(idx, k))
}

/// Size of the proposal universe for width `n`.
pub fn proposal_count(n: usize) -> usize {
    let k = n / 2 + 1;
    8 * k * k
}

fn decode_proposal(idx: usize, k: usize) -> LocalMove {
    let op = Operation::ALL[idx % 4];
    let direction = if (idx / 4).is_multiple_of(2) {
        Direction::Forward
    } else {
        Direction::Reverse
    };
    let i = (idx / 8) % k;
    let j = idx / (8 * k);
    LocalMove::new(op, i, j, direction)
}

/// A proposed move leaves the set of building sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("infeasible building sequence")]
pub struct Infeasible;

/// Fixed-capacity working copy of a building sequence on which moves are
/// applied in place.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense {
    flats: Vec<i32>,
    peaks: Vec<i32>,
}

impl Dense {
    /// Capacity covers every height a move on width-`n` sequences can touch.
    fn new(a: &BuildingSequence, n: usize) -> Self {
        let len = n / 2 + 2;
        let mut flats = vec![0; len];
        let mut peaks = vec![0; len];
        for i in 0..=a.height() {
            flats[i] = a.flat_count(i) as i32;
            peaks[i] = a.peak_count(i) as i32;
        }
        Dense { flats, peaks }
    }

    fn flat(&self, i: usize) -> u32 {
        self.flats.get(i).map_or(0, |&x| x as u32)
    }

    fn peak(&self, i: usize) -> u32 {
        self.peaks.get(i).map_or(0, |&x| x as u32)
    }

    fn top(&self) -> usize {
        (0..self.flats.len())
            .rev()
            .find(|&i| self.flats[i] != 0 || self.peaks[i] != 0)
            .unwrap_or(0)
    }

    fn to_sequence(&self) -> BuildingSequence {
        let top = self.top();
        let flats: Vec<u32> = self.flats[..=top].iter().map(|&x| x as u32).collect();
        let peaks: Vec<u32> = self.peaks[1..=top].iter().map(|&x| x as u32).collect();
        BuildingSequence::from_parts(&flats, &peaks).expect("dense state kept valid")
    }

    fn slot_mut(&mut self, slot: Slot) -> Option<&mut i32> {
        match slot {
            Slot::Flat(i) if i >= 0 => self.flats.get_mut(i as usize),
            Slot::Peak(i) if i >= 1 => self.peaks.get_mut(i as usize),
            _ => None,
        }
    }

    fn is_valid(&self) -> bool {
        if self.flats.iter().chain(&self.peaks).any(|&x| x < 0) {
            return false;
        }
        (1..=self.top()).all(|i| self.peaks[i] >= 1)
    }

    /// Applies the move in place; on failure the state is left untouched.
    fn apply(&mut self, mv: &LocalMove) -> Result<(), Infeasible> {
        let deltas = mv.deltas();
        if deltas.iter().any(|&(slot, _)| self.slot_mut(slot).is_none()) {
            return Err(Infeasible);
        }
        for &(slot, d) in &deltas {
            *self.slot_mut(slot).unwrap() += d;
        }
        if self.is_valid() {
            Ok(())
        } else {
            self.undo(mv);
            Err(Infeasible)
        }
    }

    fn undo(&mut self, mv: &LocalMove) {
        for &(slot, d) in &mv.deltas() {
            *self.slot_mut(slot).unwrap() -= d;
        }
    }
}

/// Applies `mv` to `a`, returning [`Infeasible`] if the result is not a
/// building sequence (negative count, or a missing peak below the top).
pub fn apply_move(a: &BuildingSequence, mv: &LocalMove) -> Result<BuildingSequence, Infeasible> {
    let mut dense = Dense::new(a, a.width());
    dense.apply(mv)?;
    Ok(dense.to_sequence())
}

/// Factors of `P(a)` that differ between two dense states, as binomial
/// arguments and powers over numerator and denominator.
#[derive(Default)]
struct RatioFactors {
    num_binom: Vec<(usize, usize)>,
    den_binom: Vec<(usize, usize)>,
    num_pow: Vec<(u64, u32)>,
    den_pow: Vec<(u64, u32)>,
}

fn valley_factor(state: &Dense, i: usize) -> Option<(usize, usize)> {
    let p = state.peak(i) as usize;
    (p > 0).then(|| (state.peak(i + 1) as usize + state.flat(i) as usize + p - 1, p - 1))
}

fn flat_factor(state: &Dense, i: usize) -> Option<(usize, usize)> {
    let p = state.peak(i) as usize;
    let f = state.flat(i - 1) as usize;
    (p > 0 && f > 0).then_some((p + f, f))
}

/// Collects the factors of `P(new) / P(old)` touched by a change at
/// `levels`. `m` changes only through the valley and flat factors adjacent
/// to a changed level, and `perm` through the changed counts themselves.
fn ratio_factors(old: &Dense, new: &Dense, levels: &[usize]) -> RatioFactors {
    let mut out = RatioFactors::default();
    let mut valleys: Vec<usize> = Vec::new();
    let mut flats: Vec<usize> = Vec::new();
    for &c in levels {
        valleys.push(c);
        if c >= 1 {
            valleys.push(c - 1);
        }
        flats.push(c);
        flats.push(c + 1);
    }
    valleys.retain(|&i| i >= 1);
    flats.retain(|&i| i >= 1);
    valleys.sort_unstable();
    valleys.dedup();
    flats.sort_unstable();
    flats.dedup();
    for &i in &valleys {
        out.num_binom.extend(valley_factor(new, i));
        out.den_binom.extend(valley_factor(old, i));
    }
    for &i in &flats {
        out.num_binom.extend(flat_factor(new, i));
        out.den_binom.extend(flat_factor(old, i));
    }
    for &c in levels {
        if c == 0 {
            continue;
        }
        let df = new.flat(c) as i64 - old.flat(c) as i64;
        let dp = new.peak(c) as i64 - old.peak(c) as i64;
        for (base, exp) in [(2 * c as u64 + 1, df), (c as u64, 2 * dp)] {
            if base == 1 || exp == 0 {
                continue;
            }
            if exp > 0 {
                out.num_pow.push((base, exp as u32));
            } else {
                out.den_pow.push((base, (-exp) as u32));
            }
        }
    }
    out
}

impl RatioFactors {
    fn small(&self, binom: &Binomials) -> Option<(u128, u128)> {
        let side = |bs: &[(usize, usize)], ps: &[(u64, u32)]| -> Option<u128> {
            let mut acc = 1u128;
            for &(n, k) in bs {
                acc = acc.checked_mul(binom.choose_small(n, k)?)?;
            }
            for &(b, e) in ps {
                acc = acc.checked_mul((b as u128).checked_pow(e)?)?;
            }
            Some(acc)
        };
        Some((
            side(&self.num_binom, &self.num_pow)?,
            side(&self.den_binom, &self.den_pow)?,
        ))
    }

    fn big(&self, binom: &Binomials) -> (BigUint, BigUint) {
        let side = |bs: &[(usize, usize)], ps: &[(u64, u32)]| -> BigUint {
            let mut acc = BigUint::one();
            for &(n, k) in bs {
                acc *= binom.choose(n, k);
            }
            for &(b, e) in ps {
                acc *= BigUint::from(b).pow(e);
            }
            acc
        };
        (
            side(&self.num_binom, &self.num_pow),
            side(&self.den_binom, &self.den_pow),
        )
    }
}

fn changed_levels(old: &Dense, new: &Dense) -> Vec<usize> {
    (0..old.flats.len().max(new.flats.len()))
        .filter(|&i| old.flat(i) != new.flat(i) || old.peak(i) != new.peak(i))
        .collect()
}

/// `P(to) / P(from)` as an exact reduced fraction, computed from the factors
/// of `m` and `perm` that differ between the two sequences.
pub fn acceptance_ratio(
    from: &BuildingSequence,
    to: &BuildingSequence,
    binom: &Binomials,
) -> Ratio<BigUint> {
    let n = from.width().max(to.width());
    let old = Dense::new(from, n);
    let new = Dense::new(to, n);
    let factors = ratio_factors(&old, &new, &changed_levels(&old, &new));
    let (num, den) = factors.big(binom);
    Ratio::new(num, den)
}

/// The greedy start state: one peak at every height up to `floor(sqrt(A))`,
/// then flats placed as high as possible while the leftover area can still
/// be covered by the remaining flats.
pub fn initial_state(n: usize, area: usize) -> Result<BuildingSequence, Infeasible> {
    if area > n * n / 4 {
        return Err(Infeasible);
    }
    let top = area.isqrt();
    if 2 * top > n {
        return Err(Infeasible);
    }
    let mut flats = vec![0u32; top + 1];
    let peaks = vec![1u32; top];
    let mut area_left = area - top * top;
    let mut slots = n - 2 * top;
    while slots > 0 {
        let floor = area_left.saturating_sub(top * (slots - 1));
        let height = floor.max(top.min(area_left));
        if height > top {
            return Err(Infeasible);
        }
        flats[height] += 1;
        area_left -= height;
        slots -= 1;
    }
    if area_left != 0 {
        return Err(Infeasible);
    }
    Ok(BuildingSequence::from_parts(&flats, &peaks).expect("one peak per height"))
}

/// One Metropolis chain with its own random source.
#[derive(Clone, Debug)]
pub struct ChainState<R> {
    n: usize,
    universe: usize,
    state: Dense,
    rng: R,
    steps: u64,
    accepted: u64,
}

impl<R: Rng> ChainState<R> {
    pub fn new(start: &BuildingSequence, rng: R) -> Self {
        let n = start.width();
        ChainState {
            n,
            universe: proposal_count(n),
            state: Dense::new(start, n),
            rng,
            steps: 0,
            accepted: 0,
        }
    }

    pub fn sequence(&self) -> BuildingSequence {
        self.state.to_sequence()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Number of proposals that changed the state.
    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn rng(&self) -> &R {
        &self.rng
    }

    /// Advances the chain by one step. `binom` must cover width `n`.
    pub fn step(&mut self, binom: &Binomials) {
        self.steps += 1;
        // one draw decides both the lazy hold and the proposal
        let idx = self.rng.random_range(0..2 * self.universe);
        if idx >= self.universe {
            return;
        }
        let mv = decode_proposal(idx, self.n / 2 + 1);
        if self.state.apply(&mv).is_err() {
            return;
        }
        let mut old = self.state.clone();
        old.undo(&mv);
        let levels = changed_levels(&old, &self.state);
        if levels.is_empty() {
            return;
        }
        let factors = ratio_factors(&old, &self.state, &levels);
        let accept = match factors.small(binom) {
            Some((num, den)) => bernoulli_ratio_u128(num, den, &mut self.rng),
            None => {
                let (num, den) = factors.big(binom);
                bernoulli_ratio(&num, &den, &mut self.rng)
            }
        };
        if accept {
            self.accepted += 1;
        } else {
            self.state = old;
        }
    }

    pub fn run(&mut self, steps: u64, binom: &Binomials) {
        for _ in 0..steps {
            self.step(binom);
        }
    }
}

/// Exact transition probabilities out of `a`, including the holding mass.
pub fn transition_row(
    a: &BuildingSequence,
    binom: &Binomials,
) -> BTreeMap<BuildingSequence, Ratio<BigUint>> {
    let n = a.width();
    let propose = Ratio::new(BigUint::one(), BigUint::from(2 * proposal_count(n) as u64));
    let one = Ratio::from_integer(BigUint::one());
    let mut row: BTreeMap<BuildingSequence, Ratio<BigUint>> = BTreeMap::new();
    let mut moving = Ratio::from_integer(BigUint::zero());
    for mv in proposal_universe(n) {
        let Ok(next) = apply_move(a, &mv) else { continue };
        if &next == a {
            continue;
        }
        let ratio = acceptance_ratio(a, &next, binom);
        let accept = if ratio > one { one.clone() } else { ratio };
        let p = &propose * accept;
        moving += &p;
        *row.entry(next).or_insert_with(|| Ratio::from_integer(BigUint::zero())) += p;
    }
    row.insert(a.clone(), one - moving);
    row
}

/// Sequences reachable from `a` by one feasible move, excluding `a`.
pub fn neighbors(a: &BuildingSequence) -> BTreeSet<BuildingSequence> {
    proposal_universe(a.width())
        .filter_map(|mv| apply_move(a, &mv).ok())
        .filter(|next| next != a)
        .collect()
}

/// Breadth-first closure of `start` under feasible moves.
pub fn reachable_from(start: &BuildingSequence) -> BTreeSet<BuildingSequence> {
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(a) = queue.pop_front() {
        for next in neighbors(&a) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Visit counts of chain states at one time step.
pub type Histogram = BTreeMap<BuildingSequence, u64>;

/// Total variation distance between the empirical distribution `counts` and
/// the stationary law `P(a) / total_weight`.
///
/// Only visited sequences are needed: the unvisited states contribute their
/// stationary mass, `1 - sum_{visited} P(a) / total_weight`.
pub fn tv_distance<'a>(
    counts: impl IntoIterator<Item = (&'a BuildingSequence, u64)>,
    total_weight: &BigUint,
    binom: &Binomials,
) -> Ratio<BigUint> {
    let counts: Vec<(&BuildingSequence, u64)> = counts.into_iter().filter(|(_, c)| *c > 0).collect();
    let runs: u64 = counts.iter().map(|(_, c)| c).sum();
    assert!(runs > 0, "empty histogram");
    assert!(!total_weight.is_zero(), "empty stationary class");
    let runs_big = BigUint::from(runs);
    let d = BigInt::from(total_weight.clone());
    let mut visited_weight = BigUint::zero();
    let mut deviation = BigUint::zero();
    for (a, c) in counts {
        let weight = a.total_weight(binom);
        let diff = BigInt::from(c) * &d - BigInt::from(&weight * &runs_big);
        deviation += diff.magnitude();
        visited_weight += weight;
    }
    assert!(&visited_weight <= total_weight, "visited mass exceeds the class total");
    let unvisited = (total_weight - visited_weight) * &runs_big;
    Ratio::new(unvisited + deviation, BigUint::from(2u32) * runs_big * total_weight)
}

/// Nearest `f64` to a non-negative big rational.
pub fn ratio_to_f64(r: &Ratio<BigUint>) -> f64 {
    let (num, den) = (r.numer(), r.denom());
    let shift = den.bits().saturating_sub(120);
    let num = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let den = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(s: &str) -> BuildingSequence {
        s.parse().unwrap()
    }

    #[test]
    fn peak_to_flat_example() {
        let a = seq("1;1,1;2,2");
        let mv = LocalMove::forward(Operation::PeakToFlat, 2, 0);
        let b = apply_move(&a, &mv).unwrap();
        assert_eq!(b.to_string(), "0;1,4;1,2");
        assert_eq!((b.width(), b.area()), (10, 12));
        assert_eq!(apply_move(&b, &mv.reversed()).unwrap(), a);
    }

    #[test]
    fn infeasible_moves() {
        let flat = BuildingSequence::flat(6);
        assert_eq!(
            apply_move(&flat, &LocalMove::forward(Operation::FlatToValley, 1, 0)),
            Err(Infeasible)
        );
        // PF at height 0 has no peak to remove
        assert_eq!(
            apply_move(&flat, &LocalMove::forward(Operation::PeakToFlat, 0, 0)),
            Err(Infeasible)
        );
        // leaving a flat above the highest peak
        let a = seq("0;1,1");
        assert_eq!(
            apply_move(&a, &LocalMove::forward(Operation::FlatToFlat, 1, 0)),
            Err(Infeasible)
        );
    }

    #[test]
    fn moves_conserve_width_and_area() {
        let a = seq("1;1,1;2,2");
        let mut feasible = 0;
        for mv in proposal_universe(10) {
            if let Ok(b) = apply_move(&a, &mv) {
                feasible += 1;
                assert_eq!((b.width(), b.area()), (10, 12), "{mv:?}");
                assert_eq!(apply_move(&b, &mv.reversed()).unwrap(), a);
            }
        }
        assert!(feasible > 0);
    }

    #[test]
    fn ratios() {
        let binom = Binomials::for_width(10);
        let a = seq("1;1,1;2,2");
        assert_eq!(acceptance_ratio(&a, &a, &binom), Ratio::from_integer(BigUint::one()));
        let b = apply_move(&a, &LocalMove::forward(Operation::PeakToFlat, 2, 0)).unwrap();
        let direct = Ratio::new(b.total_weight(&binom), a.total_weight(&binom));
        assert_eq!(acceptance_ratio(&a, &b, &binom), direct);
        assert_eq!(
            acceptance_ratio(&a, &b, &binom) * acceptance_ratio(&b, &a, &binom),
            Ratio::from_integer(BigUint::one())
        );
    }

    #[test]
    fn machine_word_factors_match_big_factors() {
        let n = 40;
        let binom = Binomials::for_width(n);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = Dense::new(&initial_state(n, 150).unwrap(), n);
        let (mut checked, mut overflowed) = (0, 0);
        for _ in 0..200_000 {
            let mv = decode_proposal(rng.random_range(0..proposal_count(n)), n / 2 + 1);
            let old = state.clone();
            if state.apply(&mv).is_err() {
                continue;
            }
            let factors = ratio_factors(&old, &state, &changed_levels(&old, &state));
            let (num, den) = factors.big(&binom);
            match factors.small(&binom) {
                Some((a, b)) => {
                    assert_eq!((BigUint::from(a), BigUint::from(b)), (num, den));
                    checked += 1;
                }
                None => overflowed += 1,
            }
        }
        assert!(checked > 5000, "{checked} checked, {overflowed} overflowed");
    }

    #[test]
    fn initial_states() {
        assert_eq!(initial_state(2, 1).unwrap(), seq("0;1,0"));
        assert_eq!(initial_state(4, 0).unwrap(), BuildingSequence::flat(4));
        let a = initial_state(8, 9).unwrap();
        assert_eq!(a, seq("2;1,0;1,0;1,0"));
        assert_eq!((a.width(), a.area()), (8, 9));
        assert_eq!(initial_state(4, 5), Err(Infeasible));
        for n in 0..=16 {
            for area in 0..=n * n / 4 {
                let a = initial_state(n, area).unwrap();
                assert_eq!((a.width(), a.area()), (n, area));
            }
        }
    }

    #[test]
    fn single_state_chain_holds() {
        let binom = Binomials::for_width(4);
        let start = initial_state(4, 4).unwrap();
        let mut chain = ChainState::new(&start, ChaCha8Rng::seed_from_u64(1));
        chain.run(500, &binom);
        assert_eq!(chain.sequence(), start);
        assert_eq!(chain.accepted(), 0);
        assert_eq!(chain.steps(), 500);
    }

    #[test]
    fn chains_are_reproducible() {
        let binom = Binomials::for_width(10);
        let start = initial_state(10, 12).unwrap();
        let trajectory = |seed| {
            let mut chain = ChainState::new(&start, ChaCha8Rng::seed_from_u64(seed));
            (0..300)
                .map(|_| {
                    chain.step(&binom);
                    chain.sequence()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(trajectory(9), trajectory(9));
        assert_ne!(trajectory(9), trajectory(10));
    }

    #[test]
    fn transition_rows_are_stochastic() {
        let binom = Binomials::for_width(6);
        for a in crate::blocks::enumerate_sequences(6, 4, 1000).unwrap() {
            let row = transition_row(&a, &binom);
            let total: Ratio<BigUint> = row.values().cloned().sum();
            assert_eq!(total, Ratio::from_integer(BigUint::one()));
        }
    }

    #[test]
    fn tv_distance_examples() {
        let binom = Binomials::for_width(4);
        // S(4,2) = {1;1,1 and 0;2,0}
        let class = crate::blocks::enumerate_sequences(4, 2, 100).unwrap();
        let weights: Vec<BigUint> = class.iter().map(|a| a.total_weight(&binom)).collect();
        let total: BigUint = weights.iter().sum();
        // exact stationary counts give distance 0
        let exact: Histogram = class
            .iter()
            .cloned()
            .zip(weights.iter().map(|w| w.to_u64().unwrap()))
            .collect();
        assert!(tv_distance(exact.iter().map(|(a, c)| (a, *c)), &total, &binom).is_zero());
        // all mass on one state
        let one: Histogram = [(class[0].clone(), 10)].into_iter().collect();
        let tv = tv_distance(one.iter().map(|(a, c)| (a, *c)), &total, &binom);
        assert_eq!(tv, Ratio::new(&total - &weights[0], total.clone()));
        assert!((ratio_to_f64(&tv) - (1.0 - weights[0].to_f64().unwrap() / total.to_f64().unwrap())).abs() < 1e-12);
    }
}
