//! Building sequences: the per-height census `(f0, p1, f1, ..., ph, fh)` of
//! flats and peaks shared by a family of Motzkin paths.
//!
//! All paths built from a sequence `a` have the same weight `perm(a)`, and
//! there are `m(a)` of them, so `a` accounts for `P(a) = m(a) * perm(a)`
//! permutations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::binomial::Binomials;
use crate::path::{Move, MotzkinPath};
use crate::random::random_combination;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("a building sequence needs an odd number of entries, got {len}")]
    EvenLength { len: usize },
    #[error("peak count at height {height} is zero")]
    ZeroPeak { height: usize },
    #[error("malformed building sequence {text:?}")]
    Parse { text: String },
    #[error("more than {cap} building sequences")]
    CapExceeded { cap: usize },
}

/// A building sequence, stored exactly as the interleaved entry list
/// `(f0, p1, f1, ..., ph, fh)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BuildingSequence {
    entries: Vec<u32>,
}

impl BuildingSequence {
    /// The all-flat sequence `(f0)`.
    pub fn flat(f0: u32) -> Self {
        BuildingSequence { entries: vec![f0] }
    }

    pub fn from_entries(entries: Vec<u32>) -> Result<Self, SequenceError> {
        if entries.len().is_multiple_of(2) {
            return Err(SequenceError::EvenLength { len: entries.len() });
        }
        for (k, &p) in entries.iter().enumerate().skip(1).step_by(2) {
            if p == 0 {
                return Err(SequenceError::ZeroPeak { height: k.div_ceil(2) });
            }
        }
        Ok(BuildingSequence { entries })
    }

    /// From `flats = [f0, ..., fh]` and `peaks = [p1, ..., ph]`.
    pub fn from_parts(flats: &[u32], peaks: &[u32]) -> Result<Self, SequenceError> {
        if flats.len() != peaks.len() + 1 {
            return Err(SequenceError::EvenLength {
                len: flats.len() + peaks.len(),
            });
        }
        let mut entries = Vec::with_capacity(flats.len() + peaks.len());
        entries.push(flats[0]);
        for (p, f) in peaks.iter().zip(&flats[1..]) {
            entries.push(*p);
            entries.push(*f);
        }
        BuildingSequence::from_entries(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Maximum height `h`.
    pub fn height(&self) -> usize {
        self.entries.len() / 2
    }

    /// `f_i`, zero above the maximum height.
    pub fn flat_count(&self, i: usize) -> u32 {
        self.entries.get(2 * i).copied().unwrap_or(0)
    }

    /// `p_i`, zero at height 0 and above the maximum height.
    pub fn peak_count(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.entries.get(2 * i - 1).copied().unwrap_or(0)
        }
    }

    pub fn width(&self) -> usize {
        (0..=self.height())
            .map(|i| self.flat_count(i) as usize + 2 * self.peak_count(i) as usize)
            .sum()
    }

    pub fn area(&self) -> usize {
        (0..=self.height())
            .map(|i| i * self.flat_count(i) as usize + (2 * i).saturating_sub(1) * self.peak_count(i) as usize)
            .sum()
    }

    /// `perm(a)`: product of `(2i+1)^{f_i}` and `i^{2 p_i}`.
    pub fn perm_weight(&self) -> BigUint {
        let mut weight = BigUint::one();
        for i in 1..=self.height() {
            weight *= BigUint::from(2 * i as u64 + 1).pow(self.flat_count(i));
            weight *= BigUint::from(i as u64).pow(2 * self.peak_count(i));
        }
        weight
    }

    /// `m(a)`: number of distinct paths with this building sequence.
    ///
    /// Writing `p_{h+1} = 0`, it is the product over heights `1..=h` of the
    /// valley factor `C(p_{i+1} + f_i + p_i - 1, p_i - 1)` and the flat factor
    /// `C(p_i + f_{i-1}, f_{i-1})`. The top valley factor is the arrangement
    /// of the highest flats, and the all-flat sequence has `m = 1`.
    pub fn path_count(&self, binom: &Binomials) -> BigUint {
        let mut count = BigUint::one();
        for i in 1..=self.height() {
            let (n, k) = valley_factor(self, i);
            count *= binom.choose_ref(n, k).expect("binomial table too small");
            let (n, k) = flat_factor(self, i);
            count *= binom.choose_ref(n, k).expect("binomial table too small");
        }
        count
    }

    /// `P(a) = m(a) * perm(a)`.
    pub fn total_weight(&self, binom: &Binomials) -> BigUint {
        self.path_count(binom) * self.perm_weight()
    }

    /// Uniform draw among the `m(a)` paths with this building sequence.
    ///
    /// Built top down: at each height the flats are interleaved with the
    /// excursions coming from above, then `p_i - 1` down-up valleys split the
    /// result into `p_i` excursions that rise from the level below.
    pub fn sample_path<R: Rng + ?Sized>(&self, rng: &mut R) -> MotzkinPath {
        let h = self.height();
        let mut excursions: Vec<Vec<Move>> = Vec::new();
        for i in (1..=h).rev() {
            let items = interleave_flats(excursions, self.flat_count(i) as usize, rng);
            let valleys = self.peak_count(i) as usize - 1;
            let mask = random_combination(items.len() + valleys, valleys, rng);
            let mut items = items.into_iter();
            let mut current = vec![Move::Up];
            excursions = Vec::with_capacity(valleys + 1);
            for is_valley in mask {
                if is_valley {
                    current.push(Move::Down);
                    excursions.push(core::mem::replace(&mut current, vec![Move::Up]));
                } else {
                    current.extend(items.next().expect("slot count matches items"));
                }
            }
            current.push(Move::Down);
            excursions.push(current);
        }
        let moves = interleave_flats(excursions, self.flat_count(0) as usize, rng)
            .into_iter()
            .flatten()
            .collect();
        MotzkinPath::from_moves_unchecked(moves)
    }
}

fn valley_factor(a: &BuildingSequence, i: usize) -> (usize, usize) {
    let p = a.peak_count(i) as usize;
    let n = a.peak_count(i + 1) as usize + a.flat_count(i) as usize + p - 1;
    (n, p - 1)
}

fn flat_factor(a: &BuildingSequence, i: usize) -> (usize, usize) {
    let f = a.flat_count(i - 1) as usize;
    (a.peak_count(i) as usize + f, f)
}

/// Places `flats` single `H` items uniformly among `items`.
fn interleave_flats<R: Rng + ?Sized>(
    items: Vec<Vec<Move>>,
    flats: usize,
    rng: &mut R,
) -> Vec<Vec<Move>> {
    let mask = random_combination(items.len() + flats, flats, rng);
    let mut items = items.into_iter();
    mask.into_iter()
        .map(|is_flat| {
            if is_flat {
                vec![Move::Flat]
            } else {
                items.next().expect("slot count matches items")
            }
        })
        .collect()
}

impl fmt::Display for BuildingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries[0])?;
        for pair in self.entries[1..].chunks(2) {
            write!(f, ";{},{}", pair[0], pair[1])?;
        }
        Ok(())
    }
}

impl FromStr for BuildingSequence {
    type Err = SequenceError;

    /// Parses `"f0;p1,f1;p2,f2;..."`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SequenceError::Parse { text: String::from(s) };
        let mut groups = s.trim().split(';');
        let mut entries = vec![groups
            .next()
            .and_then(|g| g.trim().parse().ok())
            .ok_or_else(bad)?];
        for group in groups {
            let (p, f) = group.split_once(',').ok_or_else(bad)?;
            entries.push(p.trim().parse().map_err(|_| bad())?);
            entries.push(f.trim().parse().map_err(|_| bad())?);
        }
        BuildingSequence::from_entries(entries)
    }
}

/// Every building sequence of width `n` and area `area`, ordered by height
/// and then lexicographically by entries. Fails once more than `cap`
/// sequences have been produced.
pub fn enumerate_sequences(
    n: usize,
    area: usize,
    cap: usize,
) -> Result<Vec<BuildingSequence>, SequenceError> {
    let mut out = Vec::new();
    for h in 0..=n / 2 {
        let mut entries = Vec::with_capacity(2 * h + 1);
        extend_sequences(h, n, area, &mut entries, &mut out, cap)?;
    }
    Ok(out)
}

fn extend_sequences(
    h: usize,
    width_left: usize,
    area_left: usize,
    entries: &mut Vec<u32>,
    out: &mut Vec<BuildingSequence>,
    cap: usize,
) -> Result<(), SequenceError> {
    let k = entries.len();
    if k == 2 * h + 1 {
        if width_left == 0 && area_left == 0 {
            if out.len() == cap {
                return Err(SequenceError::CapExceeded { cap });
            }
            out.push(BuildingSequence {
                entries: entries.clone(),
            });
        }
        return Ok(());
    }
    let level = k.div_ceil(2);
    let is_peak = k % 2 == 1;
    // one peak is still owed at every height above this entry
    let owed_width = 2 * (h - level);
    let owed_area: usize = (level + 1..=h).map(|j| 2 * j - 1).sum();
    let (unit_width, unit_area, start) = if is_peak {
        (2, 2 * level - 1, 1)
    } else {
        (1, level, 0)
    };
    let mut count = start;
    loop {
        let width = count * unit_width;
        let used_area = count * unit_area;
        if width + owed_width > width_left || used_area + owed_area > area_left {
            break;
        }
        let rest_width = width_left - width;
        let rest_area = area_left - used_area;
        // remaining entries sit at heights <= h and yield at most h area per unit width
        if rest_area <= h * rest_width {
            entries.push(count as u32);
            extend_sequences(h, rest_width, rest_area, entries, out, cap)?;
            entries.pop();
        }
        count += 1;
    }
    Ok(())
}
