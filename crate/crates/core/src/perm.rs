//! Permutations and their correspondence with weighted Motzkin paths.
//!
//! Position `i` of a permutation becomes `U` when both `pi(i)` and
//! `pi^-1(i)` exceed `i`, `D` when both fall below it, and `H` otherwise.
//! The path has the same width and half the total displacement as area.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::path::{Move, MotzkinPath};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("images do not form a bijection on 1..={len}")]
    NotBijection { len: usize },
    #[error("could not parse {token:?} as a position")]
    BadToken { token: String },
}

/// A bijection on `{1, ..., n}` stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 1-indexed images, stored at 0-indexed slots
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its 1-indexed images `pi(1), ..., pi(n)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(PermError::NotBijection { len: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `pi(i)` for a 1-indexed position `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Total displacement `sum |i - pi(i)|`; always even.
    pub fn displacement(&self) -> u64 {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &x)| (i + 1).abs_diff(x) as u64)
            .sum()
    }

    pub fn to_path(&self) -> MotzkinPath {
        let inv = self.inverse();
        let moves = (1..=self.len())
            .map(|i| {
                let forward = self.image(i);
                let backward = inv.image(i);
                if forward > i && backward > i {
                    Move::Up
                } else if forward < i && backward < i {
                    Move::Down
                } else {
                    Move::Flat
                }
            })
            .collect();
        MotzkinPath::new(moves).expect("every permutation maps onto a Motzkin path")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| PermError::BadToken {
                    token: String::from(t),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }
}

/// Edge ids that currently cross the scan position, with O(1) removal.
struct ActiveEdges {
    edges: Vec<usize>,
    slot: Vec<usize>,
}

impl ActiveEdges {
    fn new(n: usize) -> Self {
        ActiveEdges {
            edges: Vec::new(),
            slot: vec![usize::MAX; n],
        }
    }

    fn insert(&mut self, edge: usize) {
        self.slot[edge] = self.edges.len();
        self.edges.push(edge);
    }

    fn remove(&mut self, edge: usize) {
        let k = self.slot[edge];
        self.edges.swap_remove(k);
        if let Some(&moved) = self.edges.get(k) {
            self.slot[moved] = k;
        }
        self.slot[edge] = usize::MAX;
    }
}

/// Draws one of the `weight(path)` permutations mapping onto `path`, each
/// with equal probability.
///
/// Descents first pick a pending ascent to their left (rightward edges, which
/// carry `pi` forward), then ascents pick a pending descent to their right
/// (leftward edges, which carry `pi` backward). A flat at height `h` is then
/// crossed by exactly `h` edges of each kind and either stays fixed or splits
/// one of those `2h` edges.
pub fn sample_perm_for_path<R: Rng + ?Sized>(path: &MotzkinPath, rng: &mut R) -> Permutation {
    let moves = path.moves();
    let n = moves.len();

    // rightward edges, keyed by their ascent: descent position of each edge
    let mut rightward_at_descent = vec![usize::MAX; n];
    let mut pending = Vec::new();
    for (pos, mv) in moves.iter().enumerate() {
        match mv {
            Move::Up => pending.push(pos),
            Move::Down => {
                let k = rng.random_range(0..pending.len());
                rightward_at_descent[pos] = pending.swap_remove(k);
            }
            Move::Flat => {}
        }
    }

    // leftward edges, keyed by their ascent
    let mut leftward_at_descent = vec![usize::MAX; n];
    pending.clear();
    for pos in (0..n).rev() {
        match moves[pos] {
            Move::Down => pending.push(pos),
            Move::Up => {
                let k = rng.random_range(0..pending.len());
                leftward_at_descent[pending.swap_remove(k)] = pos;
            }
            Move::Flat => {}
        }
    }

    // Sweep left to right. `tail[e]` is the latest point on edge e's chain;
    // splits at flats extend the chain without changing what crosses later
    // positions.
    let mut images = vec![usize::MAX; n];
    let mut right_tail = vec![0usize; n];
    let mut left_tail = vec![0usize; n];
    let mut rightward = ActiveEdges::new(n);
    let mut leftward = ActiveEdges::new(n);
    for (pos, mv) in moves.iter().enumerate() {
        match mv {
            Move::Up => {
                right_tail[pos] = pos;
                left_tail[pos] = pos;
                rightward.insert(pos);
                leftward.insert(pos);
            }
            Move::Down => {
                let e = rightward_at_descent[pos];
                images[right_tail[e]] = pos;
                rightward.remove(e);
                let e = leftward_at_descent[pos];
                images[pos] = left_tail[e];
                leftward.remove(e);
            }
            Move::Flat => {
                let h = rightward.edges.len();
                assert_eq!(
                    h,
                    leftward.edges.len(),
                    "unbalanced crossing edges at position {}",
                    pos + 1
                );
                let choice = rng.random_range(0..2 * h + 1);
                if choice == 0 {
                    images[pos] = pos;
                } else if choice <= h {
                    let e = rightward.edges[choice - 1];
                    images[right_tail[e]] = pos;
                    right_tail[e] = pos;
                } else {
                    let e = leftward.edges[choice - h - 1];
                    images[pos] = left_tail[e];
                    left_tail[e] = pos;
                }
            }
        }
    }
    debug_assert!(rightward.edges.is_empty() && leftward.edges.is_empty());
    Permutation::from_images_unchecked(images.into_iter().map(|x| x + 1).collect())
}
