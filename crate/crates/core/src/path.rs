//! Motzkin paths: words over `{U, H, D}` that start and end on the axis and
//! never dip below it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::blocks::BuildingSequence;

/// One step of a Motzkin path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Up,
    Flat,
    Down,
}

impl Move {
    pub fn symbol(self) -> char {
        match self {
            Move::Up => 'U',
            Move::Flat => 'H',
            Move::Down => 'D',
        }
    }

    pub fn from_symbol(c: char) -> Option<Move> {
        match c {
            'U' => Some(Move::Up),
            'H' => Some(Move::Flat),
            'D' => Some(Move::Down),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("path dips below the axis at move {position}")]
    NegativeHeight { position: usize },
    #[error("path ends at height {height} instead of on the axis")]
    NonzeroEnd { height: usize },
    #[error("unexpected symbol {symbol:?} at position {position}")]
    BadSymbol { symbol: char, position: usize },
}

/// A validated Motzkin path.
///
/// Paths order lexicographically by their move words, with `U < H < D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinPath {
    moves: Vec<Move>,
}

/// Geometric statistics of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStats {
    pub width: usize,
    pub area: usize,
    /// Height of every move: after the move for `U`, before it for `D`, the
    /// level for `H`.
    pub heights: Vec<usize>,
}

impl MotzkinPath {
    pub fn new(moves: Vec<Move>) -> Result<Self, PathError> {
        let mut height = 0usize;
        for (position, mv) in moves.iter().enumerate() {
            match mv {
                Move::Up => height += 1,
                Move::Flat => {}
                Move::Down => {
                    height = height
                        .checked_sub(1)
                        .ok_or(PathError::NegativeHeight { position })?;
                }
            }
        }
        if height != 0 {
            return Err(PathError::NonzeroEnd { height });
        }
        Ok(MotzkinPath { moves })
    }

    /// Wraps a move word the caller has already shown to be a Motzkin path.
    pub(crate) fn from_moves_unchecked(moves: Vec<Move>) -> Self {
        debug_assert!(MotzkinPath::new(moves.clone()).is_ok());
        MotzkinPath { moves }
    }

    /// The empty path of width 0.
    pub fn empty() -> Self {
        MotzkinPath { moves: Vec::new() }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn width(&self) -> usize {
        self.moves.len()
    }

    pub fn heights(&self) -> Vec<usize> {
        let mut level = 0usize;
        self.moves
            .iter()
            .map(|mv| match mv {
                Move::Up => {
                    level += 1;
                    level
                }
                Move::Flat => level,
                Move::Down => {
                    level -= 1;
                    level + 1
                }
            })
            .collect()
    }

    /// Area between the path and the axis.
    ///
    /// Slopes contribute `h - 1/2` and flats `h`; the sum is accumulated in
    /// half units so it stays integral.
    pub fn area(&self) -> usize {
        let doubled: usize = self
            .moves
            .iter()
            .zip(self.heights())
            .map(|(mv, h)| match mv {
                Move::Flat => 2 * h,
                Move::Up | Move::Down => 2 * h - 1,
            })
            .sum();
        debug_assert!(doubled.is_multiple_of(2));
        doubled / 2
    }

    pub fn max_height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    pub fn stats(&self) -> PathStats {
        PathStats {
            width: self.width(),
            area: self.area(),
            heights: self.heights(),
        }
    }

    /// Number of permutations mapping onto this path: the product of `h` over
    /// slopes and `2h + 1` over flats.
    pub fn weight(&self) -> BigUint {
        let mut weight = BigUint::one();
        for (mv, h) in self.moves.iter().zip(self.heights()) {
            let factor = match mv {
                Move::Flat => 2 * h as u64 + 1,
                Move::Up | Move::Down => h as u64,
            };
            if factor != 1 {
                weight *= factor;
            }
        }
        weight
    }

    /// Per-height census of flats and peaks.
    ///
    /// Every `D` at height `i` closes exactly one `U` at height `i`, so the
    /// peak count at a height is the number of descents from it.
    pub fn building_sequence(&self) -> BuildingSequence {
        let max_height = self.max_height();
        let mut flats = alloc::vec![0u32; max_height + 1];
        let mut peaks = alloc::vec![0u32; max_height + 1];
        for (mv, h) in self.moves.iter().zip(self.heights()) {
            match mv {
                Move::Flat => flats[h] += 1,
                Move::Down => peaks[h] += 1,
                Move::Up => {}
            }
        }
        BuildingSequence::from_parts(&flats, &peaks[1..])
            .expect("a Motzkin path has a peak at every height up to its maximum")
    }
}

impl FromStr for MotzkinPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let moves = s
            .chars()
            .enumerate()
            .map(|(position, symbol)| {
                Move::from_symbol(symbol).ok_or(PathError::BadSymbol { symbol, position })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MotzkinPath::new(moves)
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: String = self.moves.iter().map(|m| m.symbol()).collect();
        f.write_str(&word)
    }
}
