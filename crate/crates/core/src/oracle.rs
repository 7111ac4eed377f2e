//! Brute-force enumerations used to cross-check the dynamic programs.
//!
//! Nothing here shares code with the counting backends: permutations are
//! walked with Heap's algorithm and paths by depth-first search.

use alloc::vec;
use alloc::vec::Vec;

use crate::path::{Move, MotzkinPath};

/// Largest permutation size [`brute_force_displacement_table`] accepts.
pub const MAX_BRUTE_FORCE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Histogram of half the total displacement over all of `S_n`: entry `d`
/// counts permutations with displacement `2d`.
pub fn brute_force_displacement_table(n: usize) -> Result<Vec<u64>, OracleError> {
    if n > MAX_BRUTE_FORCE_N {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_BRUTE_FORCE_N,
        });
    }
    let mut table = vec![0u64; n * n / 4 + 1];
    for_each_permutation(n, |images| {
        let displacement: usize = images
            .iter()
            .enumerate()
            .map(|(i, &x)| i.abs_diff(x))
            .sum();
        table[displacement / 2] += 1;
    });
    Ok(table)
}

/// Calls `visit` with every permutation of `0..n` (0-indexed images), in
/// Heap's order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut images: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    visit(&images);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                images.swap(0, i);
            } else {
                images.swap(counters[i], i);
            }
            visit(&images);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Every Motzkin path of the given width, in lexicographic order.
pub fn all_paths(width: usize) -> Vec<MotzkinPath> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(width);
    extend_paths(width, 0, &mut word, &mut out);
    out
}

/// Number of paths of the given width at each area, by depth-first search
/// without materializing the paths.
pub fn path_area_histogram(width: usize) -> Vec<u64> {
    let mut counts = vec![0u64; width * width / 4 + 1];
    count_paths(width, 0, 0, &mut counts);
    counts
}

fn count_paths(remaining: usize, height: usize, doubled_area: usize, counts: &mut [u64]) {
    if remaining == 0 {
        if height == 0 {
            counts[doubled_area / 2] += 1;
        }
        return;
    }
    if height + 1 < remaining {
        count_paths(remaining - 1, height + 1, doubled_area + 2 * height + 1, counts);
    }
    if height < remaining {
        count_paths(remaining - 1, height, doubled_area + 2 * height, counts);
    }
    if height >= 1 {
        count_paths(remaining - 1, height - 1, doubled_area + 2 * height - 1, counts);
    }
}

fn extend_paths(width: usize, height: usize, word: &mut Vec<Move>, out: &mut Vec<MotzkinPath>) {
    let remaining = width - word.len();
    if remaining == 0 {
        if height == 0 {
            out.push(MotzkinPath::from_moves_unchecked(word.clone()));
        }
        return;
    }
    if height < remaining - 1 {
        word.push(Move::Up);
        extend_paths(width, height + 1, word, out);
        word.pop();
    }
    if height < remaining {
        word.push(Move::Flat);
        extend_paths(width, height, word, out);
        word.pop();
    }
    if height >= 1 {
        word.push(Move::Down);
        extend_paths(width, height - 1, word, out);
        word.pop();
    }
}
