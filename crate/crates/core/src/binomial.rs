//! Pascal triangle of exact binomial coefficients.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Binomial coefficients `C(n, k)` for `n <= max_row`.
///
/// Each entry is also kept as a `u128` where it fits, which lets the chain's
/// acceptance test stay in machine arithmetic for moderate widths.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<BigUint>>,
    small: Vec<Vec<Option<u128>>>,
}

impl Binomials {
    pub fn new(max_row: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_row + 1);
        for n in 0..=max_row {
            let row = (0..=n)
                .map(|k| {
                    if k == 0 || k == n {
                        BigUint::one()
                    } else {
                        &rows[n - 1][k - 1] + &rows[n - 1][k]
                    }
                })
                .collect();
            rows.push(row);
        }
        let small = rows
            .iter()
            .map(|row| row.iter().map(|c| c.to_u128()).collect())
            .collect();
        Binomials { rows, small }
    }

    /// Triangle large enough for every coefficient that shows up for paths of
    /// width `width`.
    pub fn for_width(width: usize) -> Self {
        Binomials::new(2 * width + 2)
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero when `k > n`.
    ///
    /// Panics if `n` exceeds the precomputed rows.
    pub fn choose(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.rows[n][k].clone()
    }

    pub fn choose_ref(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    /// `C(n, k)` as a `u128` if it fits; `Some(0)` when `k > n`.
    pub fn choose_small(&self, n: usize, k: usize) -> Option<u128> {
        if k > n {
            return Some(0);
        }
        self.small[n][k]
    }
}
