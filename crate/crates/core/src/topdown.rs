//! Top-down dynamic program over heights, an independent route to `M(n, A)`
//! and `D(n, d)`.
//!
//! `count(n, A, h, p)` counts paths of width `n` and area `A` whose highest
//! level `h` holds exactly `p` peaks and no flats. One level is peeled at a
//! time: choose the `f` flats at `h - 1` and the `p'` peaks there, weighted by
//! the number of interleavings `C(p+f, f) * C(p+f+p'-1, p'-1)`.
//!
//! Two closures make the recursion total. At `h = 1` the level below is the
//! axis, so the inner sum collapses to the indicator `[n' = 0 and A' = 0]`.
//! Calling with `p = 0` at `h + 1` counts paths of height `h` with any number
//! of top flats, which is what the height marginal needs.

use alloc::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binomial::Binomials;
use crate::lastfall::Kind;

/// Memoized top-down counts for paths of width up to `max_width`.
#[derive(Clone, Debug)]
pub struct TopDownTable {
    kind: Kind,
    max_width: usize,
    binom: Binomials,
    memo: BTreeMap<(usize, usize, usize, usize), BigUint>,
}

impl TopDownTable {
    pub fn new(kind: Kind, max_width: usize) -> Self {
        TopDownTable {
            kind,
            max_width,
            binom: Binomials::for_width(max_width),
            memo: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Number of memoized states.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `M(n, A, h, p)` or `D(n, d, h, p)`.
    pub fn count(&mut self, n: usize, area: usize, h: usize, p: usize) -> BigUint {
        assert!(n <= self.max_width, "width {n} beyond table limit {}", self.max_width);
        if h == 0 {
            return if n == 0 && area == 0 && p == 0 {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if 2 * p > n || (2 * h - 1) * p > area {
            return BigUint::zero();
        }
        if let Some(v) = self.memo.get(&(n, area, h, p)) {
            return v.clone();
        }
        let weighted = self.kind == Kind::Weighted;
        let mut total = BigUint::zero();
        let after_peaks = n - 2 * p;
        let area_after_peaks = area - (2 * h - 1) * p;
        for f in 0..=after_peaks {
            let used = (h - 1) * f;
            if used > area_after_peaks {
                break;
            }
            let rest_width = after_peaks - f;
            let rest_area = area_after_peaks - used;
            let inner = if h == 1 {
                if rest_width == 0 && rest_area == 0 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            } else {
                let mut inner = BigUint::zero();
                for below in 1..=rest_width / 2 {
                    let sub = self.count(rest_width, rest_area, h - 1, below);
                    if !sub.is_zero() {
                        inner += self.binom.choose(p + f + below - 1, below - 1) * sub;
                    }
                }
                inner
            };
            if inner.is_zero() {
                continue;
            }
            let mut term = self.binom.choose(p + f, f) * inner;
            if weighted && f > 0 && h > 1 {
                term *= BigUint::from(2 * h as u64 - 1).pow(f as u32);
            }
            total += term;
        }
        if weighted && p > 0 && h > 1 {
            total *= BigUint::from(h as u64).pow(2 * p as u32);
        }
        self.memo.insert((n, area, h, p), total.clone());
        total
    }

    /// Paths of maximum height exactly `h`, any number of top flats.
    pub fn height_marginal(&mut self, n: usize, area: usize, h: usize) -> BigUint {
        self.count(n, area, h + 1, 0)
    }

    /// `M(n, A)` or `D(n, d)`.
    pub fn marginal(&mut self, n: usize, area: usize) -> BigUint {
        (0..=n / 2).map(|h| self.height_marginal(n, area, h)).sum()
    }
}
