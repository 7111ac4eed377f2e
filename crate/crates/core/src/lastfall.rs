//! Last-fall dynamic program.
//!
//! Every Motzkin path arises from the empty path by a unique sequence of
//! insertions into its last fall (the trailing run of `D` moves): a flat at
//! height `l` leaves a last fall of length `l`, a peak at height `l` one of
//! length `l`. Undoing the latest insertion gives
//!
//! ```text
//! M(n, A, l) = sum_{l' >= l}   M(n-1, A-l,      l')
//!            + sum_{l' >= l-1} M(n-2, A-(2l-1), l')
//! ```
//!
//! with `M(0, 0, 0) = 1`. The weighted count `D` multiplies the flat branch by
//! `2l + 1` and the peak branch by `l^2`, the weight a flat resp. a peak at
//! that height carries.
//!
//! Each layer stores only the prefix sums over `l`; point values and the
//! suffix sums the recurrence consumes are differences of two entries.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::path::{Move, MotzkinPath};
use crate::random::uniform_below;

static ZERO: BigUint = BigUint::ZERO;

/// Which count the table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Plain path counts `M(n, A)`.
    Unweighted,
    /// Weighted counts `D(n, d)`: permutations of total displacement `2d`.
    Weighted,
}

/// How many layers the table keeps once built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Only the two newest layers stay in memory; marginals of every layer are
    /// still recorded.
    Rolling,
    /// Every layer is kept, which sampling needs.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("width {n} is not available (built up to {built})")]
    OutOfRange { n: usize, built: usize },
    #[error("no paths of width {n} and area {area}")]
    EmptyClass { n: usize, area: usize },
    #[error("sampling needs a table built in full mode")]
    WrongMode,
}

/// Prefix sums `SM(n, A, l)` for one width `n`.
#[derive(Clone, Debug)]
struct Layer {
    max_area: usize,
    max_fall: usize,
    prefix: Vec<BigUint>,
}

impl Layer {
    fn base() -> Self {
        Layer {
            max_area: 0,
            max_fall: 0,
            prefix: alloc::vec![BigUint::from(1u32)],
        }
    }

    /// `SM(area, fall)`; out-of-range states read as zero, and falls past
    /// the maximum read as the full marginal.
    fn prefix(&self, area: usize, fall: usize) -> &BigUint {
        if area > self.max_area {
            return &ZERO;
        }
        &self.prefix[area * (self.max_fall + 1) + fall.min(self.max_fall)]
    }

    fn prefix_below(&self, area: usize, fall: usize) -> &BigUint {
        if fall == 0 {
            &ZERO
        } else {
            self.prefix(area, fall - 1)
        }
    }

    fn total(&self, area: usize) -> &BigUint {
        self.prefix(area, self.max_fall)
    }

    /// `sum_{l' >= from} value(area, l')`.
    fn suffix(&self, area: usize, from: usize) -> BigUint {
        if area > self.max_area || from > self.max_fall {
            return BigUint::zero();
        }
        self.total(area) - self.prefix_below(area, from)
    }

    fn value(&self, area: usize, fall: usize) -> BigUint {
        if area > self.max_area || fall > self.max_fall {
            return BigUint::zero();
        }
        self.prefix(area, fall) - self.prefix_below(area, fall)
    }
}

/// Counts of Motzkin paths (or permutations) by width, area and last fall.
#[derive(Clone, Debug)]
pub struct CountTable {
    kind: Kind,
    mode: Mode,
    width: usize,
    // layers[i] holds width first_layer + i
    first_layer: usize,
    layers: Vec<Layer>,
    marginals: Vec<Vec<BigUint>>,
}

impl CountTable {
    /// Fills the table for all widths up to `n`.
    pub fn build(n: usize, kind: Kind, mode: Mode) -> Self {
        let mut table = CountTable {
            kind,
            mode,
            width: 0,
            first_layer: 0,
            layers: alloc::vec![Layer::base()],
            marginals: alloc::vec![alloc::vec![BigUint::from(1u32)]],
        };
        for _ in 0..n {
            table.extend();
        }
        table
    }

    /// Adds the layer for the next width.
    pub fn extend(&mut self) {
        let k = self.width + 1;
        let weighted = self.kind == Kind::Weighted;
        let max_area = k * k / 4;
        let max_fall = k / 2;
        let mut prefix = Vec::with_capacity((max_area + 1) * (max_fall + 1));
        let mut marginals = Vec::with_capacity(max_area + 1);
        {
            let flat_source = self.layer(k - 1).expect("previous layer retained");
            let peak_source = if k >= 2 { self.layer(k - 2) } else { None };
            for area in 0..=max_area {
                let mut running = BigUint::zero();
                for fall in 0..=max_fall {
                    if area >= fall {
                        let mut s = flat_source.suffix(area - fall, fall);
                        if !s.is_zero() {
                            if weighted && fall > 0 {
                                s *= 2 * fall as u64 + 1;
                            }
                            running += s;
                        }
                    }
                    if let Some(source) = peak_source {
                        if fall >= 1 && area + 1 >= 2 * fall {
                            let mut s = source.suffix(area + 1 - 2 * fall, fall - 1);
                            if !s.is_zero() {
                                if weighted && fall > 1 {
                                    s *= (fall * fall) as u64;
                                }
                                running += s;
                            }
                        }
                    }
                    prefix.push(running.clone());
                }
                marginals.push(running);
            }
        }
        self.layers.push(Layer {
            max_area,
            max_fall,
            prefix,
        });
        self.marginals.push(marginals);
        self.width = k;
        if self.mode == Mode::Rolling && self.layers.len() > 2 {
            self.layers.remove(0);
            self.first_layer += 1;
        }
    }

    fn layer(&self, n: usize) -> Option<&Layer> {
        n.checked_sub(self.first_layer)
            .and_then(|i| self.layers.get(i))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Largest width the table has been built to.
    pub fn width(&self) -> usize {
        self.width
    }

    fn retained_layer(&self, n: usize) -> Result<&Layer, TableError> {
        if n > self.width {
            return Err(TableError::OutOfRange {
                n,
                built: self.width,
            });
        }
        self.layer(n).ok_or(TableError::WrongMode)
    }

    /// `M(n, A, l)` (or `D(n, d, l)`). In rolling mode only the two newest
    /// widths can be queried.
    pub fn value(&self, n: usize, area: usize, fall: usize) -> Result<BigUint, TableError> {
        Ok(self.retained_layer(n)?.value(area, fall))
    }

    /// Prefix sum `SM(n, A, l)`.
    pub fn prefix_sum(&self, n: usize, area: usize, fall: usize) -> Result<BigUint, TableError> {
        let layer = self.retained_layer(n)?;
        Ok(if fall > layer.max_fall {
            layer.total(area).clone()
        } else {
            layer.prefix(area, fall).clone()
        })
    }

    /// `M(n, A)` (or `D(n, d)`), summed over last-fall lengths.
    pub fn marginal(&self, n: usize, area: usize) -> Result<BigUint, TableError> {
        Ok(self.marginals(n)?.get(area).cloned().unwrap_or_default())
    }

    /// Marginals of width `n` for every area `0..=n^2/4`.
    pub fn marginals(&self, n: usize) -> Result<&[BigUint], TableError> {
        self.marginals
            .get(n)
            .map(Vec::as_slice)
            .ok_or(TableError::OutOfRange {
                n,
                built: self.width,
            })
    }

    /// Retraces the recurrence from `(n, area)` back to the empty path.
    ///
    /// Unweighted tables give a uniform path of width `n` and area `area`;
    /// weighted tables give each path with probability proportional to its
    /// weight. Moves are emitted right to left: each step outputs the part
    /// of the last fall not already written, then the inserted `H` or `U`.
    pub fn sample_path<R: Rng + ?Sized>(
        &self,
        n: usize,
        area: usize,
        rng: &mut R,
    ) -> Result<MotzkinPath, TableError> {
        if self.mode != Mode::Full {
            return Err(TableError::WrongMode);
        }
        let top = self.retained_layer(n)?;
        let total = top.total(area);
        if total.is_zero() {
            return Err(TableError::EmptyClass { n, area });
        }
        let weighted = self.kind == Kind::Weighted;

        let mut x = uniform_below(total, rng);
        let mut fall = (0..=top.max_fall)
            .find(|&l| top.prefix(area, l) > &x)
            .expect("draw is below the marginal");
        x -= top.prefix_below(area, fall);

        let mut reversed = Vec::with_capacity(n);
        let (mut width, mut area_left, mut written_fall) = (n, area, 0usize);
        while width > 0 {
            let flat_term = if area_left >= fall {
                let mut s = self.layers[width - 1].suffix(area_left - fall, fall);
                if weighted {
                    s *= 2 * fall as u64 + 1;
                }
                s
            } else {
                BigUint::zero()
            };
            reversed.extend(core::iter::repeat_n(Move::Down, fall - written_fall));
            let (pred_width, pred_area, min_fall) = if x < flat_term {
                if weighted {
                    x /= 2 * fall as u64 + 1;
                }
                reversed.push(Move::Flat);
                written_fall = fall;
                (width - 1, area_left - fall, fall)
            } else {
                x -= flat_term;
                if weighted {
                    x /= (fall * fall) as u64;
                }
                reversed.push(Move::Up);
                written_fall = fall - 1;
                (width - 2, area_left + 1 - 2 * fall, fall - 1)
            };
            let pred = &self.layers[pred_width];
            let target = x + pred.prefix_below(pred_area, min_fall);
            let next_fall = (min_fall..=pred.max_fall)
                .find(|&l| pred.prefix(pred_area, l) > &target)
                .expect("sampler only visits non-empty states");
            x = target - pred.prefix_below(pred_area, next_fall);
            width = pred_width;
            area_left = pred_area;
            fall = next_fall;
        }
        debug_assert!(x.is_zero() && area_left == 0 && fall == 0 && written_fall == 0);
        assert_eq!(reversed.len(), n);
        reversed.reverse();
        Ok(MotzkinPath::from_moves_unchecked(reversed))
    }
}
