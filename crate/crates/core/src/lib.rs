//! Exact counting and uniform sampling of permutations by total displacement.
//!
//! A permutation of `{1..n}` with total displacement `2d` corresponds to a
//! Motzkin path of width `n` and area `d`; each path stands for
//! `weight(path)` permutations. On top of that correspondence this crate
//! provides
//!
//! * [`lastfall::CountTable`]: the last-fall dynamic program for `M(n, A)`
//!   and `D(n, d)`, with a backtrace sampler,
//! * [`topdown::TopDownTable`]: an independent height-by-height program,
//! * [`blocks`]: building sequences with their path counts and weights,
//! * [`mcmc`]: a Metropolis chain over building sequences,
//! * [`perm`]: the path/permutation bridge, and
//! * [`oracle`]: brute-force enumerations for cross-checking.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod binomial;
pub mod blocks;
pub mod lastfall;
pub mod mcmc;
pub mod oracle;
pub mod path;
pub mod perm;
pub mod random;
pub mod topdown;

pub use binomial::Binomials;
pub use blocks::{enumerate_sequences, BuildingSequence, SequenceError};
pub use lastfall::{CountTable, Kind, Mode, TableError};
pub use mcmc::{ChainState, Infeasible, LocalMove};
pub use path::{Move, MotzkinPath, PathError};
pub use perm::{sample_perm_for_path, PermError, Permutation};
pub use topdown::TopDownTable;

pub use num_bigint::BigUint;
pub use num_rational::Ratio;
