use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Clone, Parser)]
#[command(name = "motzkin", version, about = "Count and sample permutations by total displacement")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output. Relative paths are
    /// placed under $MOTZKIN_OUTPUT_DIR when it is set.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Worker threads for sampling and chains; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Base seed. Task `i` uses a seed derived from this and `i`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl GlobalOpts {
    pub fn worker_threads(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.threads
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Rolling,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Path,
    Permutation,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Triangle of path counts M(n, A), or of permutation counts D(n, d) with
    /// --weighted, for every width up to N.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weighted: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Rolling)]
        mode: ModeArg,
    },
    /// Samples by backtracking through the last-fall table.
    SampleDp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        area: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Emit::Path)]
        emit: Emit,
        /// Draw paths in proportion to their weight. Always on for
        /// permutations.
        #[arg(long)]
        weighted: bool,
        /// Sampling needs the full table; rolling is rejected.
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
    },
    /// Uniform paths (or permutations) with a given building sequence.
    SampleSeq {
        /// Building sequence "f0;p1,f1;p2,f2;...".
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Emit::Path)]
        emit: Emit,
    },
    /// Lists S(n, A) with m, perm and P for each sequence.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        area: usize,
        /// Give up once more sequences than this exist.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Total variation distance of many chains against the stationary law.
    Mcmc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        area: usize,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 10_000)]
        runs: u64,
        #[arg(long, default_value_t = 10)]
        tv_every: u64,
    },
    /// Mixing times from the greedy start: every area with more than one
    /// sequence for widths 4 to 12, then the worst-case area for the larger
    /// widths.
    MixingSweep {
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        /// Override the per-row number of chains.
        #[arg(long)]
        runs: Option<u64>,
        /// Distance check interval; defaults to max(10, n^3 / 800).
        #[arg(long)]
        tv_every: Option<u64>,
        /// Horizon per row, as a multiple of n^3.
        #[arg(long, default_value_t = 100)]
        horizon_factor: u64,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Cross-checks every backend, oracle and sampler up to width K.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Also report how table build time and mixing time grow with n.
        #[arg(long)]
        scaling: bool,
        /// Chains per width for the mixing-time scaling fit.
        #[arg(long, default_value_t = 10_000)]
        scaling_runs: u64,
    },
}
