use std::io::{self, Write};
use std::thread;

use motzkin_core::random::derive_seed;
use motzkin_core::{
    enumerate_sequences, sample_perm_for_path, BigUint, Binomials, BuildingSequence, CountTable,
    Kind, Mode, MotzkinPath, SequenceError, TableError,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, Emit, GlobalOpts, ModeArg};
use crate::harness::{estimate_mixing_time, tv_curve, worst_area, ExperimentConfig, HarnessError};
use crate::output::{open_output, Cell, RecordWriter};
use crate::verify::{build_scaling, log_log_slope, mixing_scaling, run_checks};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("sample-dp needs the full table: rolling mode keeps only the last two layers")]
    ModeConflict,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} verification check(s) failed")]
    VerificationFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed { .. } => 2,
            _ => 1,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        &Command::Count { n, weighted, mode } => count(g, n, weighted, mode),
        &Command::SampleDp {
            n,
            area,
            count,
            emit,
            weighted,
            mode,
        } => sample_dp(g, n, area, count, emit, weighted, mode),
        Command::SampleSeq { sequence, count, emit } => sample_seq(g, sequence, *count, *emit),
        &Command::Enumerate { n, area, cap } => enumerate(g, n, area, cap),
        &Command::Mcmc {
            n,
            area,
            steps,
            runs,
            tv_every,
        } => mcmc(g, n, area, steps, runs, tv_every),
        &Command::MixingSweep {
            min_n,
            max_n,
            runs,
            tv_every,
            horizon_factor,
            epsilon,
        } => mixing_sweep(g, min_n, max_n, runs, tv_every, horizon_factor, epsilon),
        &Command::Verify {
            max_n,
            scaling,
            scaling_runs,
        } => verify(g, max_n, scaling, scaling_runs),
    }
}

fn writer(g: &GlobalOpts, header: &[&str]) -> Result<RecordWriter, CliError> {
    Ok(RecordWriter::new(open_output(g.output.as_deref())?, g.format, header)?)
}

fn kind_of(weighted: bool) -> Kind {
    if weighted {
        Kind::Weighted
    } else {
        Kind::Unweighted
    }
}

fn count(g: &GlobalOpts, n: usize, weighted: bool, mode: ModeArg) -> Result<(), CliError> {
    let mode = match mode {
        ModeArg::Rolling => Mode::Rolling,
        ModeArg::Full => Mode::Full,
    };
    log::info!("building width {n} table");
    let table = CountTable::build(n, kind_of(weighted), mode);
    let mut out = writer(g, &["n", "d", "count"])?;
    for width in 0..=n {
        for (d, c) in table.marginals(width)?.iter().enumerate() {
            out.write(&[width.into(), d.into(), c.into()])?;
        }
    }
    Ok(out.finish()?)
}

/// Runs `draw(i)` for `i in 0..count` on up to `threads` workers, keeping
/// the results in index order.
fn parallel_draws<T: Send>(count: u64, threads: usize, draw: impl Fn(u64) -> T + Sync) -> Vec<T> {
    let threads = threads.max(1) as u64;
    if threads == 1 || count < 2 {
        return (0..count).map(&draw).collect();
    }
    let chunk = count.div_ceil(threads);
    let draw = &draw;
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let range = (t * chunk).min(count)..((t + 1) * chunk).min(count);
                s.spawn(move || range.map(draw).collect::<Vec<T>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sampler thread")).collect()
    })
}

fn emit_paths(g: &GlobalOpts, emit: Emit, paths: Vec<(MotzkinPath, ChaCha8Rng)>) -> Result<(), CliError> {
    let header = match emit {
        Emit::Path => "path",
        Emit::Permutation => "permutation",
    };
    let lines: Vec<String> = paths
        .into_iter()
        .map(|(path, mut rng)| match emit {
            Emit::Path => path.to_string(),
            Emit::Permutation => sample_perm_for_path(&path, &mut rng).to_string(),
        })
        .collect();
    write_lines(g, header, &lines)
}

/// Sample output is one item per line; JSON carries the same items as
/// single-field records.
fn write_lines(g: &GlobalOpts, field: &str, lines: &[String]) -> Result<(), CliError> {
    match g.format {
        crate::output::Format::Csv => {
            let mut out = open_output(g.output.as_deref())?;
            for line in lines {
                writeln!(out, "{line}")?;
            }
            out.flush()?;
        }
        crate::output::Format::Json => {
            let mut out = writer(g, &[field])?;
            for line in lines {
                out.write(&[Cell::Text(line.clone())])?;
            }
            out.finish()?;
        }
    }
    Ok(())
}

fn sample_dp(
    g: &GlobalOpts,
    n: usize,
    area: usize,
    count: u64,
    emit: Emit,
    weighted: bool,
    mode: ModeArg,
) -> Result<(), CliError> {
    if mode == ModeArg::Rolling {
        return Err(CliError::ModeConflict);
    }
    let kind = kind_of(weighted || emit == Emit::Permutation);
    let table = CountTable::build(n, kind, Mode::Full);
    if n * n / 4 < area || table.marginal(n, area)? == BigUint::ZERO {
        return Err(TableError::EmptyClass { n, area }.into());
    }
    let draws = parallel_draws(count, g.worker_threads(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(g.seed, i));
        let path = table.sample_path(n, area, &mut rng).expect("class is nonempty");
        (path, rng)
    });
    emit_paths(g, emit, draws)
}

fn sample_seq(g: &GlobalOpts, sequence: &str, count: u64, emit: Emit) -> Result<(), CliError> {
    let seq: BuildingSequence = sequence.parse()?;
    let draws = parallel_draws(count, g.worker_threads(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(g.seed, i));
        (seq.sample_path(&mut rng), rng)
    });
    emit_paths(g, emit, draws)
}

fn enumerate(g: &GlobalOpts, n: usize, area: usize, cap: usize) -> Result<(), CliError> {
    let binom = Binomials::for_width(n);
    let seqs = enumerate_sequences(n, area, cap)?;
    let mut out = writer(g, &["sequence", "m", "perm", "P"])?;
    let mut sum = BigUint::ZERO;
    for s in &seqs {
        let (m, perm) = (s.path_count(&binom), s.perm_weight());
        let p = &m * &perm;
        out.write(&[Cell::Text(s.to_string()), (&m).into(), (&perm).into(), (&p).into()])?;
        sum += p;
    }
    let d = CountTable::build(n, Kind::Weighted, Mode::Rolling).marginal(n, area)?;
    out.write(&[Cell::Text("sum".into()), Cell::Empty, Cell::Empty, (&sum).into()])?;
    out.write(&[Cell::Text("D".into()), Cell::Empty, Cell::Empty, (&d).into()])?;
    Ok(out.finish()?)
}

fn mcmc(g: &GlobalOpts, n: usize, area: usize, steps: u64, runs: u64, tv_every: u64) -> Result<(), CliError> {
    let cfg = ExperimentConfig {
        n,
        area,
        steps,
        runs,
        seed: g.seed,
        tv_every,
    };
    let mut out = writer(g, &["t", "tv_distance", "visited_states"])?;
    let mut failure = None;
    tv_curve(&cfg, g.worker_threads(), |p| {
        match out.write(&[p.t.into(), p.tv.into(), p.visited.into()]) {
            Ok(()) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(out.finish()?)
}

/// Sweep rows: `(n, A, runs)`.
pub fn sweep_rows(min_n: usize, max_n: usize) -> Vec<(usize, usize, u64)> {
    let mut rows = Vec::new();
    for n in min_n.max(4)..=max_n.min(12) {
        for a in 0..=n * n / 4 {
            // a cap overflow means more than two sequences
            if enumerate_sequences(n, a, 2).map_or(true, |v| v.len() > 1) {
                rows.push((n, a, 10_000));
            }
        }
    }
    let large = [
        (14, 100_000),
        (16, 100_000),
        (18, 100_000),
        (20, 100_000),
        (25, 100_000),
        (30, 100_000),
        (35, 400_000),
        (40, 500_000),
    ];
    for (n, runs) in large {
        if (min_n..=max_n).contains(&n) {
            rows.push((n, worst_area(n), runs));
        }
    }
    rows
}

fn mixing_sweep(
    g: &GlobalOpts,
    min_n: usize,
    max_n: usize,
    runs: Option<u64>,
    tv_every: Option<u64>,
    horizon_factor: u64,
    epsilon: f64,
) -> Result<(), CliError> {
    if min_n > max_n {
        return Err(CliError::Usage(format!("min-n {min_n} exceeds max-n {max_n}")));
    }
    let mut out = writer(g, &["n", "A", "mixing_time"])?;
    for (n, area, default_runs) in sweep_rows(min_n, max_n) {
        let cube = (n as u64).pow(3);
        let cfg = ExperimentConfig {
            n,
            area,
            steps: horizon_factor * cube,
            runs: runs.unwrap_or(default_runs),
            seed: g.seed,
            tv_every: tv_every.unwrap_or((cube / 800).max(10)),
        };
        log::info!("mixing time for n = {n}, A = {area}, {} runs", cfg.runs);
        let cell = match estimate_mixing_time(&cfg, epsilon, g.worker_threads()) {
            Ok(t) => Cell::Int(t),
            Err(HarnessError::NotMixed { horizon, last_tv }) => {
                log::warn!("n = {n}, A = {area}: not mixed after {horizon} steps (tv {last_tv:.4})");
                Cell::Empty
            }
            Err(e) => return Err(e.into()),
        };
        out.write(&[n.into(), area.into(), cell])?;
    }
    Ok(out.finish()?)
}

fn verify(g: &GlobalOpts, max_n: usize, scaling: bool, scaling_runs: u64) -> Result<(), CliError> {
    let mut out = writer(g, &["check", "result", "detail"])?;
    let results = run_checks(max_n);
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.write(&[Cell::Text(r.name.into()), Cell::Text(status.into()), Cell::Text(r.detail.clone())])?;
    }
    if scaling {
        let builds = build_scaling(&[20, 40, 60, 80, 100]);
        let mixes = mixing_scaling(&[8, 10, 12, 14, 16], scaling_runs, g.seed, g.worker_threads());
        for rows in [builds, mixes] {
            let series = rows[0].series;
            let detail: Vec<String> = rows.iter().map(|r| format!("n={}:{:.4}", r.n, r.value)).collect();
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.value.is_finite() && r.value > 0.0)
                .map(|r| (r.n as f64, r.value))
                .collect();
            let slope = if pts.len() >= 2 {
                format!("slope {:.2}", log_log_slope(&pts))
            } else {
                "slope n/a".into()
            };
            out.write(&[Cell::Text(format!("scaling {series}")), Cell::Text(slope), Cell::Text(detail.join(" "))])?;
        }
    }
    out.finish()?;
    if failed > 0 {
        Err(CliError::VerificationFailed { failed })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_rows_cover_small_and_worst_case_widths() {
        let rows = sweep_rows(4, 40);
        assert!(rows.contains(&(8, 9, 10_000)));
        assert!(rows.contains(&(14, 36, 100_000)));
        assert!(rows.contains(&(40, 361, 500_000)));
        assert!(!rows.iter().any(|&(n, a, _)| n == 8 && (a == 0 || a == 16)));
        assert_eq!(sweep_rows(14, 14), [(14, 36, 100_000)]);
    }

    #[test]
    fn draws_do_not_depend_on_threads() {
        let f = |i: u64| derive_seed(5, i);
        assert_eq!(parallel_draws(101, 1, f), parallel_draws(101, 4, f));
    }
}
