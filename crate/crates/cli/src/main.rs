//! `ktuple` — exact prime k-tuple counting from the command line.
//!
//! Subcommands: `count`, `chebyshev`, `average`, `series`, `verify`,
//! `bench`. Tabular output shares one CSV schema (or JSON lines with the
//! same field names). Exit codes: 0 success, 1 verification mismatch,
//! 2 usage or configuration errors.

mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ktuple_core::{
    asymptotics, chebyshev, oracle, summatory, ChebyshevResult, OffsetSet, ScanConfig,
};
use output::{emit, CountField, Format, Row, WeightField};

const SEGMENT_ENV: &str = "KTUPLE_SEGMENT_SIZE";

#[derive(Parser)]
#[command(name = "ktuple", version, about = "Exact prime k-tuple counts and Chebyshev sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact tuple counts at the checkpoints
    Count(TableArgs),
    /// Tuple Chebyshev functions theta and psi plus the exact prime-power
    /// weight sum
    Chebyshev(TableArgs),
    /// Averaged prime-double functions: mean theta, mean count, and
    /// theta / (ln(x) * count)
    Average(AverageArgs),
    /// Empirical constant count*ln(x)^k/x against the truncated
    /// Hardy-Littlewood singular series
    Series(SeriesArgs),
    /// Compare the summatory path against the brute-force oracle point by
    /// point; exits 1 on any mismatch
    Verify(VerifyArgs),
    /// Time the counting engine and report throughput
    Bench(BenchArgs),
}

#[derive(Args)]
struct ExecOpts {
    /// Worker threads (default: hardware count)
    #[arg(long)]
    threads: Option<usize>,
    /// Sieve segment length in entries (default 2^22; overrides the
    /// KTUPLE_SEGMENT_SIZE environment variable)
    #[arg(long)]
    segment_size: Option<u64>,
}

impl ExecOpts {
    fn scan_config(&self) -> Result<ScanConfig> {
        let threads = match self.threads {
            Some(0) => bail!("--threads must be at least 1"),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let segment_size = match self.segment_size {
            Some(s) => s,
            None => match std::env::var(SEGMENT_ENV) {
                Ok(text) => text
                    .parse()
                    .with_context(|| format!("{SEGMENT_ENV}={text:?} is not an integer"))?,
                Err(_) => ktuple_core::DEFAULT_SEGMENT_LEN,
            },
        };
        Ok(ScanConfig {
            segment_size,
            threads,
        })
    }
}

#[derive(Args)]
struct TableArgs {
    /// Offset pattern, e.g. 0,2,6
    #[arg(long)]
    offsets: String,
    /// Single cut-off x (shorthand for --checkpoints <x>)
    #[arg(long)]
    limit: Option<u64>,
    /// Ascending cut-offs, comma separated
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
    /// Cross-check the counts against the brute-force oracle
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    exec: ExecOpts,
}

#[derive(Args)]
struct AverageArgs {
    /// Single cut-off x (>= 8)
    #[arg(long)]
    limit: Option<u64>,
    /// Ascending cut-offs, comma separated (each >= 8)
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    exec: ExecOpts,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    table: TableArgs,
    /// Euler-product truncation for the singular series
    #[arg(long, default_value_t = 1_000_000)]
    prime_limit: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Offset pattern, e.g. 0,2,6
    #[arg(long)]
    offsets: String,
    /// Check every n in [2, limit]
    #[arg(long)]
    limit: u64,
    #[command(flatten)]
    exec: ExecOpts,
}

#[derive(Args)]
struct BenchArgs {
    /// Offset pattern to count
    #[arg(long, default_value = "0,2")]
    offsets: String,
    /// Counting cut-off
    #[arg(long, default_value_t = 10_000_000)]
    limit: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    exec: ExecOpts,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Chebyshev(args) => cmd_chebyshev(args),
        Command::Average(args) => cmd_average(args),
        Command::Series(args) => cmd_series(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn resolve_checkpoints(limit: Option<u64>, checkpoints: Option<Vec<u64>>) -> Result<Vec<u64>> {
    match (limit, checkpoints) {
        (None, None) => bail!("provide --limit or --checkpoints"),
        (lim, Some(cks)) => {
            if cks.is_empty() {
                bail!("--checkpoints must not be empty");
            }
            if let Some(l) = lim {
                if cks.iter().any(|&c| c > l) {
                    bail!("every checkpoint must be <= --limit {l}");
                }
            }
            Ok(cks)
        }
        (Some(l), None) => Ok(vec![l]),
    }
}

fn announce(pattern: &OffsetSet, cfg: &ScanConfig) {
    eprintln!(
        "# offsets={pattern} k={} admissible={} threads={} segment_size={}",
        pattern.k(),
        pattern.is_admissible(),
        cfg.threads,
        cfg.segment_size
    );
}

/// Re-counts through the brute-force oracle; reports any disagreement.
fn oracle_check(pattern: &OffsetSet, checkpoints: &[u64], cfg: &ScanConfig) -> Result<bool> {
    let x_max = *checkpoints.last().unwrap();
    let table = oracle::primes_up_to(x_max + pattern.max_offset())
        .context("oracle cross-check needs a prime table over the whole range")?;
    let series = summatory::count_tuples_series(checkpoints, pattern, cfg)?;
    let mut clean = true;
    for &(x, count) in &series.checkpoints {
        let direct = oracle::count_tuples_direct(x, pattern, &table)?;
        if direct != count {
            clean = false;
            eprintln!("oracle mismatch at x={x}: summatory {count}, oracle {direct}");
        }
    }
    if clean {
        eprintln!("# oracle cross-check: {} checkpoints agree", checkpoints.len());
    }
    Ok(clean)
}

fn cmd_count(args: TableArgs) -> Result<ExitCode> {
    let pattern = OffsetSet::parse(&args.offsets)?;
    let cfg = args.exec.scan_config()?;
    let checkpoints = resolve_checkpoints(args.limit, args.checkpoints)?;
    announce(&pattern, &cfg);
    let series = summatory::count_tuples_series(&checkpoints, &pattern, &cfg)?;
    let rows: Vec<Row> = series
        .checkpoints
        .iter()
        .map(|&(x, count)| {
            let mut row = Row::at(x);
            row.offsets = Some(pattern.to_string());
            row.admissible = Some(pattern.is_admissible());
            row.count = Some(CountField::Exact(count));
            row
        })
        .collect();
    emit(&mut std::io::stdout().lock(), args.format, &rows)?;
    if args.oracle && !oracle_check(&pattern, &checkpoints, &cfg)? {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn weight_field(r: &ChebyshevResult) -> WeightField {
    WeightField {
        exact: format!("{}/{}", r.pp_weight.numer(), r.pp_weight.denom()),
        decimal: r.pp_weight_f64(),
    }
}

fn cmd_chebyshev(args: TableArgs) -> Result<ExitCode> {
    let pattern = OffsetSet::parse(&args.offsets)?;
    let cfg = args.exec.scan_config()?;
    let checkpoints = resolve_checkpoints(args.limit, args.checkpoints)?;
    announce(&pattern, &cfg);
    let results = chebyshev::chebyshev_series(&checkpoints, &pattern, &cfg)?;
    let rows: Vec<Row> = results
        .iter()
        .map(|r| {
            let mut row = Row::at(r.x);
            row.offsets = Some(pattern.to_string());
            row.admissible = Some(pattern.is_admissible());
            row.theta = Some(r.theta);
            row.psi = Some(r.psi);
            row.pp_weight = Some(weight_field(r));
            row
        })
        .collect();
    emit(&mut std::io::stdout().lock(), args.format, &rows)?;
    if args.oracle && !oracle_check(&pattern, &checkpoints, &cfg)? {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_average(args: AverageArgs) -> Result<ExitCode> {
    let cfg = args.exec.scan_config()?;
    let checkpoints = resolve_checkpoints(args.limit, args.checkpoints)?;
    eprintln!(
        "# averaged prime-double functions, i in [2, (x-2)/2], threads={}",
        cfg.threads
    );
    let results = chebyshev::averaged_doubles(&checkpoints, &cfg)?;
    let rows: Vec<Row> = results
        .iter()
        .map(|r| {
            let mut row = Row::at(r.x);
            row.count = Some(CountField::Mean(r.count_mean));
            row.theta = Some(r.theta_mean);
            if r.count_mean > 0.0 {
                row.ratio = Some(r.theta_mean / ((r.x as f64).ln() * r.count_mean));
            }
            row
        })
        .collect();
    emit(&mut std::io::stdout().lock(), args.format, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_series(args: SeriesArgs) -> Result<ExitCode> {
    let pattern = OffsetSet::parse(&args.table.offsets)?;
    let cfg = args.table.exec.scan_config()?;
    let checkpoints = resolve_checkpoints(args.table.limit, args.table.checkpoints)?;
    announce(&pattern, &cfg);
    let report = asymptotics::asymptotic_report(&checkpoints, &pattern, args.prime_limit, &cfg)?;
    let rows: Vec<Row> = report
        .iter()
        .map(|r| {
            let mut row = Row::at(r.x);
            row.offsets = Some(pattern.to_string());
            row.admissible = Some(pattern.is_admissible());
            row.count = Some(CountField::Exact(r.count));
            row.empirical = Some(r.empirical);
            row.singular = Some(r.singular);
            row.ratio = r.ratio;
            row
        })
        .collect();
    emit(&mut std::io::stdout().lock(), args.table.format, &rows)?;
    if args.table.oracle && !oracle_check(&pattern, &checkpoints, &cfg)? {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let pattern = OffsetSet::parse(&args.offsets)?;
    let cfg = args.exec.scan_config()?;
    if args.limit < 2 {
        bail!("--limit must be at least 2");
    }
    announce(&pattern, &cfg);
    let hmax = pattern.max_offset();
    let table = oracle::primes_up_to(args.limit + hmax)
        .context("verification needs a prime table over the whole range")?;

    // Point-by-point: the characteristic value against plain primality.
    let mut mismatches: Vec<u64> = Vec::new();
    let mut lo = 2u64;
    while lo <= args.limit {
        let hi = (lo + cfg.segment_size - 1).min(args.limit);
        let seg = ktuple_core::sieve_segment(lo, hi + hmax)?;
        for n in lo..=hi {
            let summatory_one = summatory::tuple_indicator(n, &pattern, &seg)?;
            let oracle_one = pattern.offsets().iter().all(|&h| table.is_prime(n + h)) as u64;
            if summatory_one != oracle_one && mismatches.len() < 1000 {
                mismatches.push(n);
            }
        }
        lo = hi + 1;
    }

    // And through the scanning engine as a whole.
    let total = summatory::count_tuples(args.limit, &pattern, &cfg)?;
    let direct = oracle::count_tuples_direct(args.limit, &pattern, &table)?;

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "verified n in [2, {}] for offsets {}: {} mismatches",
        args.limit,
        pattern,
        mismatches.len()
    )?;
    for &n in mismatches.iter().take(10) {
        writeln!(out, "  first mismatches at n = {n}")?;
    }
    writeln!(
        out,
        "totals: summatory {total}, oracle {direct} -> {}",
        if total == direct { "equal" } else { "MISMATCH" }
    )?;
    if mismatches.is_empty() && total == direct {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let pattern = OffsetSet::parse(&args.offsets)?;
    let cfg = args.exec.scan_config()?;
    if args.limit < 2 {
        bail!("--limit must be at least 2");
    }
    announce(&pattern, &cfg);
    let started = Instant::now();
    let count = summatory::count_tuples(args.limit, &pattern, &cfg)?;
    let elapsed = started.elapsed().as_secs_f64();
    let segments = (args.limit - 2) / cfg.segment_size + 1;
    let entries = args.limit - 1;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Csv => {
            writeln!(out, "limit,count,segments,elapsed_s,segments_per_s,entries_per_s")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                args.limit,
                count,
                segments,
                output::fmt_real(elapsed),
                output::fmt_real(segments as f64 / elapsed),
                output::fmt_real(entries as f64 / elapsed),
            )?;
        }
        Format::Json => {
            let json = serde_json::json!({
                "limit": args.limit,
                "count": count,
                "segments": segments,
                "elapsed_s": elapsed,
                "segments_per_s": segments as f64 / elapsed,
                "entries_per_s": entries as f64 / elapsed,
            });
            writeln!(out, "{json}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
