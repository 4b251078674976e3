//! Command-line surface: compute primes through the LCM characteristic
//! function, verify them exactly against the sieve oracle, and benchmark the
//! formula variants.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 verification mismatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use lcm_primes::{
    bench, char_with_ratio, nth_prime, pi_streaming, run_verify, Error as CoreError, Predictor,
    TableFormat, Variant, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "lcm-primes", version, about = "n-th prime formulas built on lcm(1..j), with exact verification and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the n-th prime
    Prime {
        n: u64,
        /// Algorithm: naive, memo[ized], or rs (rs needs n > 1)
        #[arg(long, default_value = "memo", value_parser = parse_variant)]
        variant: Variant,
        /// Stop the summation at the first zero term (result is unchanged)
        #[arg(long)]
        early_exit: bool,
        /// Print `n p_n elapsed_seconds` instead of just the prime
        #[arg(long)]
        timing: bool,
    },
    /// Count primes up to k via the streaming characteristic sum
    Pi { k: u64 },
    /// Characteristic value at j, with the lcm ratio it comes from
    Char { j: u64 },
    /// Check formulas against the sieve oracle and report RS bound margins
    Verify {
        #[arg(long, default_value_t = 300)]
        max_n: u64,
        #[arg(long, value_delimiter = ',', default_value = "memo,rs", value_parser = parse_variant)]
        variants: Vec<Variant>,
        /// Cap for naive sweeps (the fresh path is cubic in the bound)
        #[arg(long, default_value_t = 50)]
        naive_cap: u64,
        /// Test hook: flip the characteristic value at this index
        #[arg(long, hide = true)]
        inject_char_fault: Option<u64>,
    },
    /// Time the variants over a grid of n and emit a table
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50,100,200")]
        ns: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "naive,memo,rs", value_parser = parse_variant)]
        variants: Vec<Variant>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        /// Output format: md or csv
        #[arg(long, default_value = "md", value_parser = parse_format)]
        format: TableFormat,
        /// Append per-variant power-law fit lines (needs >= 4 distinct n)
        #[arg(long)]
        fit: bool,
        /// Write the table to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip naive entries above this n (override to raise)
        #[arg(long, default_value_t = 50)]
        naive_cap: u64,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<TableFormat, String> {
    match s.to_ascii_lowercase().as_str() {
        "md" | "markdown" => Ok(TableFormat::Markdown),
        "csv" => Ok(TableFormat::Csv),
        other => Err(format!("unknown format `{other}` (expected md or csv)")),
    }
}

enum AppError {
    Usage(String),
    Core(CoreError),
    Io(String),
    /// A formula value disagreed with the oracle.
    Mismatch(String),
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        AppError::Core(e)
    }
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) | AppError::Io(_) => 1,
            AppError::Core(CoreError::BenchMismatch { .. }) => 2,
            AppError::Core(_) => 1,
            AppError::Mismatch(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Usage(m) | AppError::Io(m) | AppError::Mismatch(m) => m.clone(),
            AppError::Core(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Prime {
            n,
            variant,
            early_exit,
            timing,
        } => {
            let r = nth_prime(n, variant, early_exit)?;
            if timing {
                println!("{} {} {:.6}", r.n, r.p_n, r.elapsed.as_secs_f64());
            } else {
                println!("{}", r.p_n);
            }
            Ok(())
        }
        Command::Pi { k } => {
            println!("{}", pi_streaming(k)?);
            Ok(())
        }
        Command::Char { j } => {
            let (c, ratio) = char_with_ratio(j)?;
            println!("{} (ratio={})", c.value(), ratio);
            Ok(())
        }
        Command::Verify {
            max_n,
            variants,
            naive_cap,
            inject_char_fault,
        } => cmd_verify(max_n, variants, naive_cap, inject_char_fault),
        Command::Bench {
            ns,
            variants,
            reps,
            format,
            fit,
            out,
            naive_cap,
        } => cmd_bench(ns, variants, reps, format, fit, out, naive_cap),
    }
}

fn cmd_verify(
    max_n: u64,
    variants: Vec<Variant>,
    naive_cap: u64,
    inject_char_fault: Option<u64>,
) -> Result<(), AppError> {
    let opts = VerifyOptions {
        max_n,
        variants,
        naive_cap,
        char_fault: inject_char_fault,
    };
    let report = run_verify(&opts)?;
    for s in &report.sections {
        match &s.failure {
            None => println!("{}: ok ({} checked)", s.name, s.checked),
            Some(msg) => println!("{}: FAIL ({msg})", s.name),
        }
    }
    if let Some((slack, n)) = report.rs_min_slack {
        println!("rs min slack k_hi - (p_n - 1): {slack} at n={n}");
    }
    if report.passed() {
        println!("verify: PASS (0 mismatches)");
        Ok(())
    } else {
        println!("verify: FAIL");
        Err(AppError::Mismatch(
            report.first_failure().unwrap_or("mismatch").to_string(),
        ))
    }
}

fn cmd_bench(
    ns: Vec<u64>,
    variants: Vec<Variant>,
    reps: u32,
    format: TableFormat,
    fit: bool,
    out: Option<PathBuf>,
    naive_cap: u64,
) -> Result<(), AppError> {
    if ns.is_empty() {
        return Err(AppError::Usage("--ns must not be empty".into()));
    }
    if variants.is_empty() {
        return Err(AppError::Usage("--variants must not be empty".into()));
    }
    if reps < 1 {
        return Err(AppError::Usage("--reps must be at least 1".into()));
    }

    // validate the whole grid before any computation
    let mut grids: Vec<(Variant, Vec<u64>)> = Vec::new();
    for &v in &variants {
        for &n in &ns {
            if n < v.min_n() {
                return Err(AppError::Usage(format!(
                    "variant {v} requires n >= {}, got n={n}",
                    v.min_n()
                )));
            }
        }
        let grid: Vec<u64> = match v {
            Variant::Naive => {
                let kept: Vec<u64> = ns.iter().copied().filter(|&n| n <= naive_cap).collect();
                let skipped: Vec<u64> = ns.iter().copied().filter(|&n| n > naive_cap).collect();
                if !skipped.is_empty() {
                    eprintln!(
                        "note: skipping naive at n={skipped:?} (above --naive-cap {naive_cap})"
                    );
                }
                kept
            }
            _ => ns.clone(),
        };
        if !grid.is_empty() {
            grids.push((v, grid));
        }
    }
    if grids.is_empty() {
        return Err(AppError::Usage(
            "benchmark grid is empty after applying --naive-cap".into(),
        ));
    }
    if fit {
        for (v, grid) in &grids {
            let mut distinct = grid.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() < 4 {
                return Err(AppError::Usage(format!(
                    "--fit needs at least 4 distinct n per variant; {v} has {}",
                    distinct.len()
                )));
            }
        }
    }

    let mut records = Vec::new();
    for (v, grid) in &grids {
        records.extend(bench::run_bench(&[*v], grid, reps)?);
    }

    let mut text = bench::emit_table(&records, format)?;
    if fit {
        for (v, _) in &grids {
            let subset: Vec<_> = records
                .iter()
                .filter(|r| r.variant == *v)
                .cloned()
                .collect();
            for predictor in [Predictor::N, Predictor::NLogN] {
                let f = bench::fit_complexity(&subset, predictor)?;
                text.push_str(&f.render(*v));
                text.push('\n');
            }
        }
    }

    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| AppError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}
