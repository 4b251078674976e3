//! Timing harness for the n-th prime variants, a log-log power-law fitter,
//! and table emitters. Measurements run strictly sequentially on a monotonic
//! clock; every result is verified against the sieve before it is recorded.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nth_prime::{bounds_basic, nth_prime, Variant};
use crate::oracle;

/// One timed measurement. Field order matches the CSV column contract:
/// `variant,n,p_n,k_lo,k_hi,terms_evaluated,elapsed_seconds,repetitions`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub variant: Variant,
    pub n: u64,
    pub p_n: u64,
    pub k_lo: u64,
    pub k_hi: u64,
    pub terms_evaluated: u64,
    /// Median wall-clock seconds over the repetitions.
    pub elapsed_seconds: f64,
    pub repetitions: u32,
}

/// Predictor variable for the power-law fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predictor {
    N,
    NLogN,
}

impl Predictor {
    pub fn apply(self, n: u64) -> f64 {
        let x = n as f64;
        match self {
            Predictor::N => x,
            Predictor::NLogN => x * x.ln(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Predictor::N => "n",
            Predictor::NLogN => "n_ln_n",
        }
    }
}

/// Least-squares power law `t = a * x^b` fitted on log-log data.
#[derive(Debug, Clone)]
pub struct ComplexityFit {
    pub predictor: Predictor,
    pub exponent_b: f64,
    pub coefficient_a: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

impl ComplexityFit {
    /// One-line rendering used by the CLI `--fit` output.
    pub fn render(&self, variant: Variant) -> String {
        format!(
            "# fit variant={} predictor={} exponent_b={:.4} coefficient_a={:.6e} r_squared={:.6} points={}",
            variant,
            self.predictor.label(),
            self.exponent_b,
            self.coefficient_a,
            self.r_squared,
            self.points_used
        )
    }
}

/// Run each `(variant, n)` pair `repetitions` times, sequentially, recording
/// the median wall-clock time. Every computed prime is checked against the
/// sieve before the record is kept; a mismatch aborts the run.
pub fn run_bench(variants: &[Variant], ns: &[u64], repetitions: u32) -> Result<Vec<BenchRecord>> {
    if repetitions < 1 {
        return Err(Error::DomainTooSmall {
            op: "run_bench repetitions",
            min: 1,
            got: u64::from(repetitions),
        });
    }
    let max_n = ns.iter().copied().max().unwrap_or(0).max(2);
    let limit = bounds_basic(max_n)?.k_hi.max(5000);
    let table = oracle::sieve(limit)?;

    let mut records = Vec::with_capacity(variants.len() * ns.len());
    for &variant in variants {
        for &n in ns {
            let mut times = Vec::with_capacity(repetitions as usize);
            let mut first = None;
            for _ in 0..repetitions {
                let r = nth_prime(n, variant, false)?;
                times.push(r.elapsed);
                first.get_or_insert(r);
            }
            let r = first.expect("repetitions >= 1");
            let expected = table
                .nth_prime(n)
                .expect("sieve limit covers the basic bound");
            if r.p_n != expected {
                return Err(Error::BenchMismatch {
                    variant,
                    n,
                    got: r.p_n,
                    expected,
                });
            }
            records.push(BenchRecord {
                variant,
                n,
                p_n: r.p_n,
                k_lo: r.bounds.k_lo,
                k_hi: r.bounds.k_hi,
                terms_evaluated: r.terms_evaluated,
                elapsed_seconds: median_seconds(&mut times),
                repetitions,
            });
        }
    }
    Ok(records)
}

fn median_seconds(times: &mut [Duration]) -> f64 {
    times.sort_unstable();
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid].as_secs_f64()
    } else {
        (times[mid - 1].as_secs_f64() + times[mid].as_secs_f64()) / 2.0
    }
}

/// Ordinary least squares of `ln(elapsed)` against `ln(predictor(n))`.
/// Needs at least four records with distinct `n`, positive timings, and a
/// single variant.
pub fn fit_complexity(records: &[BenchRecord], predictor: Predictor) -> Result<ComplexityFit> {
    if let Some(first) = records.first() {
        if records.iter().any(|r| r.variant != first.variant) {
            return Err(Error::MixedVariants);
        }
    }
    let mut distinct: Vec<u64> = records.iter().map(|r| r.n).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::TooFewFitPoints {
            min: 4,
            got: distinct.len(),
        });
    }
    for r in records {
        if r.elapsed_seconds <= 0.0 {
            return Err(Error::NonPositiveTiming {
                n: r.n,
                elapsed: r.elapsed_seconds,
            });
        }
        if predictor.apply(r.n) <= 0.0 {
            return Err(Error::NonPositivePredictor { n: r.n });
        }
    }

    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (predictor.apply(r.n).ln(), r.elapsed_seconds.ln()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let b = sxy / sxx;
    let a = (mean_y - b * mean_x).exp();
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (a.ln() + b * p.0)).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(ComplexityFit {
        predictor,
        exponent_b: b,
        coefficient_a: a,
        r_squared,
        points_used: points.len(),
    })
}

/// Output format for [`emit_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

/// Render records as a table. Markdown: one row per `n` labeled `P<n>=<p_n>`,
/// one column per variant, seconds with two decimals. CSV: the exact header
/// `variant,n,p_n,k_lo,k_hi,terms_evaluated,elapsed_seconds,repetitions`.
pub fn emit_table(records: &[BenchRecord], format: TableFormat) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    match format {
        TableFormat::Markdown => Ok(emit_markdown(records)),
        TableFormat::Csv => emit_csv(records),
    }
}

fn emit_markdown(records: &[BenchRecord]) -> String {
    let variants: Vec<Variant> = [Variant::Naive, Variant::Memoized, Variant::Rs]
        .into_iter()
        .filter(|v| records.iter().any(|r| r.variant == *v))
        .collect();
    let mut ns: Vec<u64> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();

    let mut out = String::from("| Prime |");
    for v in &variants {
        out.push_str(&format!(" {v} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &variants {
        out.push_str("---|");
    }
    out.push('\n');
    for n in ns {
        let p_n = records
            .iter()
            .find(|r| r.n == n)
            .map(|r| r.p_n)
            .expect("n came from records");
        out.push_str(&format!("| P{n}={p_n} |"));
        for v in &variants {
            match records.iter().find(|r| r.variant == *v && r.n == n) {
                Some(r) => out.push_str(&format!(" {:.2} |", r.elapsed_seconds)),
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}

fn emit_csv(records: &[BenchRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::CsvParse(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::CsvParse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::CsvParse(e.to_string()))
}

/// Parse CSV produced by [`emit_table`]. Lines starting with `#` (the fit
/// lines the CLI may append) are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<BenchRecord>, _>>()
        .map_err(|e| Error::CsvParse(e.to_string()))
}

pub const CSV_HEADER: &str = "variant,n,p_n,k_lo,k_hi,terms_evaluated,elapsed_seconds,repetitions";

#[cfg(test)]
mod tests {
    use super::*;

    fn record(variant: Variant, n: u64, elapsed: f64) -> BenchRecord {
        BenchRecord {
            variant,
            n,
            p_n: 0,
            k_lo: 1,
            k_hi: 10,
            terms_evaluated: 10,
            elapsed_seconds: elapsed,
            repetitions: 1,
        }
    }

    #[test]
    fn bench_records_match_oracle() {
        let records = run_bench(&[Variant::Memoized, Variant::Rs], &[10, 20], 3).unwrap();
        assert_eq!(records.len(), 4);
        let table = oracle::sieve(5000).unwrap();
        for r in &records {
            assert_eq!(r.p_n, table.nth_prime(r.n).unwrap());
            assert!(r.elapsed_seconds >= 0.0);
            assert_eq!(r.repetitions, 3);
        }
        assert!(records
            .iter()
            .any(|r| r.variant == Variant::Memoized && r.n == 10 && r.p_n == 29));
    }

    #[test]
    fn rs_record_at_100() {
        let records = run_bench(&[Variant::Rs], &[100], 3).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].p_n, 541);
        assert_eq!((records[0].k_lo, records[0].k_hi), (460, 566));
        assert_eq!(records[0].terms_evaluated, 107);
    }

    #[test]
    fn naive_slower_than_memoized_at_50() {
        let records = run_bench(&[Variant::Naive, Variant::Memoized], &[50], 1).unwrap();
        assert_eq!(records[0].variant, Variant::Naive);
        assert!(records[0].elapsed_seconds > records[1].elapsed_seconds);
    }

    #[test]
    fn rejects_zero_repetitions() {
        assert!(run_bench(&[Variant::Rs], &[10], 0).is_err());
    }

    #[test]
    fn fit_recovers_planted_cubic() {
        let records: Vec<BenchRecord> = [10u64, 20, 40, 80]
            .into_iter()
            .map(|n| record(Variant::Memoized, n, 2.0 * (n as f64).powi(3)))
            .collect();
        let fit = fit_complexity(&records, Predictor::N).unwrap();
        assert!((fit.exponent_b - 3.0).abs() < 0.01, "b={}", fit.exponent_b);
        assert!(fit.r_squared > 0.999);
        assert!((fit.coefficient_a - 2.0).abs() < 0.01);
    }

    #[test]
    fn fit_recovers_planted_nlogn_law() {
        let records: Vec<BenchRecord> = [10u64, 20, 40, 80]
            .into_iter()
            .map(|n| {
                let x = n as f64 * (n as f64).ln();
                record(Variant::Rs, n, 5.0 * x.powf(1.5))
            })
            .collect();
        let fit = fit_complexity(&records, Predictor::NLogN).unwrap();
        assert!((fit.exponent_b - 1.5).abs() < 0.01, "b={}", fit.exponent_b);
        assert!(fit.r_squared > 0.999);
    }

    #[test]
    fn fit_rejects_bad_inputs() {
        let three: Vec<BenchRecord> = [10u64, 20, 40]
            .into_iter()
            .map(|n| record(Variant::Rs, n, 1.0))
            .collect();
        assert!(matches!(
            fit_complexity(&three, Predictor::N),
            Err(Error::TooFewFitPoints { min: 4, got: 3 })
        ));

        let mut zeroed: Vec<BenchRecord> = [10u64, 20, 40, 80]
            .into_iter()
            .map(|n| record(Variant::Rs, n, 1.0))
            .collect();
        zeroed[2].elapsed_seconds = 0.0;
        assert!(matches!(
            fit_complexity(&zeroed, Predictor::N),
            Err(Error::NonPositiveTiming { n: 40, .. })
        ));

        let mixed = vec![
            record(Variant::Rs, 10, 1.0),
            record(Variant::Memoized, 20, 1.0),
            record(Variant::Rs, 40, 1.0),
            record(Variant::Rs, 80, 1.0),
        ];
        assert!(matches!(
            fit_complexity(&mixed, Predictor::N),
            Err(Error::MixedVariants)
        ));

        let with_one: Vec<BenchRecord> = [1u64, 20, 40, 80]
            .into_iter()
            .map(|n| record(Variant::Rs, n, 1.0))
            .collect();
        assert!(matches!(
            fit_complexity(&with_one, Predictor::NLogN),
            Err(Error::NonPositivePredictor { n: 1 })
        ));
    }

    #[test]
    fn markdown_layout() {
        let records = vec![record(Variant::Memoized, 10, 0.0213)];
        let mut with_p = records.clone();
        with_p[0].p_n = 29;
        let text = emit_table(&with_p, TableFormat::Markdown).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "| Prime | memoized |");
        assert!(lines[2].starts_with("| P10=29 |"));
        assert!(lines[2].contains("0.02"));
    }

    #[test]
    fn markdown_two_variants_one_row() {
        let mut a = record(Variant::Memoized, 10, 0.5);
        let mut b = record(Variant::Rs, 10, 0.25);
        a.p_n = 29;
        b.p_n = 29;
        let text = emit_table(&[a, b], TableFormat::Markdown).unwrap();
        let row = text.lines().nth(2).unwrap();
        assert_eq!(row, "| P10=29 | 0.50 | 0.25 |");
    }

    #[test]
    fn empty_records_error() {
        assert!(matches!(
            emit_table(&[], TableFormat::Markdown),
            Err(Error::EmptyRecords)
        ));
        assert!(matches!(
            emit_table(&[], TableFormat::Csv),
            Err(Error::EmptyRecords)
        ));
    }

    #[test]
    fn csv_header_is_exact() {
        let records = vec![record(Variant::Rs, 10, 0.002)];
        let text = emit_table(&records, TableFormat::Csv).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn csv_round_trip_field_for_field() {
        let records = vec![
            BenchRecord {
                variant: Variant::Naive,
                n: 50,
                p_n: 229,
                k_lo: 1,
                k_hi: 393,
                terms_evaluated: 393,
                elapsed_seconds: 0.123456789012345,
                repetitions: 3,
            },
            BenchRecord {
                variant: Variant::Rs,
                n: 100,
                p_n: 541,
                k_lo: 460,
                k_hi: 566,
                terms_evaluated: 107,
                elapsed_seconds: 3.5e-5,
                repetitions: 7,
            },
        ];
        let text = emit_table(&records, TableFormat::Csv).unwrap();
        assert_eq!(parse_csv(&text).unwrap(), records);
    }

    #[test]
    fn csv_parse_skips_fit_comment_lines() {
        let records = vec![record(Variant::Memoized, 10, 0.25)];
        let mut text = emit_table(&records, TableFormat::Csv).unwrap();
        text.push_str("# fit variant=memoized predictor=n exponent_b=1 coefficient_a=1 r_squared=1 points=4\n");
        assert_eq!(parse_csv(&text).unwrap(), records);
    }
}
