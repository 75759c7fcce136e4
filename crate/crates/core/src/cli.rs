//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::is_prime;
use crate::cache::{expansion_cached, Cache};
use crate::hasse_witt::hasse_witt_profile_from_expansion;
use crate::lifts::{build_lift, default_order, dwork_congruence_check, verify_lift, LiftSeries};
use crate::survey::{deuring_row, primes_in, survey_w5_row, w13_row, LocusReport};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Version of the CSV/JSON column layout.
pub const TABLE_FORMAT: &str = "columns-v1";

#[derive(Debug, Parser)]
#[command(name = "partial-hasse", version, about = "Partial Hasse invariants on Hilbert modular curves")]
pub struct Cli {
    /// Worker threads for prime sweeps (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory for cached expansions (overrides $HASSE_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

impl PrimeRange {
    pub fn primes(&self) -> Vec<u64> {
        if self.lo > self.hi {
            Vec::new()
        } else {
            primes_in(self.lo, self.hi)
        }
    }
}

fn parse_range(s: &str) -> std::result::Result<PrimeRange, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let lo = a.trim().parse::<u64>().map_err(|_| format!("bad lower bound '{a}'"))?;
    let hi = b.trim().parse::<u64>().map_err(|_| format!("bad upper bound '{b}'"))?;
    Ok(PrimeRange { lo, hi })
}

fn reject_small(r: &PrimeRange) -> std::result::Result<(), String> {
    if r.lo <= r.hi && r.lo <= 3 && r.hi >= 2 {
        return Err("range contains 2 or 3, which are not allowed".into());
    }
    Ok(())
}

fn deuring_range(s: &str) -> std::result::Result<PrimeRange, String> {
    let r = parse_range(s)?;
    reject_small(&r)?;
    if r.lo <= r.hi && (r.lo < 5 || r.hi > 499) {
        return Err("deuring range must lie within 5..499".into());
    }
    Ok(r)
}

fn survey_range(s: &str) -> std::result::Result<PrimeRange, String> {
    let r = parse_range(s)?;
    reject_small(&r)?;
    if r.lo <= r.hi && r.hi > 999 {
        return Err("survey range must end at or below 999".into());
    }
    Ok(r)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Supersingular j-invariant counts: formula against brute force.
    Deuring {
        #[arg(long, value_parser = deuring_range)]
        primes: PrimeRange,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Non-ordinary loci of W_5: brute force against the degree formulas.
    Survey {
        #[arg(long, default_value = "w5")]
        curve: String,
        #[arg(long, value_parser = survey_range)]
        primes: PrimeRange,
        /// Also run the Dwork congruence check truncated at this order.
        #[arg(long)]
        order: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Degree predictions for W_13 next to the published table.
    W13 {
        #[arg(long, value_parser = survey_range)]
        primes: PrimeRange,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify a lift h_{p,j}^2 of a partial Hasse invariant on W_5.
    Lift {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        j: u8,
        #[arg(long)]
        order: Option<usize>,
        /// Write the series to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

pub fn run() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(e)) => {
            eprintln!("error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

enum Failure {
    Usage(String),
    Check(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Check(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(Error::Io(e))
    }
}

fn execute(cli: &Cli) -> std::result::Result<i32, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    let cache = if cli.no_cache {
        None
    } else {
        Some(cli.cache_dir.clone().map(Cache::new).unwrap_or_else(Cache::from_env))
    };
    match &cli.command {
        Command::Deuring { primes, output } => {
            let rows = pool.install(|| {
                primes.primes().par_iter().map(|&p| deuring_row(p)).collect::<Result<Vec<_>>>()
            })?;
            let failed = rows.iter().filter(|r| !r.matches).count();
            emit_table("deuring", &rows, output)?;
            Ok(summarize(rows.len(), failed))
        }
        Command::Survey { curve, primes, order, output } => {
            if !curve.eq_ignore_ascii_case("w5") {
                return Err(Failure::Usage(format!(
                    "brute-force survey is only available for w5, not '{curve}'"
                )));
            }
            let list: Vec<u64> = primes.primes().into_iter().filter(|&p| p >= 7).collect();
            let rows: Vec<LocusReport> = pool.install(|| {
                list.par_iter().map(|&p| survey_prime(p, cache.as_ref(), *order)).collect()
            });
            let failed = rows.iter().filter(|r| !r.passed()).count();
            emit_table("survey-w5", &rows, output)?;
            Ok(summarize(rows.len(), failed))
        }
        Command::W13 { primes, output } => {
            let rows = pool.install(|| {
                primes
                    .primes()
                    .par_iter()
                    .filter(|&&p| p != 13)
                    .map(|&p| w13_row(p))
                    .collect::<Result<Vec<_>>>()
            })?;
            for r in rows.iter().filter(|r| r.discrepancy) {
                eprintln!(
                    "note: p={} table ({:?},{:?}) differs from formula ({},{})",
                    r.p, r.table_ph1, r.table_ph2, r.ph1_formula, r.ph2_formula
                );
            }
            let failed = rows.iter().filter(|r| !r.passed()).count();
            emit_table("w13", &rows, output)?;
            Ok(summarize(rows.len(), failed))
        }
        Command::Lift { p, j, order, emit } => cmd_lift(*p, *j, *order, emit.as_deref(), cache.as_ref()),
    }
}

fn summarize(rows: usize, failed: usize) -> i32 {
    eprintln!("{rows} rows, {failed} failed");
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Survey row for `p`, with the Dwork verdict when `order` is given.
pub fn survey_prime(p: u64, cache: Option<&Cache>, order: Option<usize>) -> LocusReport {
    let expansion = match expansion_cached(cache, p) {
        Ok(e) => e,
        Err(e) => {
            let mut report = survey_w5_row(p, &crate::algebra::FpBivarPoly::zeros(0, 0, p));
            report.error = Some(e.to_string());
            return report;
        }
    };
    let mut report = survey_w5_row(p, &expansion);
    if let (Some(n), None) = (order, &report.error) {
        let verdict = hasse_witt_profile_from_expansion(p, &expansion)
            .and_then(|prof| dwork_congruence_check(&prof, Some(n)));
        match verdict {
            Ok(rep) => {
                report.dwork_order = Some(rep.order);
                report.dwork_ok = Some(true);
            }
            Err(e) => {
                log::warn!("p={p}: {e}");
                report.dwork_order = Some(n);
                report.dwork_ok = Some(false);
            }
        }
    }
    report
}

fn table_header(name: &str) -> String {
    format!(
        "# partial-hasse {} table={name} format={TABLE_FORMAT}\n",
        env!("CARGO_PKG_VERSION")
    )
}

/// Renders rows as `#`-commented CSV or as a JSON array.
pub fn render_table<T: Serialize>(name: &str, rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            let body = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            Ok(table_header(name) + &String::from_utf8(body).expect("csv output is UTF-8"))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn emit_table<T: Serialize>(name: &str, rows: &[T], output: &OutputArgs) -> Result<()> {
    let text = render_table(name, rows, output.format)?;
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The lift series in the line format: a header, then `exp<TAB>num/den`.
pub fn render_lift(ls: &LiftSeries) -> String {
    let mut s = format!(
        "# lift p={} j={} weight={} order={}\n",
        ls.p, ls.j, ls.weight, ls.truncation
    );
    for (i, c) in ls.square_series.coeffs().iter().enumerate() {
        s.push_str(&format!("{i}\t{}/{}\n", c.numer(), c.denom()));
    }
    s
}

fn cmd_lift(
    p: u64,
    j: u8,
    order: Option<usize>,
    emit: Option<&Path>,
    cache: Option<&Cache>,
) -> std::result::Result<i32, Failure> {
    if p < 7 || !is_prime(p) {
        return Err(Failure::Usage(format!("--p must be a prime >= 7, got {p}")));
    }
    let order = order.unwrap_or_else(|| default_order(p));
    if order < 3 * p as usize {
        return Err(Failure::Usage(format!("--order must be at least 3p = {}", 3 * p)));
    }
    let ls = build_lift(p, order, j)?;
    if let Some(path) = emit {
        fs::write(path, render_lift(&ls))?;
    }
    let profile = hasse_witt_profile_from_expansion(p, &expansion_cached(cache, p)?)?;
    println!("p={p} j={j} weight={} order={order}", ls.weight);
    println!("integral: true");
    match verify_lift(&ls, &profile) {
        Ok(rep) => {
            println!("constant mod {p}: {} (residue {})", rep.constant_mod_p, rep.constant_residue);
            println!("lift zero locus: {} roots in F_{p}: {:?}", rep.lift_polynomial, rep.lift_roots);
            println!("brute force ph_{j}: {} roots in F_{p}: {:?}", rep.brute_polynomial, rep.brute_roots);
            println!("roots match: {}", rep.roots_match);
            Ok(EXIT_OK)
        }
        Err(e) => {
            println!("verification failed: {e}");
            Ok(EXIT_CHECK_FAILED)
        }
    }
}
