//! The `bgold` command-line front end.
//!
//! Subcommands map one-to-one onto the experiment drivers and the plumbing
//! tables: `compare` and `density` run the theorem-scale experiments;
//! `psi`, `sing`, `beatty`, and `discrepancy` tabulate the individual
//! objects. Output is CSV (default) or a JSON mirror via `--format json`,
//! written to stdout or `--out`; CSV is UTF-8/LF with 12-significant-digit
//! floats and is byte-deterministic for fixed inputs. Human-oriented
//! summaries go to stderr so they never perturb the data stream.
//!
//! Exit codes: 0 success, 2 precision exhausted / undecidable at certified
//! precision, 3 capacity, 4 bad arguments, 1 I/O or cache-format failure.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::beatty::BeattyConfig;
use crate::discrepancy::{discrepancy_report, kronecker_samples, DEFAULT_EXACT_THRESHOLD};
use crate::error::{Error, Result};
use crate::experiments::{compare_experiment, density_experiment, CompareReport};
use crate::irrational::{parse_ratio, AffineFrac, IrrationalSpec, Ratio};
use crate::mangoldt::LambdaTable;
use crate::psi::PiecewisePoly;
use crate::repcounts::{gk_naive_with, naive_budget, WeightMode, WeightedIndicator};
use crate::singular::SingularEvaluator;
use crate::util::fmt_sig12;

#[derive(Parser)]
#[command(
    name = "bgold",
    version,
    about = "Primes along Beatty sequences: representation counts, local densities, and equidistribution tables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: csv rows or a json mirror of the same data.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compare weighted representation counts G_kappa(N) against the
    /// predicted main term over one parity class.
    Compare {
        /// Slope spec: sqrt:<d>, pi, golden, golden-inverse, cf:<a0>,<a1>,...,
        /// dec:<literal>@<q_max>, or a plain rational literal.
        #[arg(long)]
        alpha: String,
        /// Exact rational intercept (e.g. 0, 1/2, 0.25).
        #[arg(long, default_value = "0")]
        beta: String,
        /// Number of summands (2..=4).
        #[arg(long)]
        kappa: u32,
        /// Largest target N.
        #[arg(long)]
        xmax: u64,
        /// Restrict rows to N in A..B (inclusive; 10^k notation allowed).
        #[arg(long)]
        window: Option<String>,
        /// Seed for the randomized bulk-vs-naive spot check (runs only when
        /// given).
        #[arg(long)]
        seed: Option<u64>,
        /// Accept a rational slope (periodic regime) for this theorem-level
        /// run.
        #[arg(long)]
        allow_rational: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Survey a parity class for targets with no prime representation and
    /// compare against the no-representation window prediction.
    Density {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long)]
        kappa: u32,
        #[arg(long)]
        xmax: u64,
        /// Restrict the survey to N in A..B (inclusive).
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        allow_rational: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the kappa-fold window self-convolution on a uniform grid.
    Psi {
        /// Window length in (0,1): a spec or a plain numeric literal.
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        kappa: u32,
        /// Number of grid points (x = j/grid for j = 0..grid).
        #[arg(long, default_value_t = 1000)]
        grid: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the local-density factor for N up to a limit.
    Sing {
        #[arg(long)]
        kappa: u32,
        /// Largest target N.
        #[arg(long)]
        limit: u64,
        /// Euler-product prime cutoff (defaults to max(limit, 10^4)).
        #[arg(long)]
        cutoff: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the sequence terms up to a bound.
    Beatty {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long)]
        xmax: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Star/extreme discrepancy of {gamma*n + delta} along a geometric
    /// ladder of sample counts.
    Discrepancy {
        /// The multiplier gamma: a spec or plain numeric literal.
        #[arg(long)]
        gamma: String,
        /// Exact rational shift delta.
        #[arg(long, default_value = "0")]
        delta: String,
        /// Ladder A..B: sample counts A, 10A, 100A, ... up to B.
        #[arg(long, default_value = "10^2..10^5")]
        ladder: String,
    #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Compare { alpha, beta, kappa, xmax, window, seed, allow_rational, output } => {
            cmd_compare(&alpha, &beta, kappa, xmax, window.as_deref(), seed, allow_rational, &output)
        }
        Cmd::Density { alpha, beta, kappa, xmax, window, allow_rational, output } => {
            cmd_density(&alpha, &beta, kappa, xmax, window.as_deref(), allow_rational, &output)
        }
        Cmd::Psi { gamma, kappa, grid, output } => cmd_psi(&gamma, kappa, grid, &output),
        Cmd::Sing { kappa, limit, cutoff, output } => cmd_sing(kappa, limit, cutoff, &output),
        Cmd::Beatty { alpha, beta, xmax, output } => cmd_beatty(&alpha, &beta, xmax, &output),
        Cmd::Discrepancy { gamma, delta, ladder, output } => {
            cmd_discrepancy(&gamma, &delta, &ladder, &output)
        }
    }
}

/// Parse a value spec, accepting plain numeric literals (`1.5`, `5/2`) as
/// exact rationals alongside the named spec grammar.
fn parse_spec_arg(s: &str) -> Result<IrrationalSpec> {
    match IrrationalSpec::parse(s) {
        Ok(spec) => Ok(spec),
        Err(spec_err) => {
            if parse_ratio(s).is_ok() {
                IrrationalSpec::parse(&format!("dec:{s}@1000000000"))
            } else {
                Err(spec_err)
            }
        }
    }
}

/// Parse `A..B` with optional `base^exp` notation on either side.
fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::BadArguments(format!("range `{s}` must look like A..B")))?;
    Ok((parse_scaled(a)?, parse_scaled(b)?))
}

fn parse_scaled(s: &str) -> Result<u64> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base
            .trim()
            .parse()
            .map_err(|_| Error::BadArguments(format!("bad base in `{s}`")))?;
        let exp: u32 =
            exp.trim().parse().map_err(|_| Error::BadArguments(format!("bad exponent in `{s}`")))?;
        base.checked_pow(exp)
            .ok_or_else(|| Error::BadArguments(format!("`{s}` overflows a 64-bit integer")))
    } else {
        s.parse().map_err(|_| Error::BadArguments(format!("`{s}` is not a non-negative integer")))
    }
}

fn build_config(alpha: &str, beta: &str, allow_rational: Option<bool>) -> Result<BeattyConfig> {
    let alpha_spec = parse_spec_arg(alpha)?;
    let beta_ratio = parse_ratio(beta)?;
    let cfg = BeattyConfig::new(alpha_spec, beta_ratio)?;
    if let Some(allow) = allow_rational {
        if cfg.is_rational_alpha() && !allow {
            return Err(Error::BadArguments(format!(
                "slope {alpha} is rational, so the sequence is periodic and the equidistribution \
                 theorems do not apply; pass --allow-rational to survey it anyway"
            )));
        }
    }
    Ok(cfg)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    alpha: &str,
    beta: &str,
    kappa: u32,
    xmax: u64,
    window: Option<&str>,
    seed: Option<u64>,
    allow_rational: bool,
    output: &OutputArgs,
) -> Result<()> {
    let cfg = build_config(alpha, beta, Some(allow_rational))?;
    let window = window.map(parse_range).transpose()?;
    let table = LambdaTable::build(xmax.max(100))?;
    let report = compare_experiment(&cfg, kappa, xmax, window, &table)?;
    if let Some(seed) = seed {
        spot_check(&cfg, kappa, &table, &report, seed)?;
    }
    if report.rows.is_empty() {
        eprintln!(
            "warning: no targets with N = {} (mod 2) inside the window",
            kappa % 2
        );
    }
    for w in &report.dyadic {
        eprintln!(
            "window [{}, {}]: rows {}, median rel_err {}, p90 {}, exceed-half {}",
            w.lo,
            w.hi,
            w.rows,
            fmt_sig12(w.median_rel_err),
            fmt_sig12(w.p90_rel_err),
            w.exceed_half
        );
    }
    eprintln!("rows with rel_err > 0.5: {}", report.exceed_half_count);
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("N,G_kappa,R_kappa,main_term,rel_err\n");
            for r in &report.rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    fmt_sig12(r.g_kappa),
                    r.r_kappa,
                    fmt_sig12(r.main_term),
                    fmt_sig12(r.rel_err)
                ));
            }
            s
        }
        Format::Json => to_json_pretty(&report)?,
    };
    emit(&text, &output.out)
}

/// Randomized cross-check of the bulk convolution against the nested-loop
/// oracle on rows within the naive budget; a mismatch is an internal
/// invariant violation and aborts.
fn spot_check(
    cfg: &BeattyConfig,
    kappa: u32,
    table: &LambdaTable,
    report: &CompareReport,
    seed: u64,
) -> Result<()> {
    let eligible: Vec<&crate::experiments::ExperimentRow> =
        report.rows.iter().filter(|r| r.n <= naive_budget(kappa) && !r.witness).collect();
    if eligible.is_empty() {
        return Ok(());
    }
    let upper = eligible.iter().map(|r| r.n).max().unwrap();
    let ind = WeightedIndicator::build(cfg, table, upper.max(2), WeightMode::Lambda)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let row = eligible[rng.gen_range(0..eligible.len())];
        let naive = gk_naive_with(&ind, kappa, row.n)?;
        assert!(
            (row.g_kappa - naive).abs() <= 1e-9 * naive.abs().max(1.0),
            "bulk/naive mismatch at N={}: {} vs {naive}",
            row.n,
            row.g_kappa
        );
    }
    eprintln!("spot check (seed {seed}): 16 rows matched the nested-loop oracle");
    Ok(())
}

fn cmd_density(
    alpha: &str,
    beta: &str,
    kappa: u32,
    xmax: u64,
    window: Option<&str>,
    allow_rational: bool,
    output: &OutputArgs,
) -> Result<()> {
    let cfg = build_config(alpha, beta, Some(allow_rational))?;
    let window = window.map(parse_range).transpose()?;
    let table = LambdaTable::build(xmax.max(100))?;
    let d = density_experiment(&cfg, kappa, xmax, window, &table)?;
    eprintln!(
        "witness fraction {} vs predicted {}; no-representation fraction {}",
        fmt_sig12(d.witness_fraction()),
        fmt_sig12(d.predicted_witness_fraction),
        fmt_sig12(d.no_rep_fraction())
    );
    let text = match output.format {
        Format::Csv => format!(
            "x_max,parity_class_size,no_rep_count,witness_count,predicted_witness_fraction,witness_fraction,no_rep_fraction\n{},{},{},{},{},{},{}\n",
            d.x_max,
            d.parity_class_size,
            d.no_rep_count,
            d.witness_count,
            fmt_sig12(d.predicted_witness_fraction),
            fmt_sig12(d.witness_fraction()),
            fmt_sig12(d.no_rep_fraction())
        ),
        Format::Json => to_json_pretty(&serde_json::json!({
            "x_max": d.x_max,
            "parity_class_size": d.parity_class_size,
            "no_rep_count": d.no_rep_count,
            "witness_count": d.witness_count,
            "predicted_witness_fraction": d.predicted_witness_fraction,
            "witness_fraction": d.witness_fraction(),
            "no_rep_fraction": d.no_rep_fraction(),
        }))?,
    };
    emit(&text, &output.out)
}

fn cmd_psi(gamma: &str, kappa: u32, grid: u32, output: &OutputArgs) -> Result<()> {
    if grid == 0 || grid > 10_000_000 {
        return Err(Error::BadArguments(format!("grid size {grid} outside [1, 10^7]")));
    }
    let gamma_val = parse_spec_arg(gamma)?.approx_f64();
    let poly = PiecewisePoly::build(kappa, gamma_val)?;
    let min = poly.minimum();
    eprintln!(
        "minimum {} at x = {}{}",
        fmt_sig12(min.min_value),
        fmt_sig12(min.argmin),
        if min.vanishes { " (vanishing plateau)" } else { "" }
    );
    let xs: Vec<f64> = (0..=grid).map(|j| j as f64 / grid as f64).collect();
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("x,psi_kappa\n");
            for &x in &xs {
                s.push_str(&format!("{},{}\n", fmt_sig12(x), fmt_sig12(poly.eval(x))));
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = xs
                .iter()
                .map(|&x| serde_json::json!({"x": x, "psi_kappa": poly.eval(x)}))
                .collect();
            to_json_pretty(&serde_json::json!({
                "gamma": gamma_val,
                "kappa": kappa,
                "grid": grid,
                "min_value": min.min_value,
                "argmin": min.argmin,
                "vanishes": min.vanishes,
                "rows": rows,
            }))?
        }
    };
    emit(&text, &output.out)
}

fn cmd_sing(kappa: u32, limit: u64, cutoff: Option<u64>, output: &OutputArgs) -> Result<()> {
    if limit < 1 {
        return Err(Error::BadArguments("limit must be >= 1".into()));
    }
    let cutoff = cutoff.unwrap_or_else(|| limit.max(10_000)).max(100);
    if cutoff < limit {
        return Err(Error::BadArguments(format!(
            "cutoff {cutoff} below the limit {limit}: prime factors would escape the product"
        )));
    }
    let table = LambdaTable::build(cutoff)?;
    let mut ev = SingularEvaluator::new(&table, kappa, cutoff)?;
    let mut values = Vec::with_capacity(limit as usize);
    for n in 1..=limit {
        values.push(ev.evaluate(n)?);
    }
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("N,S_kappa,tail_bound\n");
            for v in &values {
                s.push_str(&format!(
                    "{},{},{}\n",
                    v.n,
                    fmt_sig12(v.value),
                    fmt_sig12(v.tail_bound)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = values
                .iter()
                .map(|v| {
                    serde_json::json!({"N": v.n, "S_kappa": v.value, "tail_bound": v.tail_bound})
                })
                .collect();
            to_json_pretty(&serde_json::json!({
                "kappa": kappa,
                "prime_cutoff": cutoff,
                "rows": rows,
            }))?
        }
    };
    emit(&text, &output.out)
}

fn cmd_beatty(alpha: &str, beta: &str, xmax: u64, output: &OutputArgs) -> Result<()> {
    let cfg = build_config(alpha, beta, None)?;
    if xmax < 1 || xmax > 100_000_000 {
        return Err(Error::BadArguments(format!("xmax {xmax} outside [1, 10^8]")));
    }
    let terms = cfg.generate_up_to(xmax)?;
    eprintln!(
        "{} terms up to {xmax} (density {}, slope predicts {})",
        terms.len(),
        fmt_sig12(terms.len() as f64 / xmax as f64),
        fmt_sig12(cfg.gamma_f64())
    );
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("n\n");
            for t in &terms {
                s.push_str(&format!("{t}\n"));
            }
            s
        }
        Format::Json => to_json_pretty(&serde_json::json!({
            "alpha": cfg.alpha_spec().to_string(),
            "beta": cfg.beta().to_string(),
            "x_max": xmax,
            "terms": terms,
        }))?,
    };
    emit(&text, &output.out)
}

fn cmd_discrepancy(gamma: &str, delta: &str, ladder: &str, output: &OutputArgs) -> Result<()> {
    let gamma_spec = parse_spec_arg(gamma)?;
    let delta_ratio = parse_ratio(delta)?;
    let (lo, hi) = parse_range(ladder)?;
    if lo < 2 || hi < lo {
        return Err(Error::BadArguments(format!("ladder [{lo}, {hi}] must satisfy 2 <= A <= B")));
    }
    if hi > 50_000_000 {
        return Err(Error::BadArguments(format!("ladder top {hi} beyond the 5*10^7 budget")));
    }
    let frac = AffineFrac::new(&gamma_spec, delta_ratio, Ratio::from_integer(0.into()))?;
    let mut rows = Vec::new();
    let mut m = lo;
    loop {
        let samples = kronecker_samples(&frac, m as usize)?;
        let report = discrepancy_report(&samples, DEFAULT_EXACT_THRESHOLD)?;
        let log_ratio = report.star.ln() / (m as f64).ln();
        eprintln!(
            "M = {m}: star {}, log-ratio {}",
            fmt_sig12(report.star),
            fmt_sig12(log_ratio)
        );
        rows.push((report, log_ratio));
        match m.checked_mul(10) {
            Some(next) if next <= hi => m = next,
            _ => break,
        }
    }
    let text = match output.format {
        Format::Csv => {
            let mut s = String::from("M,D_star,D_extreme_lo,D_extreme_hi,extreme_exact,log_ratio\n");
            for (r, log_ratio) in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.m,
                    fmt_sig12(r.star),
                    fmt_sig12(r.extreme_lo),
                    fmt_sig12(r.extreme_hi),
                    r.exact_extreme,
                    fmt_sig12(*log_ratio)
                ));
            }
            s
        }
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|(r, log_ratio)| {
                    serde_json::json!({
                        "M": r.m,
                        "D_star": r.star,
                        "D_extreme_lo": r.extreme_lo,
                        "D_extreme_hi": r.extreme_hi,
                        "extreme_exact": r.exact_extreme,
                        "log_ratio": log_ratio,
                    })
                })
                .collect();
            to_json_pretty(&serde_json::json!({
                "gamma": gamma_spec.to_string(),
                "delta": delta,
                "rows": objs,
            }))?
        }
    };
    emit(&text, &output.out)
}

fn to_json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::BadArguments(format!("json serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
