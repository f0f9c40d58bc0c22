//! Counting κ-term prime representations constrained to a floor sequence.
//!
//! For targets N of the right parity, the log-weighted representation count
//! G_κ(N) — summed over ordered κ-tuples of prime powers drawn from the
//! sequence — is predicted by a three-factor main term:
//!
//!     ψ⁽ᵏ⁾({γN + κδ}) · 𝔖_κ(N) · N^(κ−1)/(κ−1)!
//!
//! window geometry × local arithmetic × volume. This example runs the full
//! pipeline at desk scale: sieve, certified membership, FFT convolution,
//! then the prediction next to the truth, with the relative-error trend
//! across dyadic windows.
//!
//! Run with: `cargo run --example goldbach_beatty`

use bgold::beatty::BeattyConfig;
use bgold::experiments::compare_experiment;
use bgold::irrational::{parse_ratio, IrrationalSpec};
use bgold::mangoldt::LambdaTable;
use bgold::repcounts::{gk_bulk, gk_naive, rk_prime_count};

fn main() -> Result<(), bgold::Error> {
    let cfg = BeattyConfig::new(IrrationalSpec::parse("sqrt:2")?, parse_ratio("0")?)?;
    let table = LambdaTable::build(10_000)?;

    // Ground truth two ways: nested loops and FFT convolution agree.
    let kappa = 2;
    let bulk = gk_bulk(&cfg, kappa, 3_000, &table)?;
    println!("two-term counts for the width-1/sqrt(2) sequence:");
    for n in [100u64, 1_000, 2_222, 3_000] {
        let naive = gk_naive(&cfg, kappa, n, &table)?;
        println!(
            "  G_2({n:>4}) = {:.6} (nested loops) = {:.6} (convolution)",
            naive,
            bulk.count(n)
        );
    }

    // Unweighted pair counts R_2: how many ways as a sum of two primes
    // from the sequence (ordered).
    let r = rk_prime_count(&cfg, kappa, 3_000, &table)?;
    for n in [100u64, 1_000, 3_000] {
        println!("  R_2({n:>4}) = {}", r.count(n) as u64);
    }

    // The full comparison sweep: truth vs main term, with dyadic medians.
    let report = compare_experiment(&cfg, 2, 10_000, None, &table)?;
    println!("\ncomparison sweep to 10^4 (even targets): {} rows", report.rows.len());
    println!("  window        rows   median rel err   p90 rel err");
    for w in &report.dyadic {
        println!(
            "  [{:>5}, {:>5}] {:>5}   {:.4}           {:.4}",
            w.lo, w.hi, w.rows, w.median_rel_err, w.p90_rel_err
        );
    }
    println!("  rows with rel err > 0.5: {}", report.exceed_half_count);

    // A closer look at one target.
    if let Some(row) = report.rows.iter().find(|r| r.n == 9_998) {
        println!(
            "\n  N = {}: G_2 = {:.3}, R_2 = {}, main term {:.3}, rel err {:.4}",
            row.n, row.g_kappa, row.r_kappa, row.main_term, row.rel_err
        );
    }
    Ok(())
}
