//! Star discrepancy of rotation samples `{γn}`.
//!
//! How uniformly do the fractional parts of γ, 2γ, 3γ, … fill the unit
//! interval? The star discrepancy D*(M) measures the worst deviation of the
//! first M points from uniform measure over anchored intervals; for a
//! badly-approximable slope it decays like M^(−1+o(1)), and the golden-ratio
//! inverse — whose continued fraction is all ones — is the gold standard.
//!
//! Run with: `cargo run --example discrepancy_ladder`

use bgold::discrepancy::{discrepancy_report, kronecker_samples};
use bgold::irrational::{parse_ratio, AffineFrac, IrrationalSpec};

fn main() -> Result<(), bgold::Error> {
    let zero = parse_ratio("0")?;

    for name in ["golden-inverse", "sqrt:2", "pi"] {
        let spec = IrrationalSpec::parse(name)?;
        let frac = AffineFrac::new(&spec, zero.clone(), zero.clone())?;
        println!("slope {name}:");
        for m in [100usize, 1_000, 10_000, 100_000] {
            let samples = kronecker_samples(&frac, m)?;
            let report = discrepancy_report(&samples, 2_000)?;
            let slope = report.star.ln() / (m as f64).ln();
            println!(
                "  M = {m:>6}:  D* = {:.3e}   log D*/log M = {slope:.3}   extreme in [{:.3e}, {:.3e}]{}",
                report.star,
                report.extreme_lo,
                report.extreme_hi,
                if report.exact_extreme { " (exact)" } else { " (bracket)" }
            );
        }
        println!();
    }

    // An offset shifts every sample but cannot change the discrepancy trend.
    let spec = IrrationalSpec::parse("sqrt:2")?;
    let shifted = AffineFrac::new(&spec, parse_ratio("0.37")?, zero.clone())?;
    let samples = kronecker_samples(&shifted, 10_000)?;
    let report = discrepancy_report(&samples, 2_000)?;
    println!("sqrt:2 with offset 0.37, M = 10^4:  D* = {:.3e}", report.star);
    Ok(())
}
