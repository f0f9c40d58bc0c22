//! Certified no-representation witnesses.
//!
//! When the sequence width α exceeds the number of terms κ, a fractional-
//! part obstruction blocks some targets entirely: if {(N − κβ)/α} lands in
//! the open interval (0, 1 − κ/α), then N cannot be a sum of κ sequence
//! members — weighted count, prime count, everything is exactly zero. The
//! witness test is certified (fixed-point enclosures), so each hit is a
//! proof, and equidistribution predicts the density of hits: 1 − κγ.
//!
//! Run with: `cargo run --example witness_density`

use bgold::beatty::BeattyConfig;
use bgold::experiments::density_experiment;
use bgold::irrational::{parse_ratio, IrrationalSpec};
use bgold::mangoldt::LambdaTable;
use bgold::repcounts::{
    gk_naive_with, no_representation_witness, witness_window, WeightMode, WeightedIndicator,
};

fn main() -> Result<(), bgold::Error> {
    let cfg = BeattyConfig::new(IrrationalSpec::parse("pi")?, parse_ratio("0")?)?;
    let kappa = 3;
    let table = LambdaTable::build(20_000)?;

    // Individual witnesses, each cross-checked against the actual count.
    let window = witness_window(&cfg, kappa)?;
    let ind = WeightedIndicator::build(&cfg, &table, 5_000, WeightMode::Lambda)?;
    println!("first odd witnesses for three-term sums from the width-1/pi sequence:");
    let mut shown = 0;
    for n in (3..=5_000u64).step_by(2) {
        if window.in_open_upper_window(n, kappa)? {
            let g = gk_naive_with(&ind, kappa, n)?;
            assert_eq!(g, 0.0, "a certified witness must have a zero count");
            if shown < 8 {
                println!("  N = {n:>4}: witness, and indeed G_3({n}) = {g}");
                shown += 1;
            }
        }
    }

    // The one-off entry point does the same thing without a prebuilt window.
    assert!(no_representation_witness(&cfg, kappa, 355)?);
    println!("  (spot check: N = 355 is a witness)");

    // Density over a larger range: measured vs the window-length prediction.
    let summary = density_experiment(&cfg, kappa, 20_000, None, &table)?;
    println!(
        "\nover odd N <= 2*10^4: witness fraction {:.5} vs predicted {:.5}; \
         no-representation fraction {:.5}",
        summary.witness_fraction(),
        summary.predicted_witness_fraction,
        summary.no_rep_fraction()
    );

    // With more terms than the width (kappa >= alpha) the window is empty:
    // no witness can exist.
    let wide = BeattyConfig::new(IrrationalSpec::parse("sqrt:2")?, parse_ratio("0")?)?;
    let any = (1..=2_000u64).any(|n| no_representation_witness(&wide, 2, n).unwrap_or(false));
    println!("width sqrt(2) with two terms: any witness below 2000? {any}");
    Ok(())
}
