//! Certified membership in a floor sequence.
//!
//! The sequence `⌊αm + β⌋ (m = 1, 2, …)` contains `n` exactly when the
//! fractional part `{γn + δ}` (γ = 1/α, δ = γ(1−β)) falls in `(0, γ]`.
//! Every membership answer here is certified: the fractional part is
//! evaluated in fixed-point arithmetic with an enclosure proving it cannot
//! sit on the wrong side of the window edge.
//!
//! Run with: `cargo run --example beatty_membership`

use bgold::beatty::{coverage_fraction, gaps, BeattyConfig};
use bgold::irrational::{parse_ratio, IrrationalSpec};

fn main() -> Result<(), bgold::Error> {
    let alpha = IrrationalSpec::parse("sqrt:2")?;
    let cfg = BeattyConfig::new(alpha, parse_ratio("1/3")?)?;
    println!(
        "sequence floor({} m + {}):  gamma = {:.6}, delta = {:.6}",
        cfg.alpha_f64(),
        cfg.beta(),
        cfg.gamma_f64(),
        cfg.delta_f64()
    );

    // Direct floor computation and the window test must agree term by term.
    let terms = cfg.generate_up_to(60)?;
    println!("members up to 60: {terms:?}");
    let floors = cfg.floor_terms(45)?;
    for f in &floors {
        let n: u64 = f.try_into().expect("small term");
        if n <= 60 {
            assert!(terms.contains(&n), "floor term {n} must pass the window test");
        }
    }

    // The gaps of a width-1/α sequence take exactly two values: ⌊α⌋ and ⌈α⌉.
    let mut gap_values = gaps(&terms);
    gap_values.sort_unstable();
    gap_values.dedup();
    println!("distinct gaps: {gap_values:?} (floor/ceil of alpha)");

    // Density ≈ γ: the sequence covers about n/α of the integers below n.
    let frac = coverage_fraction(&terms, 60);
    println!("coverage up to 60: {frac:.4} (slope predicts {:.4})", cfg.gamma_f64());

    // Membership of a few individual integers, with the certified
    // fractional part that decided each answer.
    for n in [1u64, 2, 3, 12, 99, 100] {
        let frac = cfg.membership_frac(n)?;
        println!(
            "n = {n:3}: {} ({{gamma n + delta}} = {:.6})",
            if cfg.contains(n)? { "member    " } else { "not member" },
            frac.value
        );
    }
    Ok(())
}
