//! The local-density product for κ-term prime representations.
//!
//! The count of ways to write N as a sum of κ primes carries an arithmetic
//! factor 𝔖_κ(N): an Euler product over primes recording, modulus by
//! modulus, whether N is easy or hard to hit. Its two key behaviors:
//!   * parity is absolute — 𝔖_κ(N) = 0 exactly when N ≢ κ (mod 2);
//!   * everything else is gentle — over the right parity class the values
//!     oscillate in a narrow band around 1–3.
//!
//! The product is also the limit of two classical series identities, which
//! this example cross-checks against the direct product.
//!
//! Run with: `cargo run --example singular_series`

use bgold::mangoldt::LambdaTable;
use bgold::singular::{euler_product, identity_partial_sum, tail_bound, SingularEvaluator};

fn main() -> Result<(), bgold::Error> {
    let table = LambdaTable::build(100_000)?;
    let cutoff = 100_000;

    println!("two-term local densities (cutoff 10^5):");
    for n in [4u64, 6, 10, 30, 210, 9_240] {
        let sv = euler_product(&table, 2, n, cutoff)?;
        println!("  S_2({n:>5}) = {:.9}   (tail bound {:.2e})", sv.value, sv.tail_bound);
    }
    println!("  parity zero: S_2(7) = {}", euler_product(&table, 2, 7, cutoff)?.value);

    // Bulk evaluation over a parity class: the evaluator factors each N and
    // reuses a shared base product, so sweeps cost one factorization per N.
    let mut ev = SingularEvaluator::new(&table, 3, cutoff)?;
    let (mut min, mut max, mut argmin, mut argmax) = (f64::INFINITY, 0.0f64, 0u64, 0u64);
    for n in (3..=9_999u64).step_by(2) {
        let v = ev.evaluate(n)?.value;
        if v < min {
            (min, argmin) = (v, n);
        }
        if v > max {
            (max, argmax) = (v, n);
        }
    }
    println!("\nthree-term densities over odd N < 10^4: range [{min:.6} at {argmin}, {max:.6} at {argmax}]");

    // Series identities converge to the same numbers.
    println!("\nidentity cross-check (truncated at 10^4 terms):");
    for (kappa, n) in [(2u32, 4u64), (2, 10), (3, 5), (3, 105)] {
        let product = euler_product(&table, kappa, n, cutoff)?.value;
        let partial = identity_partial_sum(&table, kappa, n, 10_000)?;
        println!(
            "  kappa = {kappa}, N = {n:>3}: product {product:.6} vs series {partial:.6} (gap {:.1e})",
            (product - partial).abs()
        );
    }

    // The truncation tail shrinks quickly with the cutoff and with κ.
    println!("\ntail bounds by cutoff:");
    for p in [1_000u64, 10_000, 100_000] {
        println!(
            "  cutoff {p:>6}: kappa=2 -> {:.3e}, kappa=3 -> {:.3e}, kappa=4 -> {:.3e}",
            tail_bound(2, p),
            tail_bound(3, p),
            tail_bound(4, p)
        );
    }
    Ok(())
}
