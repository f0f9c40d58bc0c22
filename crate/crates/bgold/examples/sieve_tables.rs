//! The arithmetic sieve table: Λ, μ, φ, primes, and the divisor split.
//!
//! One linear sieve pass produces every arithmetic function the rest of the
//! library consumes: the log-weight Λ(n) (log p on prime powers, else 0),
//! the Möbius function, Euler's totient, smallest prime factors, and a
//! primality bitmap. Tables round-trip through a little-endian binary cache
//! so large sieves are paid for once.
//!
//! Run with: `cargo run --example sieve_tables`

use bgold::mangoldt::{lambda_split, LambdaTable};

fn main() -> Result<(), bgold::Error> {
    let table = LambdaTable::build(100_000)?;

    println!("  n    Lambda(n)   mu(n)  phi(n)  prime?");
    for n in [2u64, 3, 4, 8, 9, 12, 30, 97, 9_973] {
        println!(
            "{n:>6}   {:>7.4}   {:>3}   {:>5}   {}",
            table.lambda(n),
            table.mu(n),
            table.phi(n),
            table.is_prime(n)
        );
    }

    // Σ_{n<=x} Λ(n) tracks x — the prime-counting heartbeat.
    println!("\nweighted prime count vs x:");
    for x in [1_000u64, 10_000, 100_000] {
        let psi = table.chebyshev_psi(x);
        println!("  x = {x:>6}: sum {psi:>10.1}  (ratio {:.4})", psi / x as f64);
    }

    // The divisor-threshold split of Λ: both halves are computed
    // independently from the Möbius-divisor identity, and recombine exactly.
    println!("\ndivisor split of Lambda(n) = sum of mu(d) log(n/d) over d | n:");
    for (n, z) in [(12u64, 2u64), (64, 4), (97, 1), (9_973, 99)] {
        let (sharp, flat) = lambda_split(&table, n, z);
        println!(
            "  n = {n:>5}, threshold {z:>2}: sharp {sharp:>8.4} + flat {flat:>8.4} = {:.4} \
             (Lambda = {:.4})",
            sharp + flat,
            table.lambda(n)
        );
    }

    // Cache round-trip: write, read back, verify identical content.
    let path = std::env::temp_dir().join("sieve_tables_demo.bglt");
    table.write_cache(&path)?;
    let reloaded = LambdaTable::read_cache(&path)?;
    let bytes = std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
    assert_eq!(reloaded.x_max(), table.x_max());
    for n in (1..=100_000u64).step_by(997) {
        assert_eq!(reloaded.lambda(n), table.lambda(n));
        assert_eq!(reloaded.mu(n), table.mu(n));
    }
    println!("\ncache round-trip at {path:?}: {bytes} bytes, contents verified");
    let _ = std::fs::remove_file(&path);
    Ok(())
}
