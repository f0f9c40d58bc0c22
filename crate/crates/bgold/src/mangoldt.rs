//! Arithmetic tables over `[0, x_max]`: the von Mangoldt weight Λ, the
//! Möbius function μ, Euler's totient φ, smallest prime factors, and a
//! primality bitset — all built in one sieve pass and optionally persisted
//! in a compact binary cache (`BGLT` format) for bit-exact reload.
//!
//! Λ is the natural prime weight for representation counts: Λ(n) = log p
//! when `n` is a prime power `p^e`, else 0. The companion functions feed the
//! local-density products ([`crate::singular`]) and the divisor-sum split
//! [`lambda_split`].

use std::fs::File;
use std::io::{BufReader, BufWriter, Read as IoRead, Write as IoWrite};
use std::path::Path;

use crate::error::{Error, Result};

/// Default memory budget for table construction (2 GiB).
pub const DEFAULT_BUDGET_BYTES: u64 = 2 << 30;

/// Magic bytes of the binary table cache.
pub const CACHE_MAGIC: [u8; 4] = *b"BGLT";

/// Version of the cache layout written by this crate.
pub const CACHE_VERSION: u32 = 1;

/// Sieved arithmetic tables on `[0, x_max]`.
pub struct LambdaTable {
    x_max: u64,
    lambda: Vec<f64>,
    mu: Vec<i8>,
    phi: Vec<u32>,
    spf: Vec<u32>,
    is_prime: Vec<u64>,
}

impl LambdaTable {
    /// Build tables up to `x_max` under the default 2 GiB budget.
    pub fn build(x_max: u64) -> Result<Self> {
        Self::build_with_budget(x_max, DEFAULT_BUDGET_BYTES)
    }

    /// Estimated heap bytes needed for tables up to `x_max`.
    pub fn estimated_bytes(x_max: u64) -> u64 {
        let n = x_max + 1;
        n * (8 + 1 + 4 + 4) + (n / 64 + 1) * 8
    }

    /// Build tables up to `x_max`, refusing (with [`Error::Capacity`]) when
    /// the estimated footprint exceeds `budget_bytes`.
    pub fn build_with_budget(x_max: u64, budget_bytes: u64) -> Result<Self> {
        if x_max < 1 {
            return Err(Error::BadArguments("tables need x_max >= 1".into()));
        }
        if x_max >= u32::MAX as u64 {
            return Err(Error::Capacity(format!("x_max={x_max} exceeds the 32-bit table layout")));
        }
        let need = Self::estimated_bytes(x_max);
        if need > budget_bytes {
            return Err(Error::Capacity(format!(
                "tables up to {x_max} need ~{need} bytes, over the budget of {budget_bytes}"
            )));
        }
        let n = (x_max + 1) as usize;

        // Smallest prime factor by sieving: composites m = p·k with k ≥ p get
        // marked by their least p; anything unmarked is prime.
        let mut spf = vec![0u32; n];
        let mut p = 2u64;
        while p * p <= x_max {
            if spf[p as usize] == 0 {
                let mut m = p * p;
                while m <= x_max {
                    if spf[m as usize] == 0 {
                        spf[m as usize] = p as u32;
                    }
                    m += p;
                }
            }
            p += 1;
        }
        for v in 2..n {
            if spf[v] == 0 {
                spf[v] = v as u32;
            }
        }

        // Derive Λ, μ, φ, primality from the factorization chain n → n/spf(n).
        let mut lambda = vec![0.0f64; n];
        let mut mu = vec![0i8; n];
        let mut phi = vec![0u32; n];
        let mut is_prime = vec![0u64; n / 64 + 1];
        if n > 1 {
            mu[1] = 1;
            phi[1] = 1;
        }
        for v in 2..n {
            let p = spf[v] as usize;
            if p == v {
                is_prime[v / 64] |= 1 << (v % 64);
            }
            // Strip the full power of p: v = p^e · rest with p ∤ rest.
            let mut rest = v / p;
            let mut e = 1u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            lambda[v] = if rest == 1 { (p as f64).ln() } else { 0.0 };
            mu[v] = if e > 1 { 0 } else { -mu[rest] };
            // φ is multiplicative with φ(p^e) = p^(e−1)·(p−1).
            let pe_minus = (v / p / rest) as u64; // p^(e−1)
            phi[v] = (phi[rest] as u64 * pe_minus * (p as u64 - 1)) as u32;
        }

        Ok(LambdaTable { x_max, lambda, mu, phi, spf, is_prime })
    }

    /// Upper end of the table range.
    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    /// Von Mangoldt Λ(n): `log p` for prime powers `p^e`, else 0.
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    /// Möbius μ(n) ∈ {−1, 0, 1}.
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    /// Euler totient φ(n).
    pub fn phi(&self, n: u64) -> u32 {
        self.phi[n as usize]
    }

    /// Smallest prime factor of n (n itself for primes; 0 for n ≤ 1).
    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    /// Primality test from the sieve bitset.
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && (self.is_prime[(n / 64) as usize] >> (n % 64)) & 1 == 1
    }

    /// All primes in `[2, x_max]`.
    pub fn primes(&self) -> Vec<u64> {
        (2..=self.x_max).filter(|&n| self.is_prime(n)).collect()
    }

    /// Chebyshev ψ(x) = Σ_{n ≤ x} Λ(n) (pairwise-balanced summation).
    pub fn chebyshev_psi(&self, x: u64) -> f64 {
        assert!(x <= self.x_max, "x beyond table range");
        crate::util::balanced_sum(&self.lambda[..=x as usize])
    }

    /// The distinct prime factors of `n ≤ x_max`, ascending.
    pub fn distinct_primes(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut v = n;
        while v > 1 {
            let p = self.spf[v as usize] as u64;
            out.push(p);
            while v % p == 0 {
                v /= p;
            }
        }
        out
    }

    /// Write the tables to the binary cache format: magic `BGLT`, version,
    /// x_max, then the Λ/μ/φ/spf arrays and the primality bitset, all
    /// little-endian. Reload with [`LambdaTable::read_cache`] is bit-exact.
    pub fn write_cache<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(&CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&self.x_max.to_le_bytes())?;
        for v in &self.lambda {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.mu {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.phi {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.spf {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.is_prime {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    /// Read tables back from the binary cache, validating magic, version,
    /// and length.
    pub fn read_cache<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if magic != CACHE_MAGIC {
            return Err(Error::CacheFormat(format!(
                "bad magic {magic:?}; expected {CACHE_MAGIC:?}"
            )));
        }
        let mut buf4 = [0u8; 4];
        r.read_exact(&mut buf4)?;
        let version = u32::from_le_bytes(buf4);
        if version != CACHE_VERSION {
            return Err(Error::CacheFormat(format!(
                "unsupported cache version {version}; this build reads {CACHE_VERSION}"
            )));
        }
        let mut buf8 = [0u8; 8];
        r.read_exact(&mut buf8)?;
        let x_max = u64::from_le_bytes(buf8);
        if x_max < 1 || x_max >= u32::MAX as u64 {
            return Err(Error::CacheFormat(format!("cache x_max={x_max} out of range")));
        }
        let n = (x_max + 1) as usize;
        let mut lambda = vec![0.0f64; n];
        for v in lambda.iter_mut() {
            r.read_exact(&mut buf8)?;
            *v = f64::from_le_bytes(buf8);
        }
        let mut mu = vec![0i8; n];
        let mut b1 = [0u8; 1];
        for v in mu.iter_mut() {
            r.read_exact(&mut b1)?;
            *v = i8::from_le_bytes(b1);
        }
        let mut phi = vec![0u32; n];
        for v in phi.iter_mut() {
            r.read_exact(&mut buf4)?;
            *v = u32::from_le_bytes(buf4);
        }
        let mut spf = vec![0u32; n];
        for v in spf.iter_mut() {
            r.read_exact(&mut buf4)?;
            *v = u32::from_le_bytes(buf4);
        }
        let mut is_prime = vec![0u64; n / 64 + 1];
        for v in is_prime.iter_mut() {
            r.read_exact(&mut buf8)?;
            *v = u64::from_le_bytes(buf8);
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::CacheFormat("trailing bytes after table payload".into()));
        }
        Ok(LambdaTable { x_max, lambda, mu, phi, spf, is_prime })
    }
}

/// Split Λ(n) = Σ_{d|n} μ(d) log(n/d) at divisor threshold `z`:
/// the *sharp* part keeps divisors `d ≤ z`, the *flat* part the rest.
/// Both sums run over squarefree divisors only (μ vanishes elsewhere) and
/// always recombine to Λ(n) exactly.
pub fn lambda_split(table: &LambdaTable, n: u64, z: u64) -> (f64, f64) {
    assert!(n >= 1 && n <= table.x_max(), "n beyond table range");
    let primes = table.distinct_primes(n);
    let mut sharp = 0.0;
    let mut flat = 0.0;
    // Squarefree divisors = subsets of the distinct primes.
    let count = 1usize << primes.len();
    for mask in 0..count {
        let mut d = 1u64;
        let mut bits = 0u32;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
                bits += 1;
            }
        }
        let sign = if bits % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * ((n / d) as f64).ln();
        if d <= z {
            sharp += term;
        } else {
            flat += term;
        }
    }
    (sharp, flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table() -> LambdaTable {
        LambdaTable::build(10_000).unwrap()
    }

    #[test]
    fn lambda_values_on_prime_powers() {
        let t = table();
        assert_eq!(t.lambda(2), 2f64.ln());
        assert_eq!(t.lambda(7), 7f64.ln());
        assert_eq!(t.lambda(8), 2f64.ln());
        assert_eq!(t.lambda(9), 3f64.ln());
        assert_eq!(t.lambda(9973), 9973f64.ln()); // largest prime below 10^4
        assert_eq!(t.lambda(1), 0.0);
        assert_eq!(t.lambda(12), 0.0);
        assert_eq!(t.lambda(100), 0.0);
    }

    #[test]
    fn mobius_values() {
        let t = table();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mu(2), -1);
        assert_eq!(t.mu(6), 1);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.mu(30), -1);
        assert_eq!(t.mu(210), 1);
        // Frozen: Mertens sum over [1, 100] is 1.
        let mertens: i64 = (1..=100u64).map(|n| t.mu(n) as i64).sum();
        assert_eq!(mertens, 1);
    }

    #[test]
    fn totient_values() {
        let t = table();
        assert_eq!(t.phi(1), 1);
        assert_eq!(t.phi(10), 4);
        assert_eq!(t.phi(100), 40);
        assert_eq!(t.phi(9973), 9972);
        // Frozen: Σ φ(n) over [1, 100] = 3044.
        let s: u64 = (1..=100u64).map(|n| t.phi(n) as u64).sum();
        assert_eq!(s, 3044);
    }

    #[test]
    fn prime_bitset_and_spf() {
        let t = table();
        assert!(t.is_prime(2) && t.is_prime(3) && t.is_prime(9973));
        assert!(!t.is_prime(1) && !t.is_prime(9999));
        assert_eq!(t.spf(9999), 3);
        assert_eq!(t.spf(9973), 9973);
        assert_eq!(t.spf(2 * 3 * 5 * 7), 2);
        // π(10^4) = 1229.
        assert_eq!(t.primes().len(), 1229);
    }

    #[test]
    fn chebyshev_psi_frozen_value() {
        // Oracle: Σ_{n≤100} Λ(n) = 94.0453112293574.
        let t = table();
        assert!((t.chebyshev_psi(100) - 94.0453112293574).abs() < 1e-10);
    }

    #[test]
    fn prime_count_at_one_million() {
        // π(10^6) = 78498.
        let t = LambdaTable::build(1_000_000).unwrap();
        assert_eq!(t.primes().len(), 78498);
        // ψ(x) ~ x: within 0.1% at 10^6.
        let psi = t.chebyshev_psi(1_000_000);
        assert!((psi / 1.0e6 - 1.0).abs() < 1e-3, "psi(1e6) = {psi}");
    }

    #[test]
    fn split_recombines_to_lambda() {
        let t = table();
        // Frozen: n = 360, z = 6 → sharp = −4.27666611901606, flat cancels it.
        let (sharp, flat) = lambda_split(&t, 360, 6);
        assert!((sharp - (-4.27666611901606)).abs() < 1e-12);
        assert!((sharp + flat - t.lambda(360)).abs() < 1e-12);
        // Frozen: n = 128, z = 10 → sharp = log 2, flat = 0 (divisors 1, 2).
        let (sharp, flat) = lambda_split(&t, 128, 10);
        assert!((sharp - 2f64.ln()).abs() < 1e-12);
        assert_eq!(flat, 0.0);
    }

    #[test]
    fn budget_refusal() {
        match LambdaTable::build_with_budget(1 << 30, 1024) {
            Err(Error::Capacity(_)) => {}
            other => panic!("expected capacity refusal, got {:?}", other.map(|t| t.x_max())),
        }
    }

    #[test]
    fn cache_round_trip_is_bit_exact() {
        let t = LambdaTable::build(5000).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tables.bglt");
        t.write_cache(&path).unwrap();
        let r = LambdaTable::read_cache(&path).unwrap();
        assert_eq!(r.x_max(), t.x_max());
        for n in 0..=5000u64 {
            assert_eq!(r.lambda(n).to_bits(), t.lambda(n).to_bits(), "lambda at {n}");
            assert_eq!(r.mu(n), t.mu(n), "mu at {n}");
            assert_eq!(r.phi(n), t.phi(n), "phi at {n}");
            assert_eq!(r.spf(n), t.spf(n), "spf at {n}");
            assert_eq!(r.is_prime(n), t.is_prime(n), "primality at {n}");
        }
    }

    #[test]
    fn cache_rejects_corruption() {
        let t = LambdaTable::build(100).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tables.bglt");
        t.write_cache(&path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        // Bad magic.
        let mut broken = bytes.clone();
        broken[0] = b'X';
        std::fs::write(&path, &broken).unwrap();
        assert!(matches!(LambdaTable::read_cache(&path), Err(Error::CacheFormat(_))));
        // Bad version.
        let mut broken = bytes.clone();
        broken[4] = 99;
        std::fs::write(&path, &broken).unwrap();
        assert!(matches!(LambdaTable::read_cache(&path), Err(Error::CacheFormat(_))));
        // Truncated payload.
        let mut broken = bytes.clone();
        broken.truncate(broken.len() - 3);
        std::fs::write(&path, &broken).unwrap();
        assert!(LambdaTable::read_cache(&path).is_err());
        // Trailing garbage.
        bytes.push(0);
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(LambdaTable::read_cache(&path), Err(Error::CacheFormat(_))));
    }

    proptest! {
        #[test]
        fn split_identity_holds_everywhere(n in 2u64..5000, z in 1u64..5000) {
            let t = table();
            let (sharp, flat) = lambda_split(&t, n, z);
            prop_assert!((sharp + flat - t.lambda(n)).abs() < 1e-9,
                "n={n} z={z}: {sharp} + {flat} != {}", t.lambda(n));
        }

        #[test]
        fn phi_is_multiplicative_on_coprime_pairs(a in 2u64..90, b in 2u64..90) {
            let t = table();
            if num_integer::gcd(a, b) == 1 {
                prop_assert_eq!(t.phi(a * b), t.phi(a) * t.phi(b));
            }
        }

        #[test]
        fn mu_squarefree_parity(n in 2u64..9000) {
            let t = table();
            let primes = t.distinct_primes(n);
            let squarefree: u64 = primes.iter().product();
            if squarefree == n {
                let expect = if primes.len() % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(t.mu(n), expect);
            } else {
                prop_assert_eq!(t.mu(n), 0);
            }
        }
    }
}
