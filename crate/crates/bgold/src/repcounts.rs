//! Weighted representation counts over a Beatty sequence.
//!
//! For a sequence B = B_{α,β} and κ ≥ 2, the central object is
//!
//! ```text
//! G_κ(N) = Σ_{n₁+⋯+n_κ = N, all n_i ∈ B} Λ(n₁)⋯Λ(n_κ)
//! ```
//!
//! summed over *ordered* compositions, together with the prime-only count
//! R_κ(N) (ordered κ-tuples of primes in B summing to N) and the predicted
//! main term ψ^(κ)({γN+κδ})·𝔖_κ(N)·N^{κ−1}/(κ−1)!.
//!
//! Two computation routes are provided and tested against each other: a
//! direct nested-loop oracle ([`gk_naive`]) and an FFT bulk evaluator
//! ([`gk_bulk`]) that computes all N ≤ x_max at once by raising the weighted
//! indicator's transform to the κ-th power with enough zero padding that no
//! wraparound can occur.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::beatty::BeattyConfig;
use crate::error::{Error, Result};
use crate::irrational::{AffineFrac, Ratio};
use crate::mangoldt::LambdaTable;
use crate::psi::PiecewisePoly;
use crate::singular::SingularValue;
use crate::util::balanced_sum;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Which arithmetic weight sits on the sequence terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// von Mangoldt weights Λ(n) (prime powers included, with log weights).
    Lambda,
    /// 0/1 indicator of primes (prime powers excluded).
    PrimeOnly,
}

/// Per-integer weights `w[n] = weight(n)·1_B(n)` up to a bound, with the
/// nonzero positions kept separately for sparse loops.
pub struct WeightedIndicator {
    x_max: u64,
    mode: WeightMode,
    weights: Vec<f64>,
    support: Vec<u32>,
}

impl WeightedIndicator {
    /// Evaluate the weights for `1 ≤ n ≤ x_max`. Every potential support
    /// point (Λ(n) > 0, or n prime in prime-only mode) gets a certified
    /// membership test.
    pub fn build(
        cfg: &BeattyConfig,
        table: &LambdaTable,
        x_max: u64,
        mode: WeightMode,
    ) -> Result<Self> {
        if x_max < 1 || x_max > table.x_max() {
            return Err(Error::BadArguments(format!(
                "weight bound {x_max} outside the sieve range [1, {}]",
                table.x_max()
            )));
        }
        if x_max >= u32::MAX as u64 {
            return Err(Error::Capacity(format!("weight bound {x_max} exceeds the index budget")));
        }
        let mut weights = vec![0.0f64; x_max as usize + 1];
        let mut support = Vec::new();
        for n in 1..=x_max {
            let w = match mode {
                WeightMode::Lambda => table.lambda(n),
                WeightMode::PrimeOnly => {
                    if table.is_prime(n) {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            if w > 0.0 && cfg.contains(n)? {
                weights[n as usize] = w;
                support.push(n as u32);
            }
        }
        Ok(WeightedIndicator { x_max, mode, weights, support })
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    /// The weight of `n` (0 beyond the built range).
    pub fn weight(&self, n: u64) -> f64 {
        self.weights.get(n as usize).copied().unwrap_or(0.0)
    }

    /// Dense weight array, indexed by n (entry 0 is 0).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Ascending list of n with nonzero weight.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// `Σ_n w[n]`, tree-summed. For an equidistributed slope this tracks
    /// γ·x_max (sequence density × prime-counting) within a few percent at
    /// desk scale.
    pub fn total_mass(&self) -> f64 {
        let terms: Vec<f64> = self.support.iter().map(|&n| self.weights[n as usize]).collect();
        balanced_sum(&terms)
    }
}

/// A table of representation counts for all `N ≤ x_max`.
pub struct RepCountTable {
    pub kappa: u32,
    pub x_max: u64,
    pub mode: WeightMode,
    /// `counts[N]` for `0 ≤ N ≤ x_max`; entries below 2κ are exactly 0
    /// (the smallest weighted integer is 2).
    pub counts: Vec<f64>,
}

impl RepCountTable {
    pub fn count(&self, n: u64) -> f64 {
        self.counts[n as usize]
    }
}

fn validate_kappa(kappa: u32) -> Result<()> {
    if !(2..=4).contains(&kappa) {
        return Err(Error::BadArguments(format!("representation counts support kappa in 2..=4, got {kappa}")));
    }
    Ok(())
}

/// Largest `n` the nested-loop oracle accepts, per order.
pub fn naive_budget(kappa: u32) -> u64 {
    match kappa {
        2 => 200_000,
        3 => 20_000,
        4 => 3_000,
        _ => 0,
    }
}

/// Largest `x_max` the bulk convolution accepts, per order.
pub fn bulk_budget(kappa: u32) -> u64 {
    match kappa {
        2 => 2_000_000,
        3 => 500_000,
        4 => 100_000,
        _ => 0,
    }
}

/// Direct evaluation of G_κ(n) by looping over ordered compositions with
/// all parts on the weighted support. Builds the indicator internally; use
/// [`gk_naive_with`] to amortize that over many targets.
pub fn gk_naive(cfg: &BeattyConfig, kappa: u32, n: u64, table: &LambdaTable) -> Result<f64> {
    validate_kappa(kappa)?;
    if n < 1 || n > table.x_max() {
        return Err(Error::BadArguments(format!("target {n} outside the sieve range [1, {}]", table.x_max())));
    }
    if n > naive_budget(kappa) {
        return Err(Error::Capacity(format!(
            "target {n} beyond the nested-loop budget {} for kappa={kappa}; use the bulk evaluator",
            naive_budget(kappa)
        )));
    }
    let ind = WeightedIndicator::build(cfg, table, n.max(2), WeightMode::Lambda)?;
    gk_naive_with(&ind, kappa, n)
}

/// [`gk_naive`] against a prebuilt indicator (which must cover `n−1`).
/// The composition loop enumerates the first κ−1 parts over the ascending
/// support with early exit once the partial sum reaches `n`, then reads off
/// the forced last part; terms are tree-summed in enumeration order, so the
/// result is deterministic.
pub fn gk_naive_with(ind: &WeightedIndicator, kappa: u32, n: u64) -> Result<f64> {
    validate_kappa(kappa)?;
    if ind.mode != WeightMode::Lambda {
        return Err(Error::BadArguments("the weighted count needs log-weighted indicators".into()));
    }
    if n < 1 {
        return Err(Error::BadArguments("target n must be >= 1".into()));
    }
    if n > ind.x_max + 1 {
        return Err(Error::BadArguments(format!(
            "target {n} needs weights up to {}, indicator stops at {}",
            n - 1,
            ind.x_max
        )));
    }
    let w = &ind.weights;
    let sup = &ind.support;
    let mut terms: Vec<f64> = Vec::new();
    match kappa {
        2 => {
            for &s in sup {
                let s = s as u64;
                if s >= n {
                    break;
                }
                let t = w[s as usize] * w[(n - s) as usize];
                if t != 0.0 {
                    terms.push(t);
                }
            }
        }
        3 => {
            for &s1 in sup {
                let s1 = s1 as u64;
                if s1 + 1 >= n {
                    break;
                }
                for &s2 in sup {
                    let s2 = s2 as u64;
                    if s1 + s2 >= n {
                        break;
                    }
                    let t = w[s1 as usize] * w[s2 as usize] * w[(n - s1 - s2) as usize];
                    if t != 0.0 {
                        terms.push(t);
                    }
                }
            }
        }
        4 => {
            for &s1 in sup {
                let s1 = s1 as u64;
                if s1 + 2 >= n {
                    break;
                }
                for &s2 in sup {
                    let s2 = s2 as u64;
                    if s1 + s2 + 1 >= n {
                        break;
                    }
                    for &s3 in sup {
                        let s3 = s3 as u64;
                        if s1 + s2 + s3 >= n {
                            break;
                        }
                        let t = w[s1 as usize]
                            * w[s2 as usize]
                            * w[s3 as usize]
                            * w[(n - s1 - s2 - s3) as usize];
                        if t != 0.0 {
                            terms.push(t);
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(balanced_sum(&terms))
}

/// κ-fold additive self-convolution of a weight array via FFT, returning
/// indices `0..keep_len`. The transform length is padded past the full
/// support (κ·(len−1)) so cyclic wraparound cannot alias any coefficient.
pub fn convolve_power(weights: &[f64], kappa: u32, keep_len: usize) -> Result<Vec<f64>> {
    if !(2..=4).contains(&kappa) {
        return Err(Error::BadArguments(format!("convolution power must be in 2..=4, got {kappa}")));
    }
    if weights.is_empty() {
        return Err(Error::BadArguments("empty weight array".into()));
    }
    let full = kappa as usize * (weights.len() - 1) + 1;
    let len = full.next_power_of_two();
    if len > 1 << 24 {
        return Err(Error::Capacity(format!(
            "transform length {len} exceeds the 2^24 budget; shrink x_max or kappa"
        )));
    }
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(len);
    buf.extend(weights.iter().map(|&w| Complex::new(w, 0.0)));
    buf.resize(len, Complex::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for v in buf.iter_mut() {
        *v = v.powu(kappa);
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    let keep = keep_len.min(full);
    let mut out = Vec::with_capacity(keep);
    for v in buf.iter().take(keep) {
        let re = v.re * scale;
        debug_assert!(re > -1e-3, "convolution entry {re} too negative for rounding noise");
        out.push(if re < 0.0 { 0.0 } else { re });
    }
    Ok(out)
}

fn bulk_table(
    cfg: &BeattyConfig,
    kappa: u32,
    x_max: u64,
    table: &LambdaTable,
    mode: WeightMode,
) -> Result<RepCountTable> {
    validate_kappa(kappa)?;
    if x_max < 1 {
        return Err(Error::BadArguments("x_max must be >= 1".into()));
    }
    if x_max > bulk_budget(kappa) {
        return Err(Error::Capacity(format!(
            "x_max {x_max} beyond the bulk budget {} for kappa={kappa}",
            bulk_budget(kappa)
        )));
    }
    let ind = WeightedIndicator::build(cfg, table, x_max.max(2), mode)?;
    let mut counts = convolve_power(&ind.weights, kappa, x_max as usize + 1)?;
    counts.resize(x_max as usize + 1, 0.0);
    // Entries below 2κ are exactly zero (every weighted integer is ≥ 2);
    // pin them down rather than keeping rounding dust.
    for c in counts.iter_mut().take((2 * kappa as usize).min(x_max as usize + 1)) {
        *c = 0.0;
    }
    if mode == WeightMode::PrimeOnly {
        for (n, c) in counts.iter_mut().enumerate() {
            let rounded = c.round();
            if (*c - rounded).abs() > 1e-3 {
                return Err(Error::Capacity(format!(
                    "prime-count convolution at N={n} drifted {:.2e} from an integer",
                    (*c - rounded).abs()
                )));
            }
            *c = rounded;
        }
    }
    Ok(RepCountTable { kappa, x_max, mode, counts })
}

/// All G_κ(N) for `N ≤ x_max` by FFT self-convolution of the Λ-weighted
/// indicator. Matches [`gk_naive`] to ~10⁻⁹ relative at desk scale.
pub fn gk_bulk(cfg: &BeattyConfig, kappa: u32, x_max: u64, table: &LambdaTable) -> Result<RepCountTable> {
    bulk_table(cfg, kappa, x_max, table, WeightMode::Lambda)
}

/// All R_κ(N) for `N ≤ x_max`: ordered κ-tuples of *primes* (prime powers
/// excluded) on the sequence summing to N. Convolution of a 0/1 indicator,
/// so the outputs are integers; they are rounded and the rounding slack is
/// checked.
pub fn rk_prime_count(
    cfg: &BeattyConfig,
    kappa: u32,
    x_max: u64,
    table: &LambdaTable,
) -> Result<RepCountTable> {
    bulk_table(cfg, kappa, x_max, table, WeightMode::PrimeOnly)
}

/// The predicted main term `ψ^(κ)({γn+κδ})·𝔖_κ(n)·n^{κ−1}/(κ−1)!`.
///
/// `poly` must be the κ-fold window convolution for this sequence's γ, and
/// `sing` the local-density value for (κ, n). The fractional argument is
/// evaluated with certified arithmetic.
pub fn main_term(
    cfg: &BeattyConfig,
    kappa: u32,
    n: u64,
    poly: &PiecewisePoly,
    sing: &SingularValue,
) -> Result<f64> {
    validate_kappa(kappa)?;
    if poly.kappa() != kappa {
        return Err(Error::BadArguments(format!(
            "window convolution is order {}, expected {kappa}",
            poly.kappa()
        )));
    }
    if (poly.gamma() - cfg.gamma_f64()).abs() > 1e-12 {
        return Err(Error::BadArguments("window convolution built for a different slope".into()));
    }
    if sing.kappa != kappa || sing.n != n {
        return Err(Error::BadArguments(format!(
            "local density is for (kappa={}, n={}), expected ({kappa}, {n})",
            sing.kappa, sing.n
        )));
    }
    // {γn + κδ} = {γ·(n) + κ(1−β)·γ}.
    let arg = main_term_argument(cfg, kappa)?.eval(n)?.value;
    Ok(main_term_from_arg(kappa, n, poly, sing.value, arg))
}

/// Evaluator for the main-term fractional argument `{γn + κδ}`; build once
/// and reuse when sweeping many targets.
pub fn main_term_argument(cfg: &BeattyConfig, kappa: u32) -> Result<AffineFrac> {
    validate_kappa(kappa)?;
    let b = Ratio::from_integer(BigInt::from(kappa)) * (Ratio::one() - cfg.beta());
    cfg.affine(Ratio::zero(), b)
}

/// The main-term product from an already-evaluated fractional argument
/// (no cross-validation; see [`main_term`] for the checked entry point).
pub fn main_term_from_arg(kappa: u32, n: u64, poly: &PiecewisePoly, sing_value: f64, arg: f64) -> f64 {
    if sing_value == 0.0 {
        return 0.0;
    }
    let psi_val = poly.eval(arg);
    let mut scale = 1.0f64;
    for j in 1..kappa {
        scale *= n as f64 / j as f64;
    }
    psi_val * sing_value * scale
}

/// Evaluator for the no-representation window of order κ; reuse it across
/// many targets (building one runs the slope enclosure machinery).
pub fn witness_window(cfg: &BeattyConfig, kappa: u32) -> Result<AffineFrac> {
    validate_kappa(kappa)?;
    let b = -(Ratio::from_integer(BigInt::from(kappa)) * cfg.beta());
    cfg.affine(Ratio::zero(), b)
}

/// True iff `{(n − κβ)/α}` lies in the open interval `(0, 1 − κ/α)` — in
/// which case no κ-term representation from the sequence can exist: summing
/// the defining inequalities for κ terms traps `{(n−κβ)γ}` in `[1−κγ, 1)`
/// mod 1. Returns false whenever the interval is empty (α ≤ κ). Certified;
/// an ambiguity error means the fractional part sits within 2⁻⁹⁰ of an edge.
pub fn no_representation_witness(cfg: &BeattyConfig, kappa: u32, n: u64) -> Result<bool> {
    if n < 1 {
        return Err(Error::BadArguments("witness test needs n >= 1".into()));
    }
    witness_window(cfg, kappa)?.in_open_upper_window(n, kappa)
}
