//! Beatty sequences `⌊α·m + β⌋` and their certified membership test.
//!
//! For α > 1 and real β, the generalized Beatty sequence visits
//! `⌊α·m + β⌋` for `m = 1, 2, 3, …`. Writing `γ = 1/α` and `δ = γ·(1 − β)`,
//! a positive integer `n` belongs to the sequence exactly when the
//! fractional part `{γ·n + δ}` lands in the half-open window `(0, γ]`
//! (for `0 ≤ β < 1`; see [`BeattyConfig::contains`] for the fine print).
//! That window test is what everything downstream uses — it is O(1) per
//! query and certified by the fixed-point machinery in
//! [`crate::irrational`], so a membership answer is never a rounding guess.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::irrational::{AffineFrac, CertifiedFrac, IrrationalSpec, Ratio};

/// A Beatty sequence `⌊α·m + β⌋` with certified membership queries.
#[derive(Clone, Debug)]
pub struct BeattyConfig {
    alpha: IrrationalSpec,
    beta: Ratio,
    /// Evaluator for `{γ·n + (1−β)·γ}`, whose `(0, γ]` window decides
    /// membership.
    membership: AffineFrac,
}

impl BeattyConfig {
    /// Configure the sequence for a slope spec `alpha` (value must exceed 1)
    /// and exact rational intercept `beta`.
    pub fn new(alpha: IrrationalSpec, beta: Ratio) -> Result<Self> {
        let b = Ratio::one() - &beta;
        let membership = AffineFrac::from_alpha_inverse(&alpha, Ratio::zero(), b)?;
        Ok(BeattyConfig { alpha, beta, membership })
    }

    /// The slope spec α.
    pub fn alpha_spec(&self) -> &IrrationalSpec {
        &self.alpha
    }

    /// The intercept β.
    pub fn beta(&self) -> &Ratio {
        &self.beta
    }

    /// Whether α is an exact rational (`cf:`/`dec:` spec). Rational slopes
    /// make the sequence periodic modulo the denominator, which changes its
    /// arithmetic character completely; callers that rely on
    /// equidistribution should gate on this.
    pub fn is_rational_alpha(&self) -> bool {
        self.alpha.is_rational()
    }

    /// α as a plain double (reporting only).
    pub fn alpha_f64(&self) -> f64 {
        self.alpha.approx_f64()
    }

    /// γ = 1/α as a plain double (reporting only).
    pub fn gamma_f64(&self) -> f64 {
        self.membership.gamma_f64()
    }

    /// δ = {γ·(1−β)} as a plain double (reporting only).
    pub fn delta_f64(&self) -> f64 {
        self.membership.offset_f64()
    }

    /// Certified membership: `n ≥ 1` is a term of the sequence iff
    /// `0 < {γ·n + δ} ≤ γ`.
    ///
    /// For `0 ≤ β < 1` this window test coincides exactly with
    /// `n ∈ {⌊α·m + β⌋ : m ≥ 1}`; for β outside `[0, 1)` it still describes
    /// the set `{⌊α·m + β⌋ : m ∈ ℤ} ∩ [1, ∞)` (finitely many boundary terms
    /// may differ).
    pub fn contains(&self, n: u64) -> Result<bool> {
        if n == 0 {
            return Err(Error::BadArguments("membership is defined for n >= 1".into()));
        }
        self.membership.in_unit_gamma_window(n)
    }

    /// The membership fractional part `{γ·n + δ}` with certified radius.
    pub fn membership_frac(&self, n: u64) -> Result<CertifiedFrac> {
        self.membership.eval(n)
    }

    /// Evaluator for `{γ·n + a + b·γ}` sharing this sequence's γ; used for
    /// main-term arguments (`a = 0, b = κ(1−β)`) and no-representation
    /// witnesses (`a = 0, b = −κβ`).
    pub fn affine(&self, a: Ratio, b: Ratio) -> Result<AffineFrac> {
        AffineFrac::from_alpha_inverse(&self.alpha, a, b)
    }

    /// All sequence terms in `[1, x_max]`, by filtering the certified
    /// membership window over every candidate.
    pub fn generate_up_to(&self, x_max: u64) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity((x_max as f64 * self.gamma_f64()) as usize + 2);
        for n in 1..=x_max {
            if self.contains(n)? {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// The literal floor values `⌊α·m + β⌋` for `m = 1..=m_count`, each
    /// certified by enclosure refinement. This is the defining enumeration;
    /// [`BeattyConfig::generate_up_to`] must produce the same set (a
    /// property the tests pin down).
    pub fn floor_terms(&self, m_count: u64) -> Result<Vec<BigInt>> {
        if let Some(alpha) = self.alpha.exact_value() {
            let mut out = Vec::with_capacity(m_count as usize);
            for m in 1..=m_count {
                let v = alpha * Ratio::from_integer(BigInt::from(m)) + &self.beta;
                out.push(v.floor().to_integer());
            }
            return Ok(out);
        }
        let mut bits = 192u32;
        'retry: loop {
            let (lo, hi) = self.alpha.enclosure(bits)?;
            let mut out = Vec::with_capacity(m_count as usize);
            for m in 1..=m_count {
                let mr = Ratio::from_integer(BigInt::from(m));
                let vlo = (&lo * &mr + &self.beta).floor();
                let vhi = (&hi * &mr + &self.beta).floor();
                if vlo != vhi {
                    bits = bits.checked_mul(2).filter(|&b| b <= 1 << 13).ok_or_else(|| {
                        Error::Ambiguity(format!("cannot certify floor of alpha*{m}+beta"))
                    })?;
                    continue 'retry;
                }
                out.push(vlo.to_integer());
            }
            return Ok(out);
        }
    }
}

/// Successive gaps of a strictly increasing sequence.
pub fn gaps(terms: &[u64]) -> Vec<u64> {
    terms.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Fraction of `[1, x_max]` covered by the given terms (for density
/// reporting; a Beatty sequence with slope α covers ≈ 1/α).
pub fn coverage_fraction(terms: &[u64], x_max: u64) -> f64 {
    if x_max == 0 {
        return 0.0;
    }
    terms.iter().filter(|&&t| t >= 1 && t <= x_max).count() as f64 / x_max as f64
}
