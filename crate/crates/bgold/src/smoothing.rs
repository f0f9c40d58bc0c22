//! Trapezoid smoothing of the membership window and its Fourier side.
//!
//! The raw window `w = 1_{(0,γ]}` has Fourier coefficients decaying like
//! `1/k`, too slowly for clean truncation arguments. Convolving with a box
//! of width Δ produces the trapezoid `Ψ = w * box_Δ`: identical to `w`
//! except on the two Δ-wide edge ramps, with coefficients
//!
//! ```text
//! Ψ̂(k) = e^{−iπkγ} · sin(πkγ)/(πk) · sin(πkΔ)/(πkΔ)
//! ```
//!
//! now bounded by `min(1/(π|k|), 1/(π²k²Δ))` — summable. Raising the
//! coefficients to the κ-th power gives the Fourier expansion of the κ-fold
//! self-convolution of Ψ, the smoothed counterpart of
//! [`crate::psi::PiecewisePoly`]; truncating at frequency `K` yields an
//! analytically controlled approximation whose tail is bounded by
//! [`SmoothedIndicator::truncation_tail_bound`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest admissible smoothing width.
pub const MAX_DELTA: f64 = 0.125;

/// The trapezoid mollifier `Ψ = 1_{(0,γ]} * box_Δ` on the circle.
#[derive(Clone, Copy, Debug)]
pub struct SmoothedIndicator {
    gamma: f64,
    delta: f64,
}

impl SmoothedIndicator {
    /// Requires `0 < γ < 1`, `0 < Δ ≤ 1/8`, and `Δ ≤ min(γ, 1−γ)/2` so the
    /// plateau survives and the ramps do not wrap into each other.
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 || gamma >= 1.0 {
            return Err(Error::BadArguments(format!("gamma={gamma} outside (0, 1)")));
        }
        if !delta.is_finite() || delta <= 0.0 || delta > MAX_DELTA {
            return Err(Error::BadArguments(format!("delta={delta} outside (0, {MAX_DELTA}]")));
        }
        if delta > gamma.min(1.0 - gamma) / 2.0 {
            return Err(Error::BadArguments(format!(
                "delta={delta} exceeds min(gamma, 1-gamma)/2 = {}",
                gamma.min(1.0 - gamma) / 2.0
            )));
        }
        Ok(SmoothedIndicator { gamma, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Direct evaluation: 0 → 1 ramp across `[−Δ/2, Δ/2]`, plateau 1 on
    /// `[Δ/2, γ−Δ/2]`, 1 → 0 ramp across `[γ−Δ/2, γ+Δ/2]`, 0 elsewhere.
    /// The range contract 0 ≤ Ψ ≤ 1 is exact: the ramp arithmetic is
    /// clamped, so seam rounding can never leak an ε outside.
    pub fn eval(&self, x: f64) -> f64 {
        let (g, d) = (self.gamma, self.delta);
        let t = x.rem_euclid(1.0);
        // Move the seam so the up-ramp is contiguous: u ∈ [−Δ/2, 1−Δ/2).
        let u = if t >= 1.0 - d / 2.0 { t - 1.0 } else { t };
        if u < d / 2.0 {
            ((u + d / 2.0) / d).clamp(0.0, 1.0)
        } else if u <= g - d / 2.0 {
            1.0
        } else if u < g + d / 2.0 {
            ((g + d / 2.0 - u) / d).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }

    /// The k-th Fourier coefficient `Ψ̂(k) = ∫₀¹ Ψ(x) e(−kx) dx`.
    pub fn fourier_coeff(&self, k: i64) -> Complex64 {
        if k == 0 {
            return Complex64::new(self.gamma, 0.0);
        }
        let kf = k as f64;
        let a = std::f64::consts::PI * kf * self.gamma;
        let b = std::f64::consts::PI * kf * self.delta;
        let window = Complex64::from_polar(a.sin() / (std::f64::consts::PI * kf), -a);
        window * (b.sin() / b)
    }

    /// Proven bound `|Ψ̂(k)| ≤ min(1/(π|k|), 1/(π²k²Δ))` for `k ≠ 0`
    /// (and γ for `k = 0`).
    pub fn coeff_bound(&self, k: i64) -> f64 {
        if k == 0 {
            return self.gamma;
        }
        let kf = k.unsigned_abs() as f64;
        let linear = 1.0 / (std::f64::consts::PI * kf);
        let quadratic = 1.0 / (std::f64::consts::PI.powi(2) * kf * kf * self.delta);
        linear.min(quadratic)
    }

    /// Partial Fourier sum `Σ_{|k| ≤ K} Ψ̂(k) e(kx)` (real by symmetry).
    pub fn truncated_eval(&self, big_k: u32, x: f64) -> f64 {
        self.truncated_conv_eval(big_k, 1, x)
    }

    /// The coefficients `Ψ̂(k)^κ` for `k = 0..=K` (negative frequencies are
    /// conjugates; callers double the real part).
    pub fn conv_coeffs(&self, big_k: u32, kappa: u32) -> Vec<Complex64> {
        (0..=big_k as i64)
            .map(|k| self.fourier_coeff(k).powu(kappa))
            .collect()
    }

    /// Truncated Fourier expansion of the κ-fold self-convolution of Ψ:
    /// `Σ_{|k| ≤ K} Ψ̂(k)^κ e(kx)`.
    pub fn truncated_conv_eval(&self, big_k: u32, kappa: u32, x: f64) -> f64 {
        let coeffs = self.conv_coeffs(big_k, kappa);
        truncated_eval_with(&coeffs, x)
    }

    /// Upper bound on the discarded tail `Σ_{|k| > K} |Ψ̂(k)|^κ`, hence on
    /// the truncation error of [`SmoothedIndicator::truncated_conv_eval`]
    /// uniformly in x. Sums the per-coefficient bound explicitly for a
    /// stretch past K, then closes with the integral estimate.
    pub fn truncation_tail_bound(&self, big_k: u32, kappa: u32) -> f64 {
        let explicit_until = big_k as u64 + 20_000;
        let mut s = 0.0;
        for k in big_k as u64 + 1..=explicit_until {
            s += self.coeff_bound(k as i64).powi(kappa as i32);
        }
        // Beyond: |Ψ̂(k)|^κ ≤ (π²Δ)^{−κ} k^{−2κ}, and Σ_{k>M} k^{−2κ} ≤
        // M^{1−2κ}/(2κ−1).
        let c = 1.0 / (std::f64::consts::PI.powi(2) * self.delta);
        let m = explicit_until as f64;
        s += c.powi(kappa as i32) * m.powi(1 - 2 * kappa as i32) / (2.0 * kappa as f64 - 1.0);
        2.0 * s
    }
}

/// Evaluate `c[0] + Σ_{k=1}^{K} 2·Re(c[k] e(kx))` given coefficients for
/// the non-negative frequencies.
pub fn truncated_eval_with(coeffs: &[Complex64], x: f64) -> f64 {
    let mut s = coeffs.first().map(|c| c.re).unwrap_or(0.0);
    let step = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
    let mut phase = Complex64::new(1.0, 0.0);
    for c in &coeffs[1..] {
        phase *= step;
        s += 2.0 * (c * phase).re;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const GOLDEN_INV: f64 = 0.6180339887498949;

    fn golden() -> SmoothedIndicator {
        SmoothedIndicator::new(GOLDEN_INV, 1.0 / 40.0).unwrap()
    }

    #[test]
    fn direct_evaluation_piecewise_shape() {
        let s = golden();
        // Frozen: on the up-ramp, Ψ(0.01) = (0.01 + 0.0125)/0.025 = 0.9.
        assert!((s.eval(0.01) - 0.9).abs() < 1e-12);
        assert_eq!(s.eval(GOLDEN_INV / 2.0), 1.0); // plateau
        assert_eq!(s.eval(0.9), 0.0); // outside
        assert!((s.eval(0.0) - 0.5).abs() < 1e-12); // kink midpoint
        assert!((s.eval(GOLDEN_INV) - 0.5).abs() < 1e-12);
        // ramps meet the window: Ψ = w off the Δ/2-neighborhoods of {0, γ}
        assert_eq!(s.eval(0.05), 1.0);
        assert_eq!(s.eval(GOLDEN_INV + 0.05), 0.0);
        // periodic
        assert_eq!(s.eval(1.3), s.eval(0.3));
        assert_eq!(s.eval(-0.7), s.eval(0.3));
    }

    #[test]
    fn validation_rejects_bad_widths() {
        assert!(SmoothedIndicator::new(0.5, 0.0).is_err());
        assert!(SmoothedIndicator::new(0.5, 0.2).is_err()); // > 1/8
        assert!(SmoothedIndicator::new(0.95, 0.05).is_err()); // > (1−γ)/2
        assert!(SmoothedIndicator::new(0.06, 0.05).is_err()); // > γ/2
        assert!(SmoothedIndicator::new(1.0, 0.01).is_err());
        assert!(SmoothedIndicator::new(0.5, 0.1).is_ok());
    }

    #[test]
    fn zeroth_coefficient_is_the_mass() {
        let s = golden();
        let c0 = s.fourier_coeff(0);
        assert_eq!(c0.re, GOLDEN_INV);
        assert_eq!(c0.im, 0.0);
        // Numeric mass check: trapezoid quadrature of Ψ over [0,1).
        let n = 200_000;
        let mut mass = 0.0;
        for i in 0..n {
            mass += s.eval(i as f64 / n as f64);
        }
        mass /= n as f64;
        assert!((mass - GOLDEN_INV).abs() < 1e-6);
    }

    #[test]
    fn frozen_fifth_coefficient() {
        // Oracle: Ψ̂(5) = 0.016648848328956384 − 0.004846578050359434 i.
        let c = golden().fourier_coeff(5);
        assert!((c.re - 0.016648848328956384).abs() < 1e-15);
        assert!((c.im - (-0.004846578050359434)).abs() < 1e-15);
    }

    #[test]
    fn coefficient_vanishes_at_box_harmonics() {
        // sin(πkΔ) = 0 at k = 1/Δ: the box factor kills those frequencies.
        let s = golden();
        assert!(s.fourier_coeff(40).norm() < 1e-17);
        assert!(s.fourier_coeff(80).norm() < 1e-17);
    }

    #[test]
    fn fourier_coeffs_match_quadrature() {
        let s = golden();
        for k in [1i64, 2, 3, 7, 13] {
            let n = 400_000;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let x = i as f64 / n as f64;
                acc += s.eval(x) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 * x);
            }
            acc /= n as f64;
            let c = s.fourier_coeff(k);
            assert!((acc - c).norm() < 1e-6, "k={k}: {acc} vs {c}");
        }
    }

    #[test]
    fn truncation_error_stays_below_tail_bound() {
        let s = golden();
        for big_k in [10u32, 40, 160] {
            let bound = s.truncation_tail_bound(big_k, 1);
            for i in 0..200 {
                let x = i as f64 / 200.0;
                let err = (s.truncated_eval(big_k, x) - s.eval(x)).abs();
                assert!(err <= bound, "K={big_k} x={x}: err {err} > bound {bound}");
            }
        }
    }

    #[test]
    fn frozen_truncated_values() {
        let s = golden();
        // Oracle values for K = 40.
        let at_mid = s.truncated_eval(40, GOLDEN_INV / 2.0);
        assert!((at_mid - 0.9998847987043197).abs() < 1e-12, "{at_mid}");
        let outside = s.truncated_eval(40, 0.9);
        assert!((outside - 2.447671020576911e-06).abs() < 1e-12, "{outside}");
        // κ = 3 convolution power at K = 200.
        let conv = s.truncated_conv_eval(200, 3, 0.5);
        assert!((conv - 0.18785035125095073).abs() < 1e-12, "{conv}");
    }

    #[test]
    fn tail_bound_shrinks_rapidly_with_kappa() {
        let s = golden();
        let t1 = s.truncation_tail_bound(100, 1);
        let t2 = s.truncation_tail_bound(100, 2);
        let t3 = s.truncation_tail_bound(100, 3);
        assert!(t2 < t1 / 10.0 && t3 < t2 / 10.0, "{t1} {t2} {t3}");
    }

    proptest! {
        #[test]
        fn coeff_bound_is_respected(k in 1i64..3000) {
            let s = golden();
            prop_assert!(s.fourier_coeff(k).norm() <= s.coeff_bound(k) * (1.0 + 1e-12));
        }

        #[test]
        fn negative_frequencies_conjugate(k in 1i64..500) {
            let s = golden();
            let c = s.fourier_coeff(k);
            let cm = s.fourier_coeff(-k);
            prop_assert!((c.conj() - cm).norm() < 1e-15);
        }

        #[test]
        fn sandwiched_between_shifted_windows(x in 0.0f64..1.0) {
            // 1 on (Δ/2, γ−Δ/2] forces Ψ=1; outside (−Δ/2, γ+Δ/2) forces 0;
            // in between Ψ ∈ [0,1].
            let s = golden();
            let v = s.eval(x);
            prop_assert!((0.0..=1.0).contains(&v));
            let (g, d) = (s.gamma(), s.delta());
            if x > d/2.0 && x <= g - d/2.0 {
                prop_assert_eq!(v, 1.0);
            }
            if x >= g + d/2.0 && x <= 1.0 - d/2.0 {
                prop_assert_eq!(v, 0.0);
            }
        }

        #[test]
        fn order_one_conv_equals_plain_truncation(x in 0.0f64..1.0, big_k in 1u32..60) {
            let s = golden();
            let a = s.truncated_eval(big_k, x);
            let b = s.truncated_conv_eval(big_k, 1, x);
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
