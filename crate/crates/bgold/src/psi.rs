//! The κ-fold periodic self-convolution of the membership window.
//!
//! Let `w = 1_{(0,γ]}` on the circle ℝ/ℤ. Its κ-fold convolution
//! `ψ⁽ᵏ⁾ = w * w * … * w` is the density that weights how often a sum of κ
//! fractional parts from the window lands at a given point; it multiplies
//! the main term of every κ-term representation count. This module builds
//! `ψ⁽ᵏ⁾` exactly as a piecewise polynomial via the integral recurrence
//!
//! ```text
//! ψ⁽ᵏ⁺¹⁾(x) = ∫_{x−γ}^{x} ψ⁽ᵏ⁾(t) dt      (integral over the circle)
//! ```
//!
//! rather than from the alternating truncated-power closed form, which
//! cancels catastrophically for larger κ. The closed form survives as a
//! test oracle.
//!
//! Structure facts pinned by the tests:
//!
//! * total mass `∫ψ⁽ᵏ⁾ = γᵏ`;
//! * symmetry about `κγ/2`;
//! * if `κγ < 1`, `ψ⁽ᵏ⁾` vanishes on `(κγ, 1]` and equals the pure power
//!   `x^{κ−1}/(κ−1)!` on `(0, γ]`;
//! * at the critical multiplicity `κ = ⌈1/γ⌉` the minimum over the whole
//!   circle is exactly `(κγ−1)^{κ−1} / (2^{κ−2}·(κ−1)!)`, attained at
//!   `(κγ−1)/2` ([`sharp_lower_bound`]).

use crate::error::{Error, Result};

/// Maximum supported convolution order.
pub const MAX_KAPPA: u32 = 64;

/// A piecewise-polynomial function on `[0, 1)` (the circle), produced by
/// repeated window convolution.
#[derive(Clone, Debug)]
pub struct PiecewisePoly {
    kappa: u32,
    gamma: f64,
    /// Sorted breakpoints, starting at 0.0 and ending at 1.0.
    breakpoints: Vec<f64>,
    /// Piece `i` covers `[breakpoints[i], breakpoints[i+1])`; coefficients
    /// are in the local variable `t = x − breakpoints[i]`.
    coeffs: Vec<Vec<f64>>,
}

/// Result of a global minimum search over the circle.
#[derive(Clone, Copy, Debug)]
pub struct MinResult {
    /// The minimum value.
    pub min_value: f64,
    /// Where it is attained; for a flat minimum region, the midpoint of
    /// that plateau.
    pub argmin: f64,
    /// True when the function is identically zero on a whole subinterval
    /// (which happens exactly while `κ·γ < 1`).
    pub vanishes: bool,
}

impl PiecewisePoly {
    /// Build `ψ⁽ᵏ⁾` for window width `γ ∈ (0, 1)` by κ−1 convolution steps.
    pub fn build(kappa: u32, gamma: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) || gamma <= 0.0 || !gamma.is_finite() {
            return Err(Error::BadArguments(format!("window width gamma={gamma} outside (0, 1)")));
        }
        if kappa == 0 || kappa > MAX_KAPPA {
            return Err(Error::BadArguments(format!("kappa={kappa} outside 1..={MAX_KAPPA}")));
        }
        let mut f = PiecewisePoly {
            kappa: 1,
            gamma,
            breakpoints: vec![0.0, gamma, 1.0],
            coeffs: vec![vec![1.0], vec![0.0]],
        };
        for _ in 1..kappa {
            f = f.convolve_window();
        }
        Ok(f)
    }

    /// Convolution order κ.
    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Window width γ.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The sorted breakpoints (first 0.0, last 1.0).
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Evaluate at `x` (any real; reduced mod 1).
    ///
    /// Point values on the measure-zero breakpoint set follow the piece to
    /// the *right*, except κ = 1 which reproduces the window indicator
    /// exactly: 1 on `(0, γ]`, 0 elsewhere.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.rem_euclid(1.0);
        if self.kappa == 1 {
            return if x > 0.0 && x <= self.gamma { 1.0 } else { 0.0 };
        }
        let i = self.piece_index(x);
        horner(&self.coeffs[i], x - self.breakpoints[i])
    }

    /// Total mass `∫₀¹ ψ⁽ᵏ⁾`; equals `γᵏ` up to rounding.
    pub fn integral(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.coeffs.len() {
            let w = self.breakpoints[i + 1] - self.breakpoints[i];
            s += integral_on(&self.coeffs[i], w);
        }
        s
    }

    fn piece_index(&self, x: f64) -> usize {
        // Largest i with breakpoints[i] <= x; x ∈ [0, 1) keeps i < pieces.
        self.breakpoints[..self.breakpoints.len() - 1]
            .partition_point(|&b| b <= x)
            .saturating_sub(1)
    }

    /// One convolution step: `g(x) = ∫_{x−γ}^{x} f(t) dt` on the circle.
    fn convolve_window(&self) -> PiecewisePoly {
        let gamma = self.gamma;
        // Antiderivative F on [0, 1): per-piece integral plus accumulated
        // constant, so F(0) = 0 and F(1) = total mass.
        let mut anti: Vec<Vec<f64>> = Vec::with_capacity(self.coeffs.len());
        let mut acc = 0.0;
        for i in 0..self.coeffs.len() {
            let mut c = vec![0.0; self.coeffs[i].len() + 1];
            c[0] = acc;
            for (j, &v) in self.coeffs[i].iter().enumerate() {
                c[j + 1] = v / (j as f64 + 1.0);
            }
            let w = self.breakpoints[i + 1] - self.breakpoints[i];
            acc = horner(&c, w);
            anti.push(c);
        }
        let mass = acc;

        // New breakpoints: the old ones plus their +γ translates (mod 1).
        let mut bps: Vec<f64> = Vec::with_capacity(2 * self.breakpoints.len() + 2);
        bps.extend_from_slice(&self.breakpoints);
        for &b in &self.breakpoints {
            let t = (b + gamma).rem_euclid(1.0);
            bps.push(t);
        }
        bps.push(0.0);
        bps.push(1.0);
        bps.sort_by(|p, q| p.partial_cmp(q).expect("finite breakpoints"));
        bps.dedup_by(|p, q| (*p - *q).abs() < 1e-14);
        if *bps.last().unwrap() < 1.0 {
            bps.push(1.0);
        } else {
            *bps.last_mut().unwrap() = 1.0;
        }
        if bps[0] > 0.0 {
            bps.insert(0, 0.0);
        } else {
            bps[0] = 0.0;
        }

        // g(x) = F(x) − F((x−γ) mod 1) + mass·1_{x<γ}; assemble per piece in
        // the local variable t = x − lo, sampling the midpoint to choose the
        // correct source pieces.
        let mut coeffs = Vec::with_capacity(bps.len() - 1);
        for i in 0..bps.len() - 1 {
            let (lo, hi) = (bps[i], bps[i + 1]);
            let mid = 0.5 * (lo + hi);
            let j1 = self.piece_index_in(&self.breakpoints, mid);
            let mut c = shift_poly(&anti[j1], lo - self.breakpoints[j1]);
            let wrapped = mid < gamma;
            let y = if wrapped { mid - gamma + 1.0 } else { mid - gamma };
            let j2 = self.piece_index_in(&self.breakpoints, y);
            let d2 = if wrapped {
                lo - gamma + 1.0 - self.breakpoints[j2]
            } else {
                lo - gamma - self.breakpoints[j2]
            };
            let c2 = shift_poly(&anti[j2], d2);
            for (k, v) in c2.iter().enumerate() {
                if k < c.len() {
                    c[k] -= v;
                } else {
                    c.push(-v);
                }
            }
            if wrapped {
                c[0] += mass;
            }
            coeffs.push(c);
        }
        PiecewisePoly { kappa: self.kappa + 1, gamma, breakpoints: bps, coeffs }
    }

    fn piece_index_in(&self, bps: &[f64], x: f64) -> usize {
        bps[..bps.len() - 1].partition_point(|&b| b <= x).saturating_sub(1)
    }

    /// Global minimum over the circle, with plateau-aware argmin (midpoint
    /// of the flat region when the minimum is attained on an interval).
    pub fn minimum(&self) -> MinResult {
        const N: usize = 1 << 21;
        let step = 1.0 / N as f64;
        let mut best = f64::INFINITY;
        let mut best_i = 0usize;
        let mut max = 0.0f64;
        for i in 0..N {
            let v = self.eval(i as f64 * step);
            if v < best {
                best = v;
                best_i = i;
            }
            if v > max {
                max = v;
            }
        }
        // Breakpoints themselves as extra candidates.
        for &b in &self.breakpoints {
            let v = self.eval(b);
            if v < best {
                best = v;
                best_i = (b / step) as usize % N;
            }
        }
        let tol = 1e-12 * max.max(1.0);
        if best <= tol {
            // Identically zero on an arc: report its midpoint.
            let (l, r) = plateau_arc(self, best_i, N, tol);
            return MinResult { min_value: 0.0, argmin: arc_midpoint(l, r), vanishes: true };
        }
        // Pin the plateau boundaries (degenerate to a point for a strict
        // minimum) by bisecting the predicate ψ(x) ≤ best + tol.
        let (l, r) = plateau_arc(self, best_i, N, tol);
        let left = bisect_edge(self, l, best + tol, step, true);
        let right = bisect_edge(self, r, best + tol, step, false);
        let argmin = arc_midpoint(left, right);
        // Polish the value at the argmin and nearby samples.
        let min_value = best
            .min(self.eval(argmin))
            .min(self.eval(left))
            .min(self.eval(right));
        MinResult { min_value, argmin, vanishes: false }
    }
}

/// Arc `[l, r]` (possibly wrapping, l > r) of grid samples around `best_i`
/// staying within `tol` of the minimum; returned as circle positions.
fn plateau_arc(f: &PiecewisePoly, best_i: usize, n: usize, tol: f64) -> (f64, f64) {
    let step = 1.0 / n as f64;
    let base = f.eval(best_i as f64 * step);
    let mut l = best_i;
    let mut steps = 0;
    while steps < n && f.eval(((l + n - 1) % n) as f64 * step) <= base + tol {
        l = (l + n - 1) % n;
        steps += 1;
    }
    let mut r = best_i;
    steps = 0;
    while steps < n && f.eval(((r + 1) % n) as f64 * step) <= base + tol {
        r = (r + 1) % n;
        steps += 1;
    }
    (l as f64 * step, r as f64 * step)
}

/// Midpoint of the circle arc from `l` to `r` going forward (handles wrap).
fn arc_midpoint(l: f64, r: f64) -> f64 {
    if l <= r {
        0.5 * (l + r)
    } else {
        (0.5 * (l + r + 1.0)).rem_euclid(1.0)
    }
}

/// Pin the plateau edge near `x0` by bisection on `ψ(x) ≤ level`.
fn bisect_edge(f: &PiecewisePoly, x0: f64, level: f64, step: f64, leftward: bool) -> f64 {
    let dir = if leftward { -1.0 } else { 1.0 };
    let mut inside = x0;
    let mut outside = x0 + dir * step;
    if f.eval(outside.rem_euclid(1.0)) <= level {
        return x0; // grid already at the edge within a step
    }
    for _ in 0..60 {
        let mid = 0.5 * (inside + outside);
        if f.eval(mid.rem_euclid(1.0)) <= level {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside.rem_euclid(1.0)
}

/// Exact minimum of `ψ⁽ᵏ⁾` at the critical multiplicity `κ = ⌈1/γ⌉`:
/// `(κγ−1)^{κ−1} / (2^{κ−2}·(κ−1)!)`, attained at `(κγ−1)/2`. Returns
/// `None` for any other κ (below it the minimum is 0, above it no closed
/// form this simple holds).
pub fn sharp_lower_bound(kappa: u32, gamma: f64) -> Option<(f64, f64)> {
    if gamma <= 0.0 || gamma >= 1.0 {
        return None;
    }
    let critical = (1.0 / gamma).ceil() as u32;
    if kappa != critical {
        return None;
    }
    let kg = kappa as f64 * gamma;
    let value = (kg - 1.0).powi(kappa as i32 - 1)
        / (2f64.powi(kappa as i32 - 2) * factorial(kappa - 1));
    Some((value, (kg - 1.0) / 2.0))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    let mut v = 0.0;
    for &c in coeffs.iter().rev() {
        v = v * t + c;
    }
    v
}

/// ∫₀ʷ p(t) dt for a local-basis polynomial.
fn integral_on(coeffs: &[f64], w: f64) -> f64 {
    let mut v = 0.0;
    for (j, &c) in coeffs.iter().enumerate().rev() {
        v = v * w + c / (j as f64 + 1.0);
    }
    v * w
}

/// Rebase `p(t)` to `q(u) = p(u + d)` by binomial expansion.
fn shift_poly(coeffs: &[f64], d: f64) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n];
    for (j, &c) in coeffs.iter().enumerate() {
        // c·(u+d)^j distributes as c·Σ C(j,i) d^(j−i) u^i.
        let mut binom = 1.0f64;
        for i in 0..=j {
            out[i] += c * binom * d.powi((j - i) as i32);
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
    }
    out
}

/// One-off evaluation of `ψ⁽ᵏ⁾(x)`; repeated callers should build the
/// [`PiecewisePoly`] once.
pub fn psi_eval(kappa: u32, gamma: f64, x: f64) -> Result<f64> {
    Ok(PiecewisePoly::build(kappa, gamma)?.eval(x))
}
