//! The κ-fold self-convolution of the window indicator.
//!
//! Convolving the indicator of `(0, γ]` with itself κ times on the circle
//! yields a periodized uniform B-spline ψ⁽ᵏ⁾: the density of sums of κ
//! window-constrained fractional parts. Its structure switches at the
//! critical order κ* = ⌈1/γ⌉:
//!   * below κ*, ψ⁽ᵏ⁾ still has a flat zero arc and equals the pure power
//!     x^(κ−1)/(κ−1)! on (0, γ];
//!   * at and above κ*, it is strictly positive everywhere — and exactly at
//!     κ* the global minimum has the closed form
//!     (κγ−1)^(κ−1) / (2^(κ−2)·(κ−1)!) at x = (κγ−1)/2.
//!
//! Run with: `cargo run --example psi_convolution`

use bgold::psi::{psi_eval, sharp_lower_bound, PiecewisePoly};

fn main() -> Result<(), bgold::Error> {
    let gamma = 1.0 / std::f64::consts::SQRT_2; // critical order 2
    println!("window width gamma = {gamma:.6}, critical order {}", (1.0 / gamma).ceil());

    for kappa in 1..=4u32 {
        let poly = PiecewisePoly::build(kappa, gamma)?;
        let min = poly.minimum();
        println!(
            "kappa = {kappa}: {} pieces, total mass {:.6} (gamma^kappa = {:.6}), minimum {:.6} at x = {:.4}{}",
            poly.breakpoints().len() - 1,
            poly.integral(),
            gamma.powi(kappa as i32),
            min.min_value,
            min.argmin,
            if min.vanishes { " (flat zero arc)" } else { "" }
        );

        // A few point values along one period.
        let row: Vec<String> =
            (0..=8).map(|j| format!("{:.4}", poly.eval(j as f64 / 8.0))).collect();
        println!("         values at j/8: [{}]", row.join(", "));
    }

    // The closed-form sharp minimum at the critical order.
    if let Some((bound, argmin)) = sharp_lower_bound(2, gamma) {
        let poly = PiecewisePoly::build(2, gamma)?;
        println!(
            "\nsharp minimum at the critical order: closed form {bound:.12} at x = {argmin:.6}, \
             measured {:.12}",
            poly.minimum().min_value
        );
        assert!((poly.minimum().min_value - bound).abs() < 1e-12);
    }

    // One-off evaluation without keeping the spline around.
    let v = psi_eval(3, 0.3, 0.45)?;
    println!("\npsi^(3) at 0.45 for gamma = 0.3: {v:.9} (pure power region: 0.45^2/2 = {:.9})", 0.45f64.powi(2) / 2.0);
    Ok(())
}
