//! Trapezoid smoothing of the window and its Fourier control.
//!
//! The raw window indicator has Fourier coefficients decaying only like
//! 1/k. Convolving it with a width-Δ box gives a trapezoid Ψ that agrees
//! with the window away from Δ-neighborhoods of the two jumps, stays in
//! [0, 1], and has coefficients bounded by min(1/(πk), 1/(π²k²Δ)) — fast
//! enough to truncate. The truncated Fourier expansion of Ψ*Ψ then tracks
//! the exact two-fold window convolution within O(Δ + 1/(KΔ)).
//!
//! Run with: `cargo run --example smoothing_fourier`

use bgold::psi::PiecewisePoly;
use bgold::smoothing::{truncated_eval_with, SmoothedIndicator};

fn main() -> Result<(), bgold::Error> {
    let gamma = 1.0 / std::f64::consts::SQRT_2;
    let delta = 0.02;
    let s = SmoothedIndicator::new(gamma, delta)?;
    println!("trapezoid mollifier: gamma = {gamma:.6}, delta = {delta}");

    // Pointwise shape: ramp, plateau, ramp, zero.
    for x in [0.0, 0.01, 0.05, 0.5, gamma - 0.05, gamma, gamma + 0.05, 0.9] {
        println!("  Psi({x:.4}) = {:.4}", s.eval(x));
    }

    // Coefficients against their proven envelope.
    println!("\n  k     |coeff|      envelope min(1/(pi k), 1/(pi^2 k^2 delta))");
    for k in [1i64, 5, 25, 50, 100, 400] {
        println!("{k:>5}   {:.3e}    {:.3e}", s.fourier_coeff(k).norm(), s.coeff_bound(k));
    }

    // Truncation: the partial sum of Psi*Psi versus the exact two-fold
    // window convolution, with the a-priori tail bound alongside.
    let psi2 = PiecewisePoly::build(2, gamma)?;
    println!("\n  K      sup |truncated - exact|   tail bound   allowance delta + 1/(K delta)");
    for big_k in [50u32, 200, 800, 3_200] {
        let coeffs = s.conv_coeffs(big_k, 2);
        let mut sup: f64 = 0.0;
        for j in 0..=2_000 {
            let x = j as f64 / 2_000.0;
            sup = sup.max((truncated_eval_with(&coeffs, x) - psi2.eval(x)).abs());
        }
        println!(
            "{big_k:>5}         {sup:.3e}          {:.3e}      {:.3e}",
            s.truncation_tail_bound(big_k, 2),
            delta + 1.0 / (big_k as f64 * delta)
        );
    }
    Ok(())
}
