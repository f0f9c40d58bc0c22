//! Certified computations around Beatty sequences of primes: membership,
//! prime-weighted convolution counts, density predictions, and the smoothed
//! periodic windows that tie them together.
//!
//! Start with the runnable examples (`cargo run --example <name>`):
//!
//! * `beatty_membership` — build a Beatty sequence, test membership, inspect gaps;
//! * `continued_fractions` — convergents, error bounds, and type estimates;
//! * `discrepancy_ladder` — star/extreme discrepancy of `{γn+δ}` along M = 10^2..10^5;
//! * `psi_convolution` — the κ-fold self-convolution of the width-γ window, its
//!   minimum, and the sharp lower bound;
//! * `smoothing_fourier` — the trapezoid mollifier, its Fourier coefficients,
//!   and truncation error;
//! * `singular_series` — local-factor products, tail bounds, and the two
//!   partial-sum identities;
//! * `goldbach_beatty` — weighted representation counts vs. the predicted main
//!   term;
//! * `witness_density` — integers with no κ-term representation and the
//!   fractional-part witness that certifies them;
//! * `sieve_tables` — the arithmetic tables (Λ, μ, φ, smallest prime factor)
//!   and their binary cache.
//!
//! The thin `bgold` binary exposes the same capabilities as subcommands
//! (`compare`, `density`, `psi`, `sing`, `beatty`, `discrepancy`) with CSV and
//! JSON output.

pub mod beatty;
pub mod cli;
pub mod discrepancy;
pub mod error;
pub mod experiments;
pub mod irrational;
pub mod mangoldt;
pub mod psi;
pub mod repcounts;
pub mod singular;
pub mod smoothing;
pub mod util;

pub use error::{Error, Result};
pub use irrational::{
    frac_affine_certified, nearest_int_distance, parse_ratio, AffineFrac, CertifiedFrac,
    IrrationalSpec, Ratio, RationalApprox,
};
