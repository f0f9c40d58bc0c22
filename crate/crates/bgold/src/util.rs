//! Small numeric helpers shared across modules.

/// Pairwise (cascade) summation: same result scale as naive summation but
/// with O(log n) error growth instead of O(n). Used wherever long weight
/// vectors are totaled.
///
/// The empty sum is positive zero. (Rust's `Iterator::sum` for `f64` uses
/// `-0.0` as its identity, and that sign would otherwise leak into every
/// "no terms" count.)
pub fn balanced_sum(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    balanced_sum(&xs[..mid]) + balanced_sum(&xs[mid..])
}

/// Render a float with 12 significant digits in scientific notation,
/// normalizing the sign of zero. This is the fixed numeric format of all
/// CSV/JSON output, chosen so files are byte-stable across runs and
/// platforms.
pub fn fmt_sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // collapse -0.0
    format!("{x:.11e}")
}
