//! Continued-fraction convergents and approximation quality.
//!
//! Every named constant ships with a continued-fraction expansion whose
//! convergents p/q are the best rational approximations. The growth rate of
//! `|x − p/q|` against `q` measures how "rational-like" the number is: the
//! type exponent is 1 for quadratic irrationals and almost all reals, and a
//! larger value warns that equidistribution arguments converge more slowly.
//!
//! Run with: `cargo run --example continued_fractions`

use bgold::irrational::IrrationalSpec;

fn main() -> Result<(), bgold::Error> {
    for name in ["sqrt:2", "pi", "golden-inverse"] {
        let spec = IrrationalSpec::parse(name)?;
        println!("{name}  ≈ {:.12}", spec.approx_f64());

        for (i, (a, conv)) in spec.cf_expand(8)?.iter().enumerate() {
            println!(
                "  a{i} = {a:3}   convergent {}/{}   |error| <= {:.3e}",
                conv.numerator, conv.denominator, conv.error_bound
            );
        }

        let t = spec.type_exponent_estimate(1_000_000)?;
        println!("  type exponent estimate over q <= 10^6: {t:.4}");

        // A certified enclosure at 96 bits: the value provably lies between.
        let (lo, hi) = spec.enclosure(96)?;
        let width = &hi - &lo;
        println!("  96-bit enclosure width: {:.3e}\n", ratio_to_f64(&width));
    }
    Ok(())
}

fn ratio_to_f64(r: &bgold::Ratio) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
