//! Certified arithmetic on the irrational (or exact-rational) parameters that
//! drive everything else in this crate.
//!
//! A [`IrrationalSpec`] names a real number in one of six ways:
//!
//! * `sqrt:<d>` — the square root of a non-square integer `d ≥ 2`;
//! * `pi` — the circle constant (1000 stored decimal digits);
//! * `golden` — the golden ratio (1+√5)/2;
//! * `golden-inverse` — its reciprocal (√5−1)/2;
//! * `cf:<a0>,<a1>,...` — the exact rational with that (finite) continued
//!   fraction;
//! * `dec:<literal>@<q_max>` — the exact rational denoted by a decimal
//!   literal, trusted as a stand-in for an unknown real only while convergent
//!   denominators stay at or below `q_max`.
//!
//! Every numeric question is answered through *enclosures*: exact rational
//! intervals `[lo, hi]` guaranteed to contain the value, with width at most
//! `2^-bits` on request. Downstream code never touches a bare `f64`
//! approximation when a decision depends on it; instead it uses
//! [`AffineFrac`], a fixed-point evaluator for fractional parts
//! `{γ·n + a + b·γ}` that carries a certified error radius and refuses
//! (with [`Error::Ambiguity`]) rather than guess when an interval straddles a
//! decision boundary.
//!
//! Rational specs (`cf:`, `dec:`) are evaluated with exact rational
//! arithmetic, so their fractional parts come back with radius 0. The
//! `dec:` validity bound gates only continued-fraction structure
//! ([`IrrationalSpec::cf_expand`] and
//! [`IrrationalSpec::type_exponent_estimate`]); plain arithmetic on the
//! literal's exact value never degrades and therefore never refuses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Ratio = num_rational::BigRational;

/// 1000 decimal digits of pi (most significant first, decimal point after
/// the first digit). Verified against an independent 60-digit evaluation in
/// the tests below.
const PI_DIGITS: [&str; 10] = [
    "3141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067",
    "9821480865132823066470938446095505822317253594081284811174502841027019385211055596446229489549303819",
    "6442881097566593344612847564823378678316527120190914564856692346034861045432664821339360726024914127",
    "3724587006606315588174881520920962829254091715364367892590360011330530548820466521384146951941511609",
    "4330572703657595919530921861173819326117931051185480744623799627495673518857527248912279381830119491",
    "2983367336244065664308602139494639522473719070217986094370277053921717629317675238467481846766940513",
    "2000568127145263560827785771342757789609173637178721468440901224953430146549585371050792279689258923",
    "5420199561121290219608640344181598136297747713099605187072113499999983729780499510597317328160963185",
    "9502445945534690830264252230825334468503526193118817101000313783875288658753320838142061717766914730",
    "3598253490428755468731159562863882353787593751957781857780532171226806613001927876611195909216420198",
];

/// Number of stored decimal digits of pi (one integer digit, the rest
/// fractional).
const PI_DECIMALS: u32 = 999;

/// Scale exponent of the fixed-point representation used by [`AffineFrac`]:
/// values are stored as integer multiples of 2^-96.
const SCALE_BITS: u32 = 96;

/// Largest `n` accepted by the fixed-point evaluator. Keeps
/// `γ·2^96 · n + c` comfortably inside `u128`.
const MAX_N: u64 = 1 << 31;

fn pow2_ratio(bits: u32) -> Ratio {
    Ratio::new(BigInt::one() << bits, BigInt::one())
}

/// Parse a decimal literal (`-12.75`, `0.5`, `3`) or a fraction (`5/2`)
/// into an exact rational.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    let bad = || Error::BadArguments(format!("cannot parse `{s}` as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Ratio::new(num * sign, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SpecKind {
    Sqrt(u64),
    Pi,
    Golden,
    GoldenInverse,
    /// Exact rational given by a finite continued fraction.
    Cf { coeffs: Vec<u64>, value: Ratio },
    /// Exact rational given by a decimal literal, trusted up to convergent
    /// denominator `q_max`.
    Decimal { literal: String, value: Ratio, q_max: u64 },
}

/// A named real number with certified-enclosure evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalSpec {
    kind: SpecKind,
}

/// One convergent `p/q` together with a certified bound on `|x − p/q|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalApprox {
    pub numerator: BigInt,
    pub denominator: BigInt,
    /// Certified upper bound on the approximation error. `0.0` exactly when
    /// the convergent *is* the value (terminating expansion).
    pub error_bound: f64,
}

impl FromStr for IrrationalSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let kind = if s == "pi" {
            SpecKind::Pi
        } else if s == "golden" {
            SpecKind::Golden
        } else if s == "golden-inverse" {
            SpecKind::GoldenInverse
        } else if let Some(d) = s.strip_prefix("sqrt:") {
            let d: u64 = d
                .parse()
                .map_err(|_| Error::BadArguments(format!("sqrt spec needs an integer, got `{d}`")))?;
            let r = d.isqrt();
            if r * r == d {
                return Err(Error::BadArguments(format!(
                    "sqrt:{d} is rational ({r}); use a cf: or dec: spec for rational values"
                )));
            }
            SpecKind::Sqrt(d)
        } else if let Some(list) = s.strip_prefix("cf:") {
            let mut coeffs = Vec::new();
            for (i, tok) in list.split(',').enumerate() {
                let a: u64 = tok.trim().parse().map_err(|_| {
                    Error::BadArguments(format!("cf spec coefficient `{}` is not a non-negative integer", tok))
                })?;
                if i > 0 && a == 0 {
                    return Err(Error::BadArguments(
                        "cf spec coefficients after the first must be >= 1".into(),
                    ));
                }
                coeffs.push(a);
            }
            if coeffs.is_empty() {
                return Err(Error::BadArguments("cf spec needs at least one coefficient".into()));
            }
            let value = ratio_from_cf(&coeffs);
            SpecKind::Cf { coeffs, value }
        } else if let Some(rest) = s.strip_prefix("dec:") {
            let (lit, q) = rest
                .split_once('@')
                .ok_or_else(|| Error::BadArguments("dec spec is dec:<literal>@<q_max>".into()))?;
            let value = parse_ratio(lit)?;
            let q_max: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::BadArguments(format!("dec spec q_max `{q}` is not an integer")))?;
            if q_max == 0 {
                return Err(Error::BadArguments("dec spec q_max must be >= 1".into()));
            }
            SpecKind::Decimal { literal: lit.trim().to_string(), value, q_max }
        } else {
            return Err(Error::BadArguments(format!(
                "unrecognized spec `{s}`; expected sqrt:<d>, pi, golden, golden-inverse, cf:<a0>,<a1>,..., or dec:<literal>@<q_max>"
            )));
        };
        Ok(IrrationalSpec { kind })
    }
}

impl fmt::Display for IrrationalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpecKind::Sqrt(d) => write!(f, "sqrt:{d}"),
            SpecKind::Pi => write!(f, "pi"),
            SpecKind::Golden => write!(f, "golden"),
            SpecKind::GoldenInverse => write!(f, "golden-inverse"),
            SpecKind::Cf { coeffs, .. } => {
                write!(f, "cf:")?;
                for (i, a) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
            SpecKind::Decimal { literal, q_max, .. } => write!(f, "dec:{literal}@{q_max}"),
        }
    }
}

fn ratio_from_cf(coeffs: &[u64]) -> Ratio {
    // Fold from the tail: value = a0 + 1/(a1 + 1/(...)).
    let mut v = Ratio::from_integer(BigInt::from(*coeffs.last().unwrap()));
    for &a in coeffs.iter().rev().skip(1) {
        v = Ratio::from_integer(BigInt::from(a)) + v.recip();
    }
    v
}

impl IrrationalSpec {
    /// Parse a spec string (same grammar the `bgold` CLI uses).
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    /// Whether the spec denotes an exact rational (`cf:` / `dec:` kinds).
    pub fn is_rational(&self) -> bool {
        matches!(self.kind, SpecKind::Cf { .. } | SpecKind::Decimal { .. })
    }

    /// The exact rational value, for rational kinds.
    pub fn exact_value(&self) -> Option<&Ratio> {
        match &self.kind {
            SpecKind::Cf { value, .. } => Some(value),
            SpecKind::Decimal { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Validity bound of a `dec:` spec, if any.
    pub fn decimal_q_max(&self) -> Option<u64> {
        match &self.kind {
            SpecKind::Decimal { q_max, .. } => Some(*q_max),
            _ => None,
        }
    }

    /// A rational interval `[lo, hi]` containing the value, with
    /// `hi − lo ≤ 2^-bits`. Rational kinds return the exact point interval.
    pub fn enclosure(&self, bits: u32) -> Result<(Ratio, Ratio)> {
        match &self.kind {
            SpecKind::Sqrt(d) => {
                let scaled = BigInt::from(*d) << (2 * bits as usize);
                let s = scaled.sqrt();
                let den = pow2_ratio(bits);
                let lo = Ratio::from_integer(s.clone()) / &den;
                let hi = Ratio::from_integer(s + 1) / &den;
                Ok((lo, hi))
            }
            SpecKind::Pi => {
                // pi ∈ (P/10^999, (P+1)/10^999) with P the stored digit block.
                if bits + 2 > (PI_DECIMALS as f64 * std::f64::consts::LOG2_10) as u32 {
                    return Err(Error::PrecisionExhausted(format!(
                        "pi is stored to {PI_DECIMALS} decimals; cannot certify width 2^-{bits}"
                    )));
                }
                let digits: String = PI_DIGITS.concat();
                let p = BigInt::from_str(&digits).expect("pi digit block parses");
                let den = BigInt::from(10u32).pow(PI_DECIMALS);
                Ok((Ratio::new(p.clone(), den.clone()), Ratio::new(p + 1, den)))
            }
            SpecKind::Golden | SpecKind::GoldenInverse => {
                let scaled = BigInt::from(5u32) << (2 * (bits as usize + 2));
                let s = scaled.sqrt();
                let den = pow2_ratio(bits + 2);
                let lo5 = Ratio::from_integer(s.clone()) / &den;
                let hi5 = Ratio::from_integer(s + 1) / &den;
                let half = Ratio::new(BigInt::one(), BigInt::from(2u32));
                let one = Ratio::one();
                if matches!(self.kind, SpecKind::Golden) {
                    Ok(((&one + lo5) * &half, (one + hi5) * half))
                } else {
                    Ok(((lo5 - &one) * &half, (hi5 - one) * half))
                }
            }
            SpecKind::Cf { value, .. } | SpecKind::Decimal { value, .. } => Ok((value.clone(), value.clone())),
        }
    }

    /// Point estimate as `f64` (midpoint of a tight enclosure). For display
    /// and reporting only; certified decisions go through [`AffineFrac`].
    pub fn approx_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(80).expect("80-bit enclosure always available");
        let mid = (lo + hi) / Ratio::from_integer(BigInt::from(2u32));
        mid.to_f64().expect("finite spec value")
    }

    /// Continued-fraction coefficients, at most `want` of them, each certified
    /// by interval refinement (or computed exactly for rational kinds).
    /// Returns the coefficients and whether the expansion *terminated* within
    /// `want` (rational kinds only).
    fn coefficients(&self, want: usize) -> Result<(Vec<BigInt>, bool)> {
        if let Some(value) = self.exact_value() {
            // Euclid's algorithm; canonical form (last coefficient ≥ 2 unless
            // the value is an integer).
            let mut coeffs = Vec::new();
            let mut num = value.numer().clone();
            let mut den = value.denom().clone();
            while coeffs.len() < want {
                let (q, r) = num.div_mod_floor(&den);
                coeffs.push(q);
                if r.is_zero() {
                    return Ok((coeffs, true));
                }
                num = den;
                den = r;
            }
            return Ok((coeffs, false));
        }
        let mut bits: u32 = 192;
        loop {
            let (lo, hi) = self.enclosure(bits)?;
            if let Some(coeffs) = cf_from_interval(lo, hi, want) {
                return Ok((coeffs, false));
            }
            bits = bits
                .checked_mul(2)
                .filter(|&b| b <= 1 << 14)
                .ok_or_else(|| Error::PrecisionExhausted(format!("cannot certify {want} coefficients for {self}")))?;
        }
    }

    /// Expand `count` continued-fraction coefficients with their convergents.
    ///
    /// Every convergent satisfies `|x − p/q| ≤ error_bound ≤ 1/q²`; when the
    /// next coefficient is known the sharper bound `1/(q_k·q_{k+1})` is
    /// reported, and a terminating final convergent reports `0`.
    ///
    /// Refusals ([`Error::PrecisionExhausted`]): asking for coefficients past
    /// a terminating (rational) expansion, and, for `dec:` specs, any
    /// convergent whose denominator would exceed the spec's `q_max`.
    pub fn cf_expand(&self, count: usize) -> Result<Vec<(u64, RationalApprox)>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let (coeffs, terminated) = self.coefficients(count + 1)?;
        if coeffs.len() < count {
            debug_assert!(terminated);
            return Err(Error::PrecisionExhausted(format!(
                "expansion of {self} terminates after {} coefficients; cannot produce {count}",
                coeffs.len()
            )));
        }
        let q_cap = self.decimal_q_max().map(BigInt::from);
        let mut out = Vec::with_capacity(count);
        let (mut p_prev, mut p_curr) = (BigInt::zero(), BigInt::one());
        let (mut q_prev, mut q_curr) = (BigInt::one(), BigInt::zero());
        for (k, a) in coeffs.iter().take(count).enumerate() {
            let p = a * &p_curr + &p_prev;
            let q = a * &q_curr + &q_prev;
            if let Some(cap) = &q_cap {
                if &q > cap {
                    return Err(Error::PrecisionExhausted(format!(
                        "convergent denominator {q} exceeds the validity bound q_max={cap} of {self}"
                    )));
                }
            }
            let is_final = terminated && k + 1 == coeffs.len();
            let error_bound = if is_final {
                0.0
            } else if k + 1 < coeffs.len() {
                // |x − p_k/q_k| < 1/(q_k · q_{k+1})
                let q_next = &coeffs[k + 1] * &q + &q_curr;
                inv_product_f64(&q, &q_next)
            } else {
                inv_product_f64(&q, &q)
            };
            let coeff = a
                .to_u64()
                .ok_or_else(|| Error::BadArguments(format!("coefficient {a} of {self} exceeds u64")))?;
            out.push((coeff, RationalApprox { numerator: p.clone(), denominator: q.clone(), error_bound }));
            p_prev = p_curr;
            p_curr = p;
            q_prev = q_curr;
            q_curr = q;
        }
        Ok(out)
    }

    /// Finite-scale proxy for the irrationality type: the largest
    /// `log(q_{k+1})/log(q_k)` over consecutive convergent denominators with
    /// `q_k ≤ q_max`, restricted to `q_k ≥ min(max available q_k, q_max^0.7)`
    /// to suppress small-denominator noise, and floored at 1. This is an
    /// estimate of asymptotic behavior from finitely many convergents, not a
    /// certified bound.
    pub fn type_exponent_estimate(&self, q_max: u64) -> Result<f64> {
        if q_max < 2 {
            return Err(Error::BadArguments("type estimate needs q_max >= 2".into()));
        }
        if let Some(spec_q) = self.decimal_q_max() {
            if q_max > spec_q {
                return Err(Error::PrecisionExhausted(format!(
                    "type estimate at q_max={q_max} exceeds the validity bound q_max={spec_q} of {self}"
                )));
            }
        }
        // Expand until a denominator exceeds q_max (so the last pair spans the
        // ceiling) or the expansion terminates.
        let q_max_big = BigInt::from(q_max);
        let mut want = 32usize;
        let denominators = loop {
            let (coeffs, terminated) = self.coefficients(want)?;
            let mut qs = Vec::with_capacity(coeffs.len());
            let (mut q_prev, mut q_curr) = (BigInt::one(), BigInt::zero());
            for a in &coeffs {
                let q = a * &q_curr + &q_prev;
                qs.push(q.clone());
                q_prev = std::mem::replace(&mut q_curr, q);
            }
            if terminated || qs.last().map(|q| q > &q_max_big).unwrap_or(false) {
                break qs;
            }
            if coeffs.len() < want {
                break qs;
            }
            want *= 2;
            if want > 1 << 16 {
                return Err(Error::PrecisionExhausted(format!(
                    "convergent denominators of {self} grow too slowly to span q_max={q_max}"
                )));
            }
        };
        let two = BigInt::from(2u32);
        let pairs: Vec<(f64, f64)> = denominators
            .windows(2)
            .filter(|w| w[0] >= two && w[0] <= q_max_big)
            .map(|w| (big_to_f64(&w[0]), big_to_f64(&w[1])))
            .collect();
        if pairs.is_empty() {
            return Err(Error::BadArguments(format!(
                "{self} has no consecutive convergents with 2 <= q <= {q_max}; type estimate undefined"
            )));
        }
        let largest_qk = pairs.iter().map(|p| p.0).fold(0.0f64, f64::max);
        let floor_q = largest_qk.min((q_max as f64).powf(0.7));
        let est = pairs
            .iter()
            .filter(|(qk, _)| *qk >= floor_q)
            .map(|(qk, qn)| qn.ln() / qk.ln())
            .fold(1.0f64, f64::max);
        Ok(est)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::MAX)
}

/// `1/(a·b)` rounded up a little, clamped away from zero so it stays a valid
/// upper bound even when the exact value underflows.
fn inv_product_f64(a: &BigInt, b: &BigInt) -> f64 {
    let prod = big_to_f64(a) * big_to_f64(b);
    if prod.is_finite() && prod > 0.0 {
        (1.0 / prod) * (1.0 + 4.0 * f64::EPSILON)
    } else {
        f64::MIN_POSITIVE
    }
}

/// Interval continued-fraction expansion: emits coefficients while the floor
/// is certain on both ends, `None` when more precision is needed.
fn cf_from_interval(mut lo: Ratio, mut hi: Ratio, want: usize) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(want);
    while out.len() < want {
        let a = lo.floor();
        if hi.floor() != a {
            return None;
        }
        out.push(a.to_integer());
        let frac_lo = &lo - &a;
        let frac_hi = &hi - &a;
        if frac_lo.is_zero() {
            // The value could be exactly the integer part; an irrational
            // enclosure can always be refined past this.
            return None;
        }
        lo = frac_hi.recip();
        hi = frac_lo.recip();
    }
    Some(out)
}

/// Distance from `x` to the nearest integer.
pub fn nearest_int_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// A fractional part with a certified error radius:
/// the true value lies within `radius` of `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedFrac {
    pub value: f64,
    pub radius: f64,
}

/// Where the fractional-part evaluator gets γ from.
#[derive(Clone, Debug)]
enum GammaSource {
    /// γ is the spec's value reduced mod 1.
    Direct(IrrationalSpec),
    /// γ = 1/α for the spec's value α > 1.
    InverseOf(IrrationalSpec),
}

impl GammaSource {
    fn enclosure(&self, bits: u32) -> Result<(Ratio, Ratio)> {
        match self {
            GammaSource::Direct(spec) => {
                let (lo, hi) = spec.enclosure(bits + 1)?;
                // Reduce mod 1. The shift is by a fixed integer, so the width
                // is unchanged; an enclosure straddling an integer is handled
                // by the caller's refinement loop (rational kinds are exact).
                let k = lo.floor();
                Ok((lo - &k, hi - k))
            }
            GammaSource::InverseOf(spec) => {
                let (lo, hi) = spec.enclosure(bits + 2)?;
                if lo <= Ratio::one() {
                    if hi <= Ratio::one() {
                        return Err(Error::BadArguments(format!("alpha must exceed 1, got {spec}")));
                    }
                    // Enclosure straddles 1; since α > 1 strictly this always
                    // resolves under refinement unless α is rationally 1.
                    return Err(Error::Ambiguity(format!("cannot separate {spec} from 1")));
                }
                // α > 1 ⇒ |1/lo − 1/hi| = (hi−lo)/(lo·hi) ≤ hi−lo ≤ 2^-(bits+2).
                Ok((hi.recip(), lo.recip()))
            }
        }
    }

    fn is_rational(&self) -> bool {
        match self {
            GammaSource::Direct(s) | GammaSource::InverseOf(s) => s.is_rational(),
        }
    }

    fn exact_gamma(&self) -> Option<Ratio> {
        match self {
            GammaSource::Direct(s) => s.exact_value().map(|v| v - v.floor()),
            GammaSource::InverseOf(s) => s.exact_value().map(|v| v.recip()),
        }
    }
}

#[derive(Clone, Debug)]
enum AffineRepr {
    /// γ rational: exact arithmetic, radius 0.
    Exact { gamma: Ratio, offset: Ratio },
    /// γ irrational: fixed point at scale 2^96.
    /// γ·2^96 ∈ [g_lo, g_lo + g_slop]; {a+bγ}·2^96 ∈ [c_lo, c_lo + c_slop].
    Fixed { g_lo: u128, g_slop: u128, c_lo: u128, c_slop: u128 },
}

/// Certified evaluator for fractional parts `{γ·n + a + b·γ}` (`a`, `b`
/// exact rationals, `n` a machine integer). Built once, then O(1) per query.
///
/// Decision queries ([`AffineFrac::in_unit_gamma_window`],
/// [`AffineFrac::in_open_upper_window`]) compare certified intervals against
/// the window boundaries; when an interval straddles a boundary the evaluator
/// first checks the finitely many parameter combinations that make the value
/// *exactly* a boundary point (possible only when `n + b` hits 0, 1, or −κ)
/// and otherwise refuses with [`Error::Ambiguity`].
#[derive(Clone, Debug)]
pub struct AffineFrac {
    repr: AffineRepr,
    a: Ratio,
    b: Ratio,
    gamma_f64: f64,
    offset_f64: f64,
}

impl AffineFrac {
    /// Evaluator for `{γ·n + a + b·γ}` with γ the value of `gamma`
    /// (reduced mod 1).
    pub fn new(gamma: &IrrationalSpec, a: Ratio, b: Ratio) -> Result<Self> {
        Self::build(GammaSource::Direct(gamma.clone()), a, b)
    }

    /// Evaluator for `{γ·n + a + b·γ}` with γ = 1/α, α the value of `alpha`
    /// (must exceed 1).
    pub fn from_alpha_inverse(alpha: &IrrationalSpec, a: Ratio, b: Ratio) -> Result<Self> {
        Self::build(GammaSource::InverseOf(alpha.clone()), a, b)
    }

    fn build(src: GammaSource, a: Ratio, b: Ratio) -> Result<Self> {
        if src.is_rational() {
            let gamma = src.exact_gamma().expect("rational source has exact value");
            if matches!(src, GammaSource::InverseOf(_)) {
                let alpha = gamma.recip();
                if alpha <= Ratio::one() {
                    return Err(Error::BadArguments(format!("alpha must exceed 1, got {alpha}")));
                }
            }
            let offset = &a + &b * &gamma;
            let offset_red = &offset - offset.floor();
            let gamma_f64 = gamma.to_f64().unwrap_or(f64::NAN);
            let offset_f64 = offset_red.to_f64().unwrap_or(f64::NAN);
            return Ok(AffineFrac {
                repr: AffineRepr::Exact { gamma, offset: offset_red },
                a,
                b,
                gamma_f64,
                offset_f64,
            });
        }
        let mut bits: u32 = SCALE_BITS + 16;
        loop {
            let (g_lo_r, g_hi_r) = src.enclosure(bits)?;
            // offset = a + b·γ, reduced mod 1.
            let (o_lo, o_hi) = if b.is_negative() {
                (&a + &b * &g_hi_r, &a + &b * &g_lo_r)
            } else {
                (&a + &b * &g_lo_r, &a + &b * &g_hi_r)
            };
            let k = o_lo.floor();
            let (c_lo_r, c_hi_r) = (o_lo - &k, o_hi - &k);
            let fits = c_hi_r < Ratio::one() || (b.is_zero() && c_lo_r == c_hi_r);
            if fits {
                let g_lo = scaled_floor(&g_lo_r);
                let g_hi = scaled_ceil(&g_hi_r);
                let c_lo = scaled_floor(&c_lo_r);
                let c_hi = scaled_ceil(&c_hi_r);
                let g_slop = g_hi - g_lo;
                let c_slop = c_hi - c_lo;
                if g_slop <= 4 && c_slop <= 4 {
                    let gamma_f64 = (g_lo as f64 + g_slop as f64 / 2.0) / 2f64.powi(SCALE_BITS as i32);
                    let offset_f64 = (c_lo as f64 + c_slop as f64 / 2.0) / 2f64.powi(SCALE_BITS as i32);
                    return Ok(AffineFrac {
                        repr: AffineRepr::Fixed { g_lo, g_slop, c_lo, c_slop },
                        a,
                        b,
                        gamma_f64,
                        offset_f64,
                    });
                }
            }
            bits = bits
                .checked_mul(2)
                .filter(|&bb| bb <= 1 << 13)
                .ok_or_else(|| Error::PrecisionExhausted("cannot pin the affine offset mod 1".into()))?;
        }
    }

    /// γ as a plain double (reporting only).
    pub fn gamma_f64(&self) -> f64 {
        self.gamma_f64
    }

    /// The reduced offset `{a + b·γ}` as a plain double (reporting only).
    pub fn offset_f64(&self) -> f64 {
        self.offset_f64
    }

    /// True when the underlying γ is rational (exact fast path; radius 0).
    pub fn is_exact(&self) -> bool {
        matches!(self.repr, AffineRepr::Exact { .. })
    }

    /// The fractional part `{γ·n + a + b·γ}` with a certified radius.
    pub fn eval(&self, n: u64) -> Result<CertifiedFrac> {
        match &self.repr {
            AffineRepr::Exact { gamma, offset } => {
                let v = gamma * Ratio::from_integer(BigInt::from(n)) + offset;
                let frac = &v - v.floor();
                let value = frac.to_f64().ok_or_else(|| {
                    Error::BadArguments("fractional part does not fit in f64".into())
                })?;
                let radius = match Ratio::from_float(value) {
                    Some(r) => {
                        let d = (&frac - r).abs().to_f64().unwrap_or(0.0);
                        if d == 0.0 { 0.0 } else { d * (1.0 + 4.0 * f64::EPSILON) }
                    }
                    None => f64::EPSILON,
                };
                Ok(CertifiedFrac { value, radius })
            }
            AffineRepr::Fixed { .. } => {
                let (lo, slop) = self.scaled_interval(n)?;
                let scale = 2f64.powi(-(SCALE_BITS as i32));
                if lo.checked_add(slop).filter(|&s| s < 1u128 << SCALE_BITS).is_none() {
                    // Straddles an integer: the only certifiable case is an
                    // exactly-zero fractional part.
                    if let Some(exact) = self.exact_boundary_value(n) {
                        let value = exact.to_f64().unwrap_or(0.0);
                        return Ok(CertifiedFrac { value, radius: f64::EPSILON });
                    }
                    return Err(Error::Ambiguity(format!(
                        "{{γ·{n} + offset}} is within 2^-90 of an integer; cannot certify its fractional part"
                    )));
                }
                let half = slop / 2;
                let value = ((lo + half) as f64) * scale;
                let radius = (half as f64 + 2.0) * scale + value.abs() * f64::EPSILON;
                Ok(CertifiedFrac { value, radius })
            }
        }
    }

    /// Scaled value interval: the true `{…}·2^96` lies in `[lo, lo+slop]`
    /// modulo 2^96 (the caller handles a wrap past 2^96).
    fn scaled_interval(&self, n: u64) -> Result<(u128, u128)> {
        let AffineRepr::Fixed { g_lo, g_slop, c_lo, c_slop } = &self.repr else {
            unreachable!("scaled_interval is only called on the fixed-point path")
        };
        if n > MAX_N {
            return Err(Error::Capacity(format!("n={n} exceeds the supported range {MAX_N}")));
        }
        let n128 = n as u128;
        let v = g_lo * n128 + c_lo;
        let slop = g_slop * n128 + c_slop;
        Ok((v & ((1u128 << SCALE_BITS) - 1), slop))
    }

    /// When `n + b` is one of the special rationals that force an exact
    /// value (only `n + b = 0` with integral `a` can make the fractional part
    /// exactly 0 for irrational γ), return that exact fractional part.
    fn exact_boundary_value(&self, n: u64) -> Option<Ratio> {
        let nb = Ratio::from_integer(BigInt::from(n)) + &self.b;
        if nb.is_zero() {
            // Value is exactly {a}.
            let f = &self.a - self.a.floor();
            return Some(f);
        }
        None
    }

    /// `n + b` equals the given small integer (used for boundary-hit checks).
    fn n_plus_b_is(&self, n: u64, target: i64) -> bool {
        self.b.is_integer()
            && self.a.is_integer().then(|| BigInt::from(n) + self.b.to_integer() == BigInt::from(target)).unwrap_or(false)
    }

    /// Decide `0 < {γ·n + a + b·γ} ≤ γ` (the width-γ membership window).
    pub fn in_unit_gamma_window(&self, n: u64) -> Result<bool> {
        match &self.repr {
            AffineRepr::Exact { gamma, offset } => {
                let v = gamma * Ratio::from_integer(BigInt::from(n)) + offset;
                let frac = &v - v.floor();
                Ok(frac > Ratio::zero() && frac <= *gamma)
            }
            AffineRepr::Fixed { g_lo, g_slop, .. } => {
                let (lo, slop) = self.scaled_interval(n)?;
                let modulus = 1u128 << SCALE_BITS;
                if lo + slop >= modulus || lo == 0 {
                    // Within slop of an integer.
                    if let Some(exact) = self.exact_boundary_value(n) {
                        // Exact rational fractional part; γ is irrational, so
                        // a nonzero exact value never *equals* γ — but here the
                        // value is near 0 or 1, far from γ ∈ (0,1) interior
                        // unless γ itself is extreme; compare conservatively.
                        if exact.is_zero() {
                            return Ok(false);
                        }
                        let e_scaled = scaled_floor(&exact);
                        if e_scaled > g_lo + g_slop {
                            return Ok(false);
                        }
                        if e_scaled + 1 <= *g_lo && !exact.is_zero() {
                            return Ok(true);
                        }
                    }
                    return Err(Error::Ambiguity(format!(
                        "membership of n={n}: fractional part within 2^-90 of an integer"
                    )));
                }
                let hi = lo + slop;
                if hi <= *g_lo && lo >= 1 {
                    return Ok(true);
                }
                if lo > g_lo + g_slop {
                    return Ok(false);
                }
                // Interval touches the γ boundary. The value equals γ exactly
                // iff n + b = 1 and a is an integer.
                if self.n_plus_b_is(n, 1) {
                    return Ok(true);
                }
                Err(Error::Ambiguity(format!(
                    "membership of n={n}: fractional part within 2^-90 of the window edge"
                )))
            }
        }
    }

    /// Decide `0 < {γ·n + a + b·γ} < 1 − κ·γ` (open window against the upper
    /// complement). Returns `false` whenever the window is empty (κ·γ ≥ 1).
    pub fn in_open_upper_window(&self, n: u64, kappa: u32) -> Result<bool> {
        match &self.repr {
            AffineRepr::Exact { gamma, offset } => {
                let upper = Ratio::one() - Ratio::from_integer(BigInt::from(kappa)) * gamma;
                if upper <= Ratio::zero() {
                    return Ok(false);
                }
                let v = gamma * Ratio::from_integer(BigInt::from(n)) + offset;
                let frac = &v - v.floor();
                Ok(frac > Ratio::zero() && frac < upper)
            }
            AffineRepr::Fixed { g_lo, g_slop, .. } => {
                let modulus = 1u128 << SCALE_BITS;
                let k = kappa as u128;
                let kg_lo = k * g_lo;
                let kg_hi = k * (g_lo + g_slop);
                if kg_lo >= modulus {
                    return Ok(false); // κγ ≥ 1 certainly: empty window
                }
                if kg_hi >= modulus {
                    return Err(Error::Ambiguity(format!(
                        "cannot separate {kappa}·γ from 1 at certified precision"
                    )));
                }
                let upper_lo = modulus - kg_hi;
                let upper_hi = modulus - kg_lo;
                let (lo, slop) = self.scaled_interval(n)?;
                if lo + slop >= modulus || lo == 0 {
                    if let Some(exact) = self.exact_boundary_value(n) {
                        if exact.is_zero() {
                            return Ok(false);
                        }
                        let e_scaled = scaled_floor(&exact);
                        if e_scaled >= upper_hi {
                            return Ok(false);
                        }
                        if e_scaled + 1 < upper_lo {
                            return Ok(true);
                        }
                    }
                    return Err(Error::Ambiguity(format!(
                        "witness window at n={n}: fractional part within 2^-90 of an integer"
                    )));
                }
                let hi = lo + slop;
                if lo >= 1 && hi < upper_lo {
                    return Ok(true);
                }
                if lo >= upper_hi {
                    return Ok(false);
                }
                // Touching the upper edge: the value equals 1 − κγ exactly
                // iff n + b + κ = 0 and a is an integer, and the window is
                // open there.
                if self.n_plus_b_is(n, -(kappa as i64)) {
                    return Ok(false);
                }
                Err(Error::Ambiguity(format!(
                    "witness window at n={n}: fractional part within 2^-90 of the window edge"
                )))
            }
        }
    }
}

fn scaled_floor(r: &Ratio) -> u128 {
    let scaled = (r * pow2_ratio(SCALE_BITS)).floor().to_integer();
    scaled.to_u128().expect("scaled value in [0, 2^97)")
}

fn scaled_ceil(r: &Ratio) -> u128 {
    let scaled = (r * pow2_ratio(SCALE_BITS)).ceil().to_integer();
    scaled.to_u128().expect("scaled value in [0, 2^97)")
}

/// Certified fractional part `{γ·n + δ}` for a spec-valued γ and exact
/// rational δ. Convenience wrapper over [`AffineFrac`] for one-off queries;
/// batch users should build the evaluator once.
pub fn frac_affine_certified(gamma: &IrrationalSpec, delta: &Ratio, n: u64) -> Result<CertifiedFrac> {
    AffineFrac::new(gamma, delta.clone(), Ratio::zero())?.eval(n)
}
