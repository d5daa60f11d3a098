//! Log-gamma, log-beta and the two-sided Stirling bracket for `Γ(1 + x)`.
//!
//! `ln Γ` is evaluated with the Stirling asymptotic series for arguments at or
//! above [`ASYMPTOTIC_THRESHOLD`]; smaller arguments are shifted upward with the
//! recurrence `Γ(x + 1) = x Γ(x)`. Every ratio of Gamma values is formed in
//! log space and exponentiated once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Arguments at or above this value use the asymptotic series directly.
pub const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// Coefficients `B_{2j} / (2j (2j - 1))` of the Stirling series.
const STIRLING_SERIES: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn check_positive<T: Real>(x: T, what: &str) -> Result<()> {
    if x.is_finite() && x > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite and positive, got {x}")))
    }
}

#[inline]
fn half_ln_two_pi<T: Real>() -> T {
    lit::<T>(0.5) * (T::PI() + T::PI()).ln()
}

/// Stirling series tail `Σ B_{2j} / (2j (2j-1) x^{2j-1})` for `x ≥ 10`.
fn series_tail<T: Real>(x: T) -> T {
    let inv = x.recip();
    let inv2 = inv * inv;
    // Horner in 1/x², innermost coefficient first.
    let mut acc = T::zero();
    for &c in STIRLING_SERIES.iter().rev() {
        acc = acc * inv2 + lit(c);
    }
    acc * inv
}

/// `ln Γ(x)` for `x ≥ 10`.
fn log_gamma_large<T: Real>(x: T) -> T {
    (x - lit(0.5)) * x.ln() - x + half_ln_two_pi::<T>() + series_tail(x)
}

/// Number of unit shifts needed to lift `x` into the asymptotic range.
fn shift_count<T: Real>(x: T) -> usize {
    let gap = lit::<T>(ASYMPTOTIC_THRESHOLD) - x;
    if gap <= T::zero() {
        0
    } else {
        gap.ceil().to_usize().unwrap_or(0)
    }
}

/// Natural log of `Γ(x)` for `x > 0`.
///
/// Relative error of `exp(log_gamma(x))` is a few ulps of `|ln Γ(x)| + ln 10`
/// over the whole positive axis; for `x < 10` the value is obtained from
/// `ln Γ(x + m) - ln(x (x+1) ... (x+m-1))`.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    check_positive(x, "log_gamma argument")?;
    if x == T::one() || x == lit(2.0) {
        return Ok(T::zero());
    }
    let m = shift_count(x);
    if m == 0 {
        return Ok(log_gamma_large(x));
    }
    // ln x is kept out of the product so tiny x cannot underflow it.
    let mut prod = T::one();
    for j in 1..m {
        prod = prod * (x + lit(j as f64));
    }
    Ok(log_gamma_large(x + lit(m as f64)) - x.ln() - prod.ln())
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b)`.
///
/// Evaluated as `ln Γ(min) + ln(Γ(max)/Γ(a+b))` so that large, close
/// arguments do not cancel. Arguments are ordered first, which makes the
/// result bitwise symmetric.
pub fn log_beta<T: Real>(a: T, b: T) -> Result<T> {
    check_positive(a, "log_beta first argument")?;
    check_positive(b, "log_beta second argument")?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Ok(log_gamma(lo)? + log_gamma_ratio(hi, lo + hi)?)
}

/// `ln(Γ(a) / Γ(b))`.
///
/// When both arguments sit in the asymptotic range the leading terms are
/// combined through `ln_1p` so that nearby arguments do not cancel.
pub fn log_gamma_ratio<T: Real>(a: T, b: T) -> Result<T> {
    check_positive(a, "gamma_ratio numerator")?;
    check_positive(b, "gamma_ratio denominator")?;
    if a == b {
        return Ok(T::zero());
    }
    let threshold = lit::<T>(ASYMPTOTIC_THRESHOLD);
    if a >= threshold && b >= threshold {
        let d = a - b;
        let lead = (a - lit(0.5)) * (d / b).ln_1p() + d * (b.ln() - T::one());
        Ok(lead + (series_tail(a) - series_tail(b)))
    } else {
        Ok(log_gamma(a)? - log_gamma(b)?)
    }
}

/// `Γ(a) / Γ(b)`, exponentiated once from log space.
///
/// Returns [`Error::Overflow`] rather than an infinity when the ratio is not
/// representable.
pub fn gamma_ratio<T: Real>(a: T, b: T) -> Result<T> {
    let log_value = log_gamma_ratio(a, b)?;
    let value = log_value.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow {
            log_value: log_value.to_f64().unwrap_or(f64::INFINITY),
        })
    }
}

/// `ln Γ(1 + x) − ln(√(2π) x^{x+1/2} e^{−x})`, evaluated without forming
/// either large term.
///
/// For `x ≥ 10` this is the Stirling series tail itself. Below that the
/// recurrence lifts the argument and the leading terms are subtracted
/// analytically.
pub fn stirling_correction<T: Real>(x: T) -> Result<T> {
    check_positive(x, "stirling_correction argument")?;
    let m = shift_count(x);
    if m == 0 {
        return Ok(series_tail(x));
    }
    // ln Γ(1+x) = ln Γ(1+x+m) − Σ_{j=1..m} ln(x+j)
    let shifted = x + lit(m as f64);
    let half = lit::<T>(0.5);
    let mut log_prod = T::zero();
    for j in 1..=m {
        log_prod = log_prod + (x + lit(j as f64)).ln();
    }
    let lead = (shifted + half) * shifted.ln() - (x + half) * x.ln() - lit(m as f64);
    Ok(series_tail(shifted) + lead - log_prod)
}

/// The two-sided Stirling bracket
/// `√(2π) x^{x+1/2} e^{−x} < Γ(1+x) < √(2π) x^{x+1/2} e^{−x + 1/(12x)}`.
///
/// All three quantities are stored as natural logarithms; for `x` beyond
/// roughly 170 the exponentiated values overflow `f64`, so comparisons go
/// through [`SandwichResult::lower_margin`] and
/// [`SandwichResult::upper_margin`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichResult<T> {
    pub x: T,
    pub ln_lower: T,
    /// `ln Γ(1 + x)`.
    pub ln_value: Option<T>,
    pub ln_upper: T,
    correction: T,
}

impl<T: Real> SandwichResult<T> {
    pub fn lower(&self) -> T {
        self.ln_lower.exp()
    }

    pub fn upper(&self) -> T {
        self.ln_upper.exp()
    }

    pub fn value_hint(&self) -> Option<T> {
        self.ln_value.map(T::exp)
    }

    /// `ln Γ(1+x) − ln lower`; positive when the left inequality holds.
    pub fn lower_margin(&self) -> T {
        self.correction
    }

    /// `ln upper − ln Γ(1+x)`; positive when the right inequality holds.
    pub fn upper_margin(&self) -> T {
        (lit::<T>(12.0) * self.x).recip() - self.correction
    }

    pub fn brackets(&self) -> bool {
        self.lower_margin() > T::zero() && self.upper_margin() > T::zero()
    }
}

pub fn stirling_sandwich<T: Real>(x: T) -> Result<SandwichResult<T>> {
    check_positive(x, "stirling_sandwich argument")?;
    let ln_lower = half_ln_two_pi::<T>() + (x + lit(0.5)) * x.ln() - x;
    let ln_upper = ln_lower + (lit::<T>(12.0) * x).recip();
    let correction = stirling_correction(x)?;
    Ok(SandwichResult {
        x,
        ln_lower,
        ln_value: Some(log_gamma(T::one() + x)?),
        ln_upper,
        correction,
    })
}
