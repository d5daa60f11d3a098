use std::fmt;

use serde::Serialize;

use crate::scalar::{lit, Real};

/// Identifier of a checked inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "&'static str")]
pub enum StepName {
    Eq3Lower,
    Eq3Upper,
    Eq4,
    Eq5,
    Eq5Symmetry,
    Eq6LtEq7,
    Eq7Power,
    Eq7Root,
    Eq7Ratio,
    Eq7LtEq8,
    Eq8,
    Eq10,
    Eq11Falling,
    Eq11,
    Eq11Majorant,
    Eq11Target,
    Eq12,
    Eq12Target,
    Eq13,
    Eq13B,
    Eq13C,
    Eq13Target,
    Eq16,
    Eq16A,
    Eq16B,
    Eq16C,
    Eq16Theorem,
    Eq18,
    Eq18M1A,
    Eq18M1B,
    Eq18M2A,
    Eq18M2B,
    Eq18M2C,
    Eq18M2D,
    Eq18Theorem,
    HolderI1,
    Chebyshev,
    Theorem1,
}

impl StepName {
    pub fn as_str(&self) -> &'static str {
        use StepName::*;
        match self {
            Eq3Lower => "eq3_lower",
            Eq3Upper => "eq3_upper",
            Eq4 => "eq4",
            Eq5 => "eq5",
            Eq5Symmetry => "eq5_symmetry",
            Eq6LtEq7 => "eq6_lt_eq7",
            Eq7Power => "eq7_power",
            Eq7Root => "eq7_root",
            Eq7Ratio => "eq7_ratio",
            Eq7LtEq8 => "eq7_lt_eq8",
            Eq8 => "eq8",
            Eq10 => "eq10",
            Eq11Falling => "eq11_falling",
            Eq11 => "eq11",
            Eq11Majorant => "eq11_majorant",
            Eq11Target => "eq11_target",
            Eq12 => "eq12",
            Eq12Target => "eq12_target",
            Eq13 => "eq13",
            Eq13B => "eq13_b",
            Eq13C => "eq13_c",
            Eq13Target => "eq13_target",
            Eq16 => "eq16",
            Eq16A => "eq16_a",
            Eq16B => "eq16_b",
            Eq16C => "eq16_c",
            Eq16Theorem => "eq16_theorem",
            Eq18 => "eq18",
            Eq18M1A => "eq18_m1_a",
            Eq18M1B => "eq18_m1_b",
            Eq18M2A => "eq18_m2_a",
            Eq18M2B => "eq18_m2_b",
            Eq18M2C => "eq18_m2_c",
            Eq18M2D => "eq18_m2_d",
            Eq18Theorem => "eq18_theorem",
            HolderI1 => "holder_i1",
            Chebyshev => "chebyshev",
            Theorem1 => "theorem1",
        }
    }
}

impl From<StepName> for &'static str {
    fn from(s: StepName) -> Self {
        s.as_str()
    }
}

impl fmt::Display for StepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameter tuple at which an inequality was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepParams<T> {
    pub rho: Option<T>,
    pub n: Option<usize>,
    /// Rank; real-valued because beta-ratio checks accept `i = ρ + 1`.
    pub i: Option<T>,
    /// Free argument: `x` for the Stirling bracket, `u` for Chebyshev.
    pub x: Option<T>,
    pub delta: Option<T>,
}

impl<T> Default for StepParams<T> {
    fn default() -> Self {
        Self {
            rho: None,
            n: None,
            i: None,
            x: None,
            delta: None,
        }
    }
}

impl<T> StepParams<T> {
    pub fn rank(rho: T, n: usize, i: T) -> Self {
        Self {
            rho: Some(rho),
            n: Some(n),
            i: Some(i),
            x: None,
            delta: None,
        }
    }
}

/// The constant `e^{1+7/6}` variant of the beta-ratio bounds, recorded
/// alongside the checked `e^{ρ+7/6}` form without affecting the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedConstant<T> {
    pub rhs: T,
    pub holds: bool,
}

/// One evaluated inequality `lhs < rhs` (or `≤`).
///
/// Both sides are kept as natural logarithms; `lhs` and `rhs` are their
/// exponentials and may overflow to `+∞` where the logs do not. `margin` is
/// the log-margin `ln rhs − ln lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport<T> {
    pub name: StepName,
    pub lhs: T,
    pub rhs: T,
    pub ln_lhs: T,
    pub ln_rhs: T,
    pub margin: T,
    pub strict: bool,
    pub holds: bool,
    pub params: StepParams<T>,
    pub printed_constant: Option<PrintedConstant<T>>,
}

/// Slack granted to non-strict comparisons whose two sides coincide
/// analytically, in units of machine epsilon times `|ln rhs|`.
const EQUALITY_SLACK_ULPS: f64 = 64.0;

impl<T: Real> InequalityReport<T> {
    /// Compares `exp(ln_lhs)` against `exp(ln_rhs)`.
    pub fn from_logs(name: StepName, ln_lhs: T, ln_rhs: T, strict: bool, params: StepParams<T>) -> Self {
        let margin = if ln_lhs == ln_rhs { T::zero() } else { ln_rhs - ln_lhs };
        let holds = if strict {
            ln_lhs < ln_rhs
        } else {
            let slack = T::epsilon() * lit(EQUALITY_SLACK_ULPS) * ln_rhs.abs().max(T::one());
            ln_lhs <= ln_rhs || (ln_rhs.is_finite() && ln_lhs <= ln_rhs + slack)
        };
        Self {
            name,
            lhs: ln_lhs.exp(),
            rhs: ln_rhs.exp(),
            ln_lhs,
            ln_rhs,
            margin,
            strict,
            holds,
            params,
            printed_constant: None,
        }
    }

    /// Compares two nonnegative values.
    pub fn from_values(name: StepName, lhs: T, rhs: T, strict: bool, params: StepParams<T>) -> Self {
        let mut r = Self::from_logs(name, lhs.ln(), rhs.ln(), strict, params);
        r.lhs = lhs;
        r.rhs = rhs;
        r
    }

    /// Uses a separately computed log-margin, for sides too close to resolve
    /// by subtracting their logarithms.
    pub fn with_log_margin(
        name: StepName,
        ln_lhs: T,
        ln_rhs: T,
        margin: T,
        strict: bool,
        params: StepParams<T>,
    ) -> Self {
        let mut r = Self::from_logs(name, ln_lhs, ln_rhs, strict, params);
        r.margin = margin;
        r.holds = if strict {
            margin > T::zero()
        } else {
            margin >= T::zero()
        };
        r
    }

    pub fn with_printed_constant(mut self, ln_rhs: T) -> Self {
        self.printed_constant = Some(PrintedConstant {
            rhs: ln_rhs.exp(),
            holds: if self.strict {
                self.ln_lhs < ln_rhs
            } else {
                self.ln_lhs <= ln_rhs
            },
        });
        self
    }
}
