//! Closed-form moment bounds and the verifiers for each link of their proof.
//!
//! The main bound reads
//!
//! ```text
//! E|X_{i:n}|^k < C(ρ) · (E|X|^δ / g(i/(n+1)))^ρ,   ρ = k/δ,  g(u) = u(1−u),
//! C(ρ) = 2 √ρ e^{ρ + 7/6},
//! ```
//!
//! valid for `n ≥ 2ρ + 1` and `ρ ≤ i ≤ n − ρ + 1`.

mod report;
mod steps;

use std::fmt;

use serde::Serialize;

pub use report::{InequalityReport, PrintedConstant, StepName, StepParams};
pub use steps::{
    chebyshev_check, chebyshev_sweep, check_beta_ratio_lower, check_beta_ratio_upper, check_central_chain,
    check_edge_cases, holder_i1_bound, holder_i1_check, stirling_check,
};

use crate::error::{Error, Result};
use crate::order_moments::{MomentParams, OrderStatSpec};
use crate::scalar::{from_usize, lit, Real};

/// `C(ρ) = 2 √ρ e^{ρ + 7/6}`.
pub fn c_rho<T: Real>(rho: T) -> T {
    lit::<T>(2.0) * rho.sqrt() * (rho + lit(7.0 / 6.0)).exp()
}

/// `g(u) = u(1 − u)`.
pub fn g<T: Real>(u: T) -> T {
    u * (T::one() - u)
}

/// `g(i/(n+1))` from the integer pair.
pub fn g_rank<T: Real>(n: usize, i: T) -> T {
    let np1: T = from_usize(n + 1);
    i * (np1 - i) / (np1 * np1)
}

/// Which hypothesis of the main bound fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inapplicable {
    /// `n < 2ρ + 1`.
    SampleTooSmall { n: usize, minimum: f64 },
    /// `i < ρ`.
    RankBelowRho { i: usize, rho: f64 },
    /// `i > n − ρ + 1`.
    RankAboveLimit { i: usize, limit: f64 },
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::SampleTooSmall { n, minimum } => write!(f, "n < 2ρ+1 ({n} < {minimum})"),
            Inapplicable::RankBelowRho { i, rho } => write!(f, "i < ρ ({i} < {rho})"),
            Inapplicable::RankAboveLimit { i, limit } => write!(f, "i > n−ρ+1 ({i} > {limit})"),
        }
    }
}

/// Inputs of the main bound: exponents, rank, and `E|X|^δ` (may be `+∞`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams<T> {
    pub p: MomentParams<T>,
    pub s: OrderStatSpec,
    pub abs_moment_delta: T,
}

impl<T: Real> BoundParams<T> {
    pub fn new(p: MomentParams<T>, s: OrderStatSpec, abs_moment_delta: T) -> Result<Self> {
        if abs_moment_delta.is_nan() || abs_moment_delta < T::zero() {
            return Err(Error::Domain(format!(
                "E|X|^δ must be nonnegative, got {abs_moment_delta}"
            )));
        }
        Ok(Self { p, s, abs_moment_delta })
    }

    pub fn check_applicable(&self) -> std::result::Result<(), Inapplicable> {
        applicability(self.s, self.p.rho)
    }
}

pub fn applicability<T: Real>(s: OrderStatSpec, rho: T) -> std::result::Result<(), Inapplicable> {
    let n: T = from_usize(s.n());
    let i: T = from_usize(s.i());
    let minimum = lit::<T>(2.0) * rho + T::one();
    let to64 = |x: T| x.to_f64().unwrap_or(f64::NAN);
    if n < minimum {
        return Err(Inapplicable::SampleTooSmall {
            n: s.n(),
            minimum: to64(minimum),
        });
    }
    if i < rho {
        return Err(Inapplicable::RankBelowRho {
            i: s.i(),
            rho: to64(rho),
        });
    }
    let limit = n - rho + T::one();
    if i > limit {
        return Err(Inapplicable::RankAboveLimit {
            i: s.i(),
            limit: to64(limit),
        });
    }
    Ok(())
}

/// `C(ρ) · (E|X|^δ / g(i/(n+1)))^ρ`; `+∞` when the moment is infinite.
pub fn theorem1_bound<T: Real>(b: &BoundParams<T>) -> Result<T> {
    b.check_applicable()
        .map_err(|why| Error::Precondition(format!("bound not applicable: {why}")))?;
    if b.abs_moment_delta.is_infinite() {
        return Ok(T::infinity());
    }
    let rho = b.p.rho;
    let gi = g_rank(b.s.n(), from_usize::<T>(b.s.i()));
    Ok(c_rho(rho) * (b.abs_moment_delta / gi).powf(rho))
}

/// The rank-free constant `C(α, β, ρ) = C(ρ) · min(g(α/2), g(β))^{−ρ}`.
///
/// For `nα < i < nβ` one has `α/2 < i/(n+1) < β`, and the concave `g`
/// attains its minimum over that interval at an end.
pub fn consequence_constant<T: Real>(alpha: T, beta: T, rho: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < beta && beta < T::one()) {
        return Err(Error::Precondition(format!(
            "need 0 < α < β < 1, got α = {alpha}, β = {beta}"
        )));
    }
    if !(rho > T::zero() && rho.is_finite()) {
        return Err(Error::Domain(format!("ρ must be positive, got {rho}")));
    }
    let floor = g(alpha * lit(0.5)).min(g(beta));
    Ok(c_rho(rho) * floor.powf(-rho))
}

/// `C(α, β, ρ) · (E|X|^δ)^ρ`.
pub fn consequence_bound<T: Real>(abs_moment_delta: T, alpha: T, beta: T, rho: T) -> Result<T> {
    let c = consequence_constant(alpha, beta, rho)?;
    if abs_moment_delta.is_infinite() {
        return Ok(T::infinity());
    }
    if abs_moment_delta == T::zero() {
        return Ok(T::zero());
    }
    Ok(c * abs_moment_delta.powf(rho))
}

/// Branch of the case analysis covering `(i, n, ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProofCase {
    /// `ρ + 1 ≤ i ≤ n − ρ`.
    Central,
    /// `ρ ≤ i < ρ + 1`.
    LowerEdge,
    /// `n − ρ < i ≤ n − ρ + 1`.
    UpperEdge,
    Invalid,
}

impl ProofCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProofCase::Central => "Central",
            ProofCase::LowerEdge => "LowerEdge",
            ProofCase::UpperEdge => "UpperEdge",
            ProofCase::Invalid => "Invalid",
        }
    }
}

impl fmt::Display for ProofCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies a rank. Samples below `2ρ + 1` are `Invalid` whatever `i`.
pub fn proof_case<T: Real>(s: OrderStatSpec, rho: T) -> ProofCase {
    let n: T = from_usize(s.n());
    let i: T = from_usize(s.i());
    if !(rho > T::zero()) || n < lit::<T>(2.0) * rho + T::one() {
        return ProofCase::Invalid;
    }
    if rho + T::one() <= i && i <= n - rho {
        ProofCase::Central
    } else if rho <= i && i < rho + T::one() {
        ProofCase::LowerEdge
    } else if n - rho < i && i <= n - rho + T::one() {
        ProofCase::UpperEdge
    } else {
        ProofCase::Invalid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(k: f64, delta: f64, n: usize, i: usize, m: f64) -> BoundParams<f64> {
        BoundParams::new(
            MomentParams::new(k, delta).unwrap(),
            OrderStatSpec::new(n, i).unwrap(),
            m,
        )
        .unwrap()
    }

    #[test]
    fn c_rho_values() {
        assert_relative_eq!(c_rho(1.0_f64), 2.0 * (13.0_f64 / 6.0).exp(), max_relative = 1e-15);
        assert_relative_eq!(c_rho(1.0_f64), 17.458_276_727_440_265, max_relative = 1e-14);
        assert_relative_eq!(c_rho(2.0_f64), 67.113_649_093_814_07, max_relative = 1e-14);
        for r in [1.0, 1.5, 3.0, 10.0] {
            assert!(c_rho(r) > 2.0);
        }
    }

    #[test]
    fn theorem1_examples() {
        let b = theorem1_bound(&params(1.0, 1.0, 9, 5, 0.5)).unwrap();
        assert_relative_eq!(b, 2.0 * c_rho(1.0), max_relative = 1e-14);
        assert_eq!(theorem1_bound(&params(1.0, 1.0, 9, 5, 0.0)).unwrap(), 0.0);
        let b = theorem1_bound(&params(2.0, 1.0, 9, 5, 1.0)).unwrap();
        assert_relative_eq!(b, 16.0 * c_rho(2.0), max_relative = 1e-14);
        assert_relative_eq!(b, 1073.818_385_5, max_relative = 1e-9);
        let b = theorem1_bound(&params(1.0, 1.0, 9, 9, 0.5)).unwrap();
        assert_relative_eq!(b, c_rho(1.0) * 0.5 / 0.09 * (100.0 / 99.0) * 0.99, max_relative = 1e-12);
        assert_eq!(
            theorem1_bound(&params(1.0, 1.0, 9, 5, f64::INFINITY)).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn theorem1_reports_failed_constraint() {
        let b = params(2.0, 1.0, 3, 2, 1.0);
        assert_eq!(
            b.check_applicable(),
            Err(Inapplicable::SampleTooSmall { n: 3, minimum: 5.0 })
        );
        assert!(matches!(theorem1_bound(&b), Err(Error::Precondition(m)) if m.contains("n < 2ρ+1")));
        let b = params(3.0, 1.0, 20, 2, 1.0);
        assert!(matches!(b.check_applicable(), Err(Inapplicable::RankBelowRho { .. })));
        let b = params(3.0, 1.0, 20, 19, 1.0);
        assert!(matches!(b.check_applicable(), Err(Inapplicable::RankAboveLimit { .. })));
        assert!(params(3.0, 1.0, 20, 18, 1.0).check_applicable().is_ok());
    }

    #[test]
    fn consequence_examples() {
        let c = consequence_bound(1.0_f64, 0.25, 0.75, 1.0).unwrap();
        assert_relative_eq!(c, c_rho(1.0) / 0.109_375, max_relative = 1e-14);
        assert_eq!(consequence_bound(0.0_f64, 0.25, 0.75, 1.0).unwrap(), 0.0);
        assert!(consequence_bound(1.0_f64, 0.75, 0.25, 1.0).is_err());
        assert!(consequence_bound(1.0_f64, 0.0, 0.5, 1.0).is_err());
        assert!(consequence_bound(1.0_f64, 0.5, 1.0, 1.0).is_err());
        // n = 100, i = 30: g(30/101)^{-1} ≈ 4.846 < 1/0.109375
        let t = theorem1_bound(&params(1.0, 1.0, 100, 30, 1.0)).unwrap();
        assert_relative_eq!(t / c_rho(1.0), 101.0 * 101.0 / (30.0 * 71.0), max_relative = 1e-14);
        assert!(t <= c);
    }

    #[test]
    fn proof_case_examples() {
        let s = |n, i| OrderStatSpec::new(n, i).unwrap();
        assert_eq!(proof_case(s(9, 5), 1.0), ProofCase::Central);
        assert_eq!(proof_case(s(9, 1), 1.0), ProofCase::LowerEdge);
        assert_eq!(proof_case(s(9, 9), 1.0), ProofCase::UpperEdge);
        assert_eq!(proof_case(s(9, 1), 1.5), ProofCase::Invalid);
        assert_eq!(proof_case(s(9, 2), 1.5), ProofCase::LowerEdge);
        assert_eq!(proof_case(s(9, 8), 1.5), ProofCase::UpperEdge);
        assert_eq!(proof_case(s(9, 9), 1.5), ProofCase::Invalid);
        assert_eq!(proof_case(s(3, 2), 2.0), ProofCase::Invalid);
    }
}
