//! Quantile-function view of the laws used as test corpus.
//!
//! Every law is described by `F⁻¹(u) = inf{x : F(x) ≥ u}` on `(0, 1)`, the
//! mass `F(0)`, and (when known) the closed form of `E|X|^δ`. Samples are
//! produced by inverse transform, so a sampler and its quantile share a law
//! by construction.

mod finite;
mod normal;

use rand::RngCore;
use serde::Serialize;

pub use finite::{quantile_of_finite, FiniteDiscrete, MASS_TOLERANCE};

use crate::error::{Error, Result};
use crate::order_moments::{self, OrderStatSpec};
use crate::scalar::{lit, Real};
use crate::special::log_gamma;

/// The concrete shape of a law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Law<T> {
    Uniform,
    /// Exponential with unit rate.
    Exponential,
    StandardNormal,
    /// Pareto on `[1, ∞)` with tail index `alpha`.
    Pareto {
        alpha: T,
    },
    Finite(FiniteDiscrete<T>),
    /// `scale · X` for `X` from `base`, `scale > 0`.
    Scaled {
        base: Box<Law<T>>,
        scale: T,
    },
}

impl<T: Real> Law<T> {
    fn quantile_split(&self, u: T, v: T) -> T {
        match self {
            Law::Uniform => u,
            Law::Exponential => -v.ln(),
            Law::StandardNormal => normal::normal_quantile(u, v),
            Law::Pareto { alpha } => v.powf(-alpha.recip()),
            Law::Finite(f) => f.quantile_unchecked(u),
            Law::Scaled { base, scale } => *scale * base.quantile_split(u, v),
        }
    }

    fn cdf_at_zero(&self) -> T {
        match self {
            Law::Uniform | Law::Exponential | Law::Pareto { .. } => T::zero(),
            Law::StandardNormal => lit(0.5),
            Law::Finite(f) => f.cdf_at_zero(),
            Law::Scaled { base, .. } => base.cdf_at_zero(),
        }
    }

    fn abs_moment_closed_form(&self, delta: T) -> Option<T> {
        match self {
            Law::Uniform => Some((T::one() + delta).recip()),
            Law::Exponential => log_gamma(T::one() + delta).ok().map(T::exp),
            Law::StandardNormal => {
                let half_delta = lit::<T>(0.5) * delta;
                let log = half_delta * lit::<T>(2.0).ln() + log_gamma(half_delta + lit(0.5)).ok()?
                    - lit::<T>(0.5) * T::PI().ln();
                Some(log.exp())
            }
            Law::Pareto { alpha } => {
                if delta < *alpha {
                    Some(*alpha / (*alpha - delta))
                } else {
                    Some(T::infinity())
                }
            }
            Law::Finite(f) => Some(f.abs_moment(delta)),
            Law::Scaled { base, scale } => base.abs_moment_closed_form(delta).map(|m| scale.powf(delta) * m),
        }
    }

    fn finite(&self) -> Option<&FiniteDiscrete<T>> {
        match self {
            Law::Finite(f) => Some(f),
            _ => None,
        }
    }

    fn jump_points(&self) -> Vec<T> {
        match self {
            Law::Finite(f) => {
                let c = f.cumulative();
                c[..c.len() - 1].to_vec()
            }
            Law::Scaled { base, .. } => base.jump_points(),
            _ => Vec::new(),
        }
    }

    fn is_step(&self) -> bool {
        match self {
            Law::Finite(_) => true,
            Law::Scaled { base, .. } => base.is_step(),
            _ => false,
        }
    }
}

/// A named law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution<T> {
    name: String,
    law: Law<T>,
}

impl<T: Real> Distribution<T> {
    pub fn new(name: impl Into<String>, law: Law<T>) -> Result<Self> {
        if let Law::Pareto { alpha } = &law {
            if !(alpha.is_finite() && *alpha > T::zero()) {
                return Err(Error::InvalidDistribution(format!(
                    "Pareto index {alpha} must be positive"
                )));
            }
        }
        if let Law::Scaled { scale, .. } = &law {
            if !(scale.is_finite() && *scale > T::zero()) {
                return Err(Error::InvalidDistribution(format!("scale {scale} must be positive")));
            }
        }
        Ok(Self { name: name.into(), law })
    }

    pub fn uniform() -> Self {
        Self::new("uniform", Law::Uniform).unwrap()
    }

    pub fn exponential() -> Self {
        Self::new("exponential", Law::Exponential).unwrap()
    }

    pub fn standard_normal() -> Self {
        Self::new("normal", Law::StandardNormal).unwrap()
    }

    pub fn pareto(alpha: T) -> Result<Self> {
        Self::new(format!("pareto{alpha}"), Law::Pareto { alpha })
    }

    pub fn finite(name: impl Into<String>, law: FiniteDiscrete<T>) -> Self {
        Self::new(name, Law::Finite(law)).unwrap()
    }

    /// The law of `scale · X`.
    pub fn scaled(&self, scale: T) -> Result<Self> {
        Self::new(
            format!("{}*{scale}", self.name),
            Law::Scaled {
                base: Box::new(self.law.clone()),
                scale,
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn law(&self) -> &Law<T> {
        &self.law
    }

    /// `F⁻¹(u)` for `u` in `(0, 1)`.
    pub fn quantile(&self, u: T) -> Result<T> {
        if !(u > T::zero() && u < T::one()) {
            return Err(Error::Domain(format!("quantile level {u} outside (0, 1)")));
        }
        Ok(self.law.quantile_split(u, T::one() - u))
    }

    /// `F⁻¹` at the level `u` whose complement `v = 1 − u` is supplied
    /// separately, so that levels within an ulp of 1 keep their precision.
    pub fn quantile_split(&self, u: T, v: T) -> T {
        self.law.quantile_split(u, v)
    }

    pub fn cdf_at_zero(&self) -> T {
        self.law.cdf_at_zero()
    }

    /// `E|X|^δ` when a closed form is known; `+∞` for divergent moments.
    pub fn abs_moment_closed_form(&self, delta: T) -> Option<T> {
        self.law.abs_moment_closed_form(delta)
    }

    pub fn as_finite(&self) -> Option<&FiniteDiscrete<T>> {
        self.law.finite()
    }

    /// Levels in `(0, 1)` at which the quantile jumps.
    pub fn jump_points(&self) -> Vec<T> {
        self.law.jump_points()
    }

    /// True when the quantile is piecewise constant.
    pub fn is_step(&self) -> bool {
        self.law.is_step()
    }

    /// Draws one variate by inverse transform from a uniform on the open
    /// interval `(0, 1)` built from 53 random bits.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> T {
        let (u, v) = open_unit(rng);
        self.law.quantile_split(lit(u), lit(v))
    }
}

/// Uniform level on `(0, 1)` together with its exact complement.
pub(crate) fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> (f64, f64) {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    let u = ((rng.next_u64() >> 11) as f64 + 0.5) * SCALE;
    (u, 1.0 - u)
}

/// `E|X|^δ = ∫₀¹ |F⁻¹(u)|^δ du`, by the same quadrature engine used for order
/// statistics (it is the `n = i = 1` case).
///
/// Divergent integrals come back as `+∞`. Failure to converge without
/// evidence of divergence is [`Error::Tolerance`].
pub fn abs_moment_numeric<T: Real>(d: &Distribution<T>, delta: T) -> Result<NumericMoment<T>> {
    let spec = OrderStatSpec::new(1, 1)?;
    let est = order_moments::moment_quadrature(d, spec, delta)?;
    Ok(NumericMoment {
        value: est.value,
        error_bound: est.error_bound,
        diverged: est.diverged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericMoment<T> {
    pub value: T,
    pub error_bound: T,
    pub diverged: bool,
}

/// Names accepted by [`by_name`], in zoo order.
pub const ZOO_NAMES: [&str; 8] = [
    "uniform",
    "exponential",
    "normal",
    "pareto1.5",
    "pareto3",
    "two_point",
    "three_atom",
    "four_atom",
];

/// The reference corpus of laws.
pub fn make_zoo<T: Real>() -> Vec<Distribution<T>> {
    ZOO_NAMES
        .iter()
        .map(|n| by_name(n).expect("zoo names resolve"))
        .collect()
}

/// Looks up a zoo member. `pareto<alpha>` accepts any positive index.
pub fn by_name<T: Real>(name: &str) -> Option<Distribution<T>> {
    let finite = |atoms: &[(f64, f64)]| {
        let atoms = atoms.iter().map(|&(x, p)| (lit(x), lit(p))).collect();
        Distribution::finite(name, FiniteDiscrete::new(atoms).expect("valid zoo atoms"))
    };
    match name {
        "uniform" => Some(Distribution::uniform()),
        "exponential" => Some(Distribution::exponential()),
        "normal" => Some(Distribution::standard_normal()),
        "two_point" => Some(finite(&[(-1.0, 0.5), (1.0, 0.5)])),
        "three_atom" => Some(finite(&[(-2.0, 0.25), (0.0, 0.5), (3.0, 0.25)])),
        "four_atom" => Some(finite(&[(-2.0, 0.15), (-0.5, 0.35), (1.0, 0.3), (2.5, 0.2)])),
        _ => {
            let alpha: f64 = name.strip_prefix("pareto")?.parse().ok()?;
            let d = Distribution::pareto(lit(alpha)).ok()?;
            Some(Distribution::new(name, d.law).unwrap())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zoo_contents() {
        let zoo = make_zoo::<f64>();
        assert_eq!(zoo.len(), ZOO_NAMES.len());
        let names: Vec<_> = zoo.iter().map(|d| d.name().to_string()).collect();
        assert_eq!(names, ZOO_NAMES);
        assert!(zoo.iter().filter(|d| d.as_finite().is_some()).any(|d| {
            let f = d.as_finite().unwrap();
            (3..=4).contains(&f.len()) && f.atoms()[0].0 < 0.0 && f.atoms()[f.len() - 1].0 > 0.0
        }));
    }

    #[test]
    fn closed_form_examples() {
        let m = |name: &str, delta: f64| by_name::<f64>(name).unwrap().abs_moment_closed_form(delta).unwrap();
        assert_relative_eq!(m("uniform", 1.0), 0.5);
        assert_relative_eq!(m("exponential", 2.0), 2.0, max_relative = 1e-14);
        assert_eq!(m("pareto1.5", 2.0), f64::INFINITY);
        assert_eq!(m("pareto3", 3.0), f64::INFINITY);
        assert_relative_eq!(m("pareto3", 1.0), 1.5);
        assert_relative_eq!(
            m("normal", 1.0),
            (2.0 / std::f64::consts::PI).sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(m("normal", 2.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(m("two_point", 0.7), 1.0);
    }

    #[test]
    fn quantile_forms() {
        let e = Distribution::<f64>::exponential();
        assert_relative_eq!(e.quantile(0.9).unwrap(), -(0.1_f64).ln(), max_relative = 1e-15);
        let p = by_name::<f64>("pareto3").unwrap();
        assert_relative_eq!(p.quantile(0.875).unwrap(), 2.0, max_relative = 1e-15);
        assert!(Distribution::<f64>::uniform().quantile(1.0).is_err());
        let s = e.scaled(10.0).unwrap();
        assert_relative_eq!(s.quantile(0.5).unwrap(), 10.0 * 2.0_f64.ln(), max_relative = 1e-15);
        assert!(e.scaled(-1.0).is_err());
        assert!(Distribution::pareto(0.0_f64).is_err());
    }

    #[test]
    fn quantile_monotone_and_sign_consistent() {
        for d in make_zoo::<f64>() {
            let f0 = d.cdf_at_zero();
            let mut prev = f64::NEG_INFINITY;
            for j in 1..2000 {
                let u = j as f64 / 2000.0;
                let q = d.quantile(u).unwrap();
                assert!(q >= prev, "{} not monotone at {u}", d.name());
                if u < f0 {
                    assert!(q <= 0.0, "{} at {u}", d.name());
                }
                if u > f0 {
                    assert!(q >= 0.0, "{} at {u}", d.name());
                }
                prev = q;
            }
        }
    }

    #[test]
    fn sampler_matches_quantile_law() {
        // Empirical CDF of samples evaluated at quantile levels should sit
        // near the level itself (coarse Kolmogorov-style comparison).
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in make_zoo::<f64>() {
            let n = 20_000;
            let mut xs: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for j in 1..20 {
                let u = j as f64 / 20.0;
                let q = d.quantile(u).unwrap();
                let below = xs.partition_point(|&x| x < q) as f64 / n as f64;
                let at_or_below = xs.partition_point(|&x| x <= q) as f64 / n as f64;
                // F(q−) ≤ u ≤ F(q) for the generalized inverse.
                assert!(below <= u + 0.02 && at_or_below >= u - 0.02, "{} at {u}", d.name());
            }
        }
    }

    #[test]
    fn pareto_names_parse() {
        let d = by_name::<f64>("pareto2.5").unwrap();
        assert_eq!(d.name(), "pareto2.5");
        assert_eq!(d.abs_moment_closed_form(1.0), Some(2.5 / 1.5));
        assert!(by_name::<f64>("pareto-1").is_none());
        assert!(by_name::<f64>("cauchy").is_none());
    }
}
