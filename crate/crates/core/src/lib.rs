//! Absolute moments of order statistics `E|X_{i:n}|^k`.
//!
//! Three independent evaluators ([`moment_quadrature`],
//! [`moment_discrete_oracle`], [`moment_monte_carlo`]) are paired with the
//! closed-form bound `C(ρ) (E|X|^δ / g(i/(n+1)))^ρ` and a verifier for each
//! inequality used to establish it.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*64`
//! and `*32` aliases below fix the scalar.
//!
//! ```
//! use ordmoment::{moment_quadrature, theorem1_bound, BoundParams, Distribution64, MomentParams, OrderStatSpec};
//!
//! let d = Distribution64::uniform();
//! let s = OrderStatSpec::new(9, 5).unwrap();
//! let m = moment_quadrature(&d, s, 1.0).unwrap();
//! assert!((m.value - 0.5).abs() < 1e-12);
//!
//! let p = MomentParams::new(1.0, 1.0).unwrap();
//! let b = theorem1_bound(&BoundParams::new(p, s, 0.5).unwrap()).unwrap();
//! assert!(m.value < b);
//! ```

pub mod bounds;
pub mod distributions;
pub mod error;
pub mod order_moments;
pub mod quadrature;
pub mod scalar;
pub mod special;

pub use bounds::{
    applicability, c_rho, consequence_bound, consequence_constant, g, g_rank, proof_case, theorem1_bound, BoundParams,
    Inapplicable, InequalityReport, ProofCase, StepName, StepParams,
};
pub use distributions::{
    abs_moment_numeric, by_name, make_zoo, quantile_of_finite, Distribution, FiniteDiscrete, Law, NumericMoment,
    ZOO_NAMES,
};
pub use error::{Error, Result};
pub use order_moments::{
    moment_discrete_oracle, moment_monte_carlo, moment_quadrature, monte_carlo_all_ranks, Method, MomentEstimate,
    MomentParams, MonteCarloTable, OrderStatSpec,
};
pub use scalar::{lit, Real};
pub use special::{gamma_ratio, log_beta, log_gamma, log_gamma_ratio, stirling_sandwich, SandwichResult};

pub type Distribution64 = Distribution<f64>;
pub type Distribution32 = Distribution<f32>;
pub type FiniteDiscrete64 = FiniteDiscrete<f64>;
pub type FiniteDiscrete32 = FiniteDiscrete<f32>;
pub type MomentParams64 = MomentParams<f64>;
pub type MomentParams32 = MomentParams<f32>;
pub type MomentEstimate64 = MomentEstimate<f64>;
pub type MomentEstimate32 = MomentEstimate<f32>;
pub type BoundParams64 = BoundParams<f64>;
pub type BoundParams32 = BoundParams<f32>;
pub type InequalityReport64 = InequalityReport<f64>;
pub type InequalityReport32 = InequalityReport<f32>;
pub type SandwichResult64 = SandwichResult<f64>;
pub type SandwichResult32 = SandwichResult<f32>;
