//! Three independent routes to `E|X_{i:n}|^k`.
//!
//! * [`moment_quadrature`] integrates `|F⁻¹(u)|^k` against the density of the
//!   `i`-th uniform order statistic, `u^{i−1}(1−u)^{n−i} / B(i, n−i+1)`.
//! * [`moment_discrete_oracle`] enumerates the exact law of `X_{i:n}` for a
//!   finite-support `F` through binomial tail probabilities.
//! * [`moment_monte_carlo`] simulates, with one deterministic random stream
//!   per repetition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{open_unit, Distribution, FiniteDiscrete};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_panel, Panel, PanelOutcome, SingularEnds, TanhSinhConfig};
use crate::scalar::{from_usize, lit, ln_unit, Real};
use crate::special::log_beta;

/// Rank `i` of a sample of size `n`, `1 ≤ i ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderStatSpec {
    n: usize,
    i: usize,
}

impl OrderStatSpec {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i == 0 || i > n {
            return Err(Error::Precondition(format!(
                "order statistic requires 1 ≤ i ≤ n, got i = {i}, n = {n}"
            )));
        }
        Ok(Self { n, i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    /// The rank that swaps roles under `X ↦ −X`.
    pub fn mirrored(&self) -> Self {
        Self {
            n: self.n,
            i: self.n - self.i + 1,
        }
    }
}

/// The exponent pair `(k, δ)` with `ρ = k/δ` and its integer part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentParams<T> {
    pub k: T,
    pub delta: T,
    pub rho: T,
    pub floor_rho: u32,
}

impl<T: Real> MomentParams<T> {
    pub fn new(k: T, delta: T) -> Result<Self> {
        for (what, x) in [("k", k), ("delta", delta)] {
            if !(x.is_finite() && x > T::zero()) {
                return Err(Error::Domain(format!("{what} must be finite and positive, got {x}")));
            }
        }
        let rho = k / delta;
        Ok(Self {
            k,
            delta,
            rho,
            floor_rho: rho.floor().to_u32().unwrap_or(u32::MAX),
        })
    }

    pub fn rho_is_integer(&self) -> bool {
        self.rho.fract() == T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    DiscreteOracle,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::DiscreteOracle => "discrete_oracle",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// A computed `E|X_{i:n}|^k`.
///
/// `diverged` implies `value = +∞`; such estimates take no part in
/// inequality comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate<T> {
    pub value: T,
    /// Absolute; quadrature self-estimate, rounding bound, or standard error
    /// depending on `method`.
    pub error_bound: T,
    pub method: Method,
    pub diverged: bool,
}

impl<T: Real> MomentEstimate<T> {
    fn diverged(method: Method) -> Self {
        Self {
            value: T::infinity(),
            error_bound: T::infinity(),
            method,
            diverged: true,
        }
    }
}

fn check_k<T: Real>(k: T) -> Result<()> {
    if k.is_finite() && k > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "moment order k must be finite and positive, got {k}"
        )))
    }
}

/// Absolute error the quadrature must meet: `max(1e-10, 1e-8·value)`,
/// widened for low-precision scalars.
pub fn quadrature_target<T: Real>(value: T) -> T {
    let floor = T::epsilon() * lit(1e3);
    let abs = lit::<T>(1e-10).max(floor);
    let rel = lit::<T>(1e-8).max(floor);
    abs.max(rel * value.abs())
}

/// Panel boundaries: quantile jumps, the sign change at `F(0)`, and a few
/// points around the mode of the beta weight.
fn breakpoints<T: Real>(d: &Distribution<T>, s: OrderStatSpec) -> Vec<T> {
    let mut pts = d.jump_points();
    let f0 = d.cdf_at_zero();
    if f0 > T::zero() && f0 < T::one() {
        pts.push(f0);
    }
    if s.n > 1 {
        let n: T = from_usize(s.n);
        let i: T = from_usize(s.i);
        let mode = (i - T::one()) / (n - T::one());
        let np1 = n + T::one();
        let sd = (i * (np1 - i) / (np1 * np1 * (n + lit(2.0)))).sqrt();
        for m in [-8.0, -3.0, 0.0, 3.0, 8.0] {
            pts.push(mode + lit::<T>(m) * sd);
        }
    }
    pts.retain(|&p| p > T::zero() && p < T::one());
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

/// `E|X_{i:n}|^k = (1/B(i, n−i+1)) ∫₀¹ |F⁻¹(u)|^k u^{i−1} (1−u)^{n−i} du`.
///
/// The integrand is assembled in log space and is zero wherever
/// `F⁻¹(u) = 0`. A non-integrable end gives `diverged = true`; a finite
/// integral whose error estimate misses [`quadrature_target`] is
/// [`Error::Tolerance`].
pub fn moment_quadrature<T: Real>(d: &Distribution<T>, s: OrderStatSpec, k: T) -> Result<MomentEstimate<T>> {
    check_k(k)?;
    let n: T = from_usize(s.n);
    let i: T = from_usize(s.i);
    let lower_power = i - T::one();
    let upper_power = n - i;
    let ln_norm = log_beta(i, n - i + T::one())?;
    let ln_weight = move |u: T, v: T| {
        let mut w = -ln_norm;
        if lower_power > T::zero() {
            w = w + lower_power * ln_unit(u, v);
        }
        if upper_power > T::zero() {
            w = w + upper_power * ln_unit(v, u);
        }
        w
    };

    let cfg = TanhSinhConfig {
        rel_tol: lit::<T>(1e-13).max(T::epsilon() * lit(64.0)),
        ..Default::default()
    };

    let mut cuts = vec![T::zero()];
    cuts.extend(breakpoints(d, s));
    cuts.push(T::one());

    let step = d.is_step();
    let mut total = T::zero();
    let mut error = T::zero();
    for w in cuts.windows(2) {
        let panel = Panel::new(w[0], w[1]);
        let outcome = if step {
            let mid = panel.midpoint();
            let x = d.quantile_split(mid, T::one() - mid);
            if x == T::zero() {
                continue;
            }
            let ln_x = k * x.abs().ln();
            integrate_panel(&panel, &|u, v| ln_x + ln_weight(u, v), SingularEnds::default(), &cfg)?
        } else {
            let ends = SingularEnds {
                left: w[0] == T::zero(),
                right: w[1] == T::one(),
            };
            let ln_f = |u: T, v: T| {
                let q = d.quantile_split(u, v);
                if q == T::zero() {
                    T::neg_infinity()
                } else {
                    k * q.abs().ln() + ln_weight(u, v)
                }
            };
            integrate_panel(&panel, &ln_f, ends, &cfg)?
        };
        match outcome {
            PanelOutcome::Finite { value, error: e } => {
                total = total + value;
                error = error + e;
            }
            PanelOutcome::Diverged { .. } => return Ok(MomentEstimate::diverged(Method::Quadrature)),
        }
    }

    let target = quadrature_target(total);
    if !(error <= target) {
        return Err(Error::Tolerance {
            error_estimate: error.to_f64().unwrap_or(f64::NAN),
            target: target.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(MomentEstimate {
        value: total,
        error_bound: error,
        method: Method::Quadrature,
        diverged: false,
    })
}

/// `P(Bin(n, p) ≥ i)` with `q = 1 − p` supplied separately.
fn binomial_upper_tail<T: Real>(n: usize, i: usize, p: T, q: T) -> T {
    if p <= T::zero() {
        return T::zero();
    }
    if q <= T::zero() {
        return T::one();
    }
    let (ln_p, ln_q) = (p.ln(), q.ln());
    let nf: T = from_usize(n);
    // ln C(n, m) built up by the multiplicative recurrence.
    let mut ln_choose = T::zero();
    let mut tail = T::zero();
    for m in 0..=n {
        if m > 0 {
            let mf: T = from_usize(m);
            ln_choose = ln_choose + ((nf - mf + T::one()) / mf).ln();
        }
        if m >= i {
            let mf: T = from_usize(m);
            tail = tail + (ln_choose + mf * ln_p + (nf - mf) * ln_q).exp();
        }
    }
    tail.min(T::one())
}

/// Exact `E|X_{i:n}|^k` for a finite law by enumerating the law of `X_{i:n}`:
/// `P(X_{i:n} ≤ x_j) = Σ_{m=i}^{n} C(n,m) F(x_j)^m (1 − F(x_j))^{n−m}`.
pub fn moment_discrete_oracle<T: Real>(d: &FiniteDiscrete<T>, s: OrderStatSpec, k: T) -> Result<MomentEstimate<T>> {
    check_k(k)?;
    let atoms = d.atoms();
    let last = atoms.len() - 1;
    let mut prev = T::zero();
    let mut value = T::zero();
    let mut scale = T::zero();
    for (j, &(x, _)) in atoms.iter().enumerate() {
        let at_or_below = if j == last {
            T::one()
        } else {
            binomial_upper_tail(s.n, s.i, d.cumulative()[j], d.upper_tail()[j])
        };
        let pmf = (at_or_below - prev).max(T::zero());
        prev = at_or_below;
        let mag = x.abs().powf(k);
        value = value + mag * pmf;
        scale = scale.max(mag);
    }
    let ops: T = from_usize(4 * (s.n + atoms.len()));
    Ok(MomentEstimate {
        value,
        error_bound: T::epsilon() * ops * scale,
        method: Method::DiscreteOracle,
        diverged: false,
    })
}

/// Repetitions per accumulation chunk. Fixed so that the reduction tree does
/// not depend on the thread pool.
const MC_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, Default)]
struct Welford<T> {
    count: usize,
    mean: T,
    m2: T,
}

impl<T: Real> Welford<T> {
    fn new() -> Self {
        Self {
            count: 0,
            mean: T::zero(),
            m2: T::zero(),
        }
    }

    fn push(&mut self, x: T) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean = self.mean + delta / from_usize(self.count);
        self.m2 = self.m2 + delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let na: T = from_usize(self.count);
        let nb: T = from_usize(other.count);
        let total = na + nb;
        let delta = other.mean - self.mean;
        self.mean = self.mean + delta * nb / total;
        self.m2 = self.m2 + other.m2 + delta * delta * na * nb / total;
        self.count += other.count;
    }

    fn standard_error(&self) -> T {
        let n: T = from_usize(self.count);
        (self.m2.max(T::zero()) / (n - T::one())).sqrt() / n.sqrt()
    }
}

/// Sorted sample of size `n` for repetition `rep`. The stream is a function
/// of `(seed, rep)` only.
fn replicate<T: Real>(d: &Distribution<T>, n: usize, seed: u64, rep: u64, buf: &mut Vec<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    buf.clear();
    buf.extend((0..n).map(|_| {
        let (u, v) = open_unit(&mut rng);
        d.quantile_split(lit(u), lit(v))
    }));
}

/// Monte Carlo estimates of `E|X_{i:n}|^k` for every rank `i` and every
/// exponent in `ks`, sharing one set of simulated samples.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloTable<T> {
    pub n: usize,
    pub ks: Vec<T>,
    pub reps: usize,
    /// Indexed `[i − 1][k index]`, holding `(mean, standard error)`.
    cells: Vec<Vec<(T, T)>>,
}

impl<T: Real> MonteCarloTable<T> {
    pub fn get(&self, i: usize, k_index: usize) -> Option<MomentEstimate<T>> {
        let &(mean, se) = self.cells.get(i.checked_sub(1)?)?.get(k_index)?;
        Some(MomentEstimate {
            value: mean,
            error_bound: se,
            method: Method::MonteCarlo,
            diverged: false,
        })
    }
}

fn check_reps(reps: usize) -> Result<()> {
    if reps < 2 {
        return Err(Error::Precondition(format!(
            "Monte Carlo needs at least 2 repetitions, got {reps}"
        )));
    }
    Ok(())
}

/// Runs `reps` repetitions of an `n`-sample, in parallel over fixed chunks,
/// and reduces them in chunk order. Output is bit-identical for identical
/// arguments whatever the thread count.
pub fn monte_carlo_all_ranks<T: Real>(
    d: &Distribution<T>,
    n: usize,
    ks: &[T],
    reps: usize,
    seed: u64,
) -> Result<MonteCarloTable<T>> {
    check_reps(reps)?;
    OrderStatSpec::new(n, 1)?;
    for &k in ks {
        check_k(k)?;
    }
    let chunks = reps.div_ceil(MC_CHUNK);
    let partials: Vec<Vec<Welford<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![Welford::new(); n * ks.len()];
            let mut buf = Vec::with_capacity(n);
            let start = c * MC_CHUNK;
            let end = (start + MC_CHUNK).min(reps);
            for rep in start..end {
                replicate(d, n, seed, rep as u64, &mut buf);
                buf.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
                for (r, &x) in buf.iter().enumerate() {
                    let ax = x.abs();
                    for (kj, &k) in ks.iter().enumerate() {
                        acc[r * ks.len() + kj].push(ax.powf(k));
                    }
                }
            }
            acc
        })
        .collect();

    let mut total = vec![Welford::new(); n * ks.len()];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    let cells = (0..n)
        .map(|r| {
            (0..ks.len())
                .map(|kj| {
                    let w = &total[r * ks.len() + kj];
                    (w.mean, w.standard_error())
                })
                .collect()
        })
        .collect();
    Ok(MonteCarloTable {
        n,
        ks: ks.to_vec(),
        reps,
        cells,
    })
}

/// Monte Carlo `E|X_{i:n}|^k` with `error_bound` equal to the standard error.
///
/// Uses the same per-repetition streams as [`monte_carlo_all_ranks`], so the
/// two agree exactly for matching arguments.
pub fn moment_monte_carlo<T: Real>(
    d: &Distribution<T>,
    s: OrderStatSpec,
    k: T,
    reps: usize,
    seed: u64,
) -> Result<MomentEstimate<T>> {
    check_reps(reps)?;
    check_k(k)?;
    let chunks = reps.div_ceil(MC_CHUNK);
    let partials: Vec<Welford<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Welford::new();
            let mut buf = Vec::with_capacity(s.n);
            let start = c * MC_CHUNK;
            for rep in start..(start + MC_CHUNK).min(reps) {
                replicate(d, s.n, seed, rep as u64, &mut buf);
                let (_, x, _) = buf.select_nth_unstable_by(s.i - 1, |a, b| a.partial_cmp(b).expect("finite samples"));
                acc.push(x.abs().powf(k));
            }
            acc
        })
        .collect();
    let mut total = Welford::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(MomentEstimate {
        value: total.mean,
        error_bound: total.standard_error(),
        method: Method::MonteCarlo,
        diverged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::by_name;
    use approx::assert_relative_eq;

    fn spec(n: usize, i: usize) -> OrderStatSpec {
        OrderStatSpec::new(n, i).unwrap()
    }

    fn finite(atoms: &[(f64, f64)]) -> FiniteDiscrete<f64> {
        FiniteDiscrete::new(atoms.to_vec()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(OrderStatSpec::new(0, 1).is_err());
        assert!(OrderStatSpec::new(3, 0).is_err());
        assert!(OrderStatSpec::new(3, 4).is_err());
        assert_eq!(spec(9, 2).mirrored(), spec(9, 8));
    }

    #[test]
    fn moment_params() {
        let p = MomentParams::new(3.0_f64, 2.0).unwrap();
        assert_eq!(p.rho, 1.5);
        assert_eq!(p.floor_rho, 1);
        assert!(!p.rho_is_integer());
        let p = MomentParams::new(0.5_f64, 0.5).unwrap();
        assert_eq!((p.rho, p.floor_rho), (1.0, 1));
        assert!(MomentParams::new(0.0_f64, 1.0).is_err());
        assert!(MomentParams::new(1.0_f64, f64::NAN).is_err());
    }

    #[test]
    fn quadrature_uniform_examples() {
        let u = Distribution::uniform();
        let m = moment_quadrature(&u, spec(9, 5), 1.0).unwrap();
        assert_relative_eq!(m.value, 0.5, max_relative = 1e-12);
        assert!(!m.diverged && m.method == Method::Quadrature);
        let m = moment_quadrature(&u, spec(4, 2), 2.0).unwrap();
        assert_relative_eq!(m.value, 0.2, max_relative = 1e-12);
    }

    #[test]
    fn quadrature_exponential_maximum() {
        let m = moment_quadrature(&Distribution::exponential(), spec(3, 3), 1.0).unwrap();
        assert_relative_eq!(m.value, 1.0 + 0.5 + 1.0 / 3.0, max_relative = 1e-11);
    }

    #[test]
    fn quadrature_normal_reference() {
        // 25-digit adaptive quadrature references.
        let d = Distribution::standard_normal();
        let m = moment_quadrature(&d, spec(5, 3), 1.0).unwrap();
        assert_relative_eq!(m.value, 0.426_737_751_362_816_1, max_relative = 1e-10);
        let m = moment_quadrature(&d, spec(5, 5), 2.0).unwrap();
        assert_relative_eq!(m.value, 1.800_020_435_970_632_8, max_relative = 1e-10);
        let m = moment_quadrature(&d, spec(11, 1), 0.5).unwrap();
        assert_relative_eq!(m.value, 1.237_331_417_219_320_3, max_relative = 1e-10);
    }

    #[test]
    fn quadrature_pareto_closed_form() {
        // E X_{i:n}^k = B(i, n−i+1−k/α) / B(i, n−i+1)
        for (name, n, i, k, expected) in [
            ("pareto3", 5, 4, 3.0, 5.0),
            ("pareto1.5", 5, 4, 2.0, 11.045_454_545_454_545),
            ("pareto3", 11, 6, 1.0, 1.285_209_488_016_172_9),
        ] {
            let d = by_name::<f64>(name).unwrap();
            let m = moment_quadrature(&d, spec(n, i), k).unwrap();
            assert_relative_eq!(m.value, expected, max_relative = 1e-9);
        }
    }

    #[test]
    fn quadrature_divergence() {
        let d = by_name::<f64>("pareto1.5").unwrap();
        let m = moment_quadrature(&d, spec(5, 5), 2.0).unwrap();
        assert!(m.diverged);
        assert_eq!(m.value, f64::INFINITY);
        // n − i − k/α = −1 exactly: logarithmic divergence.
        let d = by_name::<f64>("pareto3").unwrap();
        assert!(moment_quadrature(&d, spec(1, 1), 3.0).unwrap().diverged);
        assert!(!moment_quadrature(&d, spec(2, 1), 3.0).unwrap().diverged);
    }

    #[test]
    fn quadrature_degenerate_at_zero() {
        let d = Distribution::finite("zero", FiniteDiscrete::point_mass(0.0).unwrap());
        let m = moment_quadrature(&d, spec(7, 3), 1.5).unwrap();
        assert_eq!(m.value, 0.0);
        assert!(!m.diverged);
    }

    #[test]
    fn quadrature_rejects_bad_k() {
        assert!(moment_quadrature(&Distribution::<f64>::uniform(), spec(3, 1), 0.0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let d = finite(&[(0.0, 0.5), (1.0, 0.5)]);
        assert_relative_eq!(
            moment_discrete_oracle(&d, spec(2, 2), 1.0).unwrap().value,
            0.75,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            moment_discrete_oracle(&d, spec(2, 1), 1.0).unwrap().value,
            0.25,
            max_relative = 1e-15
        );
        let point = FiniteDiscrete::point_mass(-3.0).unwrap();
        for (n, i, k) in [(1, 1, 1.0), (7, 4, 2.5), (30, 30, 0.5)] {
            let m = moment_discrete_oracle(&point, spec(n, i), k).unwrap();
            assert_relative_eq!(m.value, 3.0_f64.powf(k), max_relative = 1e-15);
        }
        let two = finite(&[(-1.0, 0.5), (1.0, 0.5)]);
        assert_relative_eq!(
            moment_discrete_oracle(&two, spec(3, 2), 1.0).unwrap().value,
            1.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn oracle_matches_brute_force_enumeration() {
        // Enumerate all atom tuples of the sample directly.
        let d = finite(&[(-2.0, 0.2), (0.5, 0.5), (3.0, 0.3)]);
        let n = 4;
        for i in 1..=n {
            let mut expected = 0.0;
            for code in 0..3usize.pow(n as u32) {
                let mut c = code;
                let mut xs = Vec::new();
                let mut p = 1.0;
                for _ in 0..n {
                    let (x, px) = d.atoms()[c % 3];
                    xs.push(x);
                    p *= px;
                    c /= 3;
                }
                xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                expected += p * xs[i - 1].abs().powf(1.7);
            }
            let got = moment_discrete_oracle(&d, spec(n, i), 1.7).unwrap().value;
            assert_relative_eq!(got, expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn monte_carlo_uniform_median() {
        let m = moment_monte_carlo(&Distribution::<f64>::uniform(), spec(5, 3), 1.0, 100_000, 11).unwrap();
        assert!((m.value - 0.5).abs() <= 4.0 * m.error_bound, "{m:?}");
        assert_eq!(m.method, Method::MonteCarlo);
    }

    #[test]
    fn monte_carlo_degenerate_is_exact() {
        let d = Distribution::finite("two", FiniteDiscrete::point_mass(2.0).unwrap());
        let m = moment_monte_carlo(&d, spec(6, 2), 2.0, 5000, 3).unwrap();
        assert_eq!(m.value, 4.0);
        assert_eq!(m.error_bound, 0.0);
    }

    #[test]
    fn monte_carlo_two_point_median() {
        let d = by_name::<f64>("two_point").unwrap();
        let m = moment_monte_carlo(&d, spec(3, 2), 1.0, 10_000, 5).unwrap();
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn monte_carlo_reproducible_and_table_consistent() {
        let d = Distribution::<f64>::exponential();
        let a = moment_monte_carlo(&d, spec(7, 3), 1.5, 3000, 99).unwrap();
        let b = moment_monte_carlo(&d, spec(7, 3), 1.5, 3000, 99).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let table = monte_carlo_all_ranks(&d, 7, &[1.0, 1.5], 3000, 99).unwrap();
        let t = table.get(3, 1).unwrap();
        assert_eq!(t.value.to_bits(), a.value.to_bits());
        assert_eq!(t.error_bound.to_bits(), a.error_bound.to_bits());
        let c = moment_monte_carlo(&d, spec(7, 3), 1.5, 3000, 100).unwrap();
        assert_ne!(a.value, c.value);
        assert!(table.get(0, 0).is_none() && table.get(8, 0).is_none());
    }

    #[test]
    fn monte_carlo_thread_count_does_not_matter() {
        let d = Distribution::<f64>::standard_normal();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| moment_monte_carlo(&d, spec(9, 2), 2.0, 5000, 1).unwrap())
        };
        assert_eq!(run(1).value.to_bits(), run(4).value.to_bits());
    }

    #[test]
    fn monte_carlo_needs_two_reps() {
        assert!(moment_monte_carlo(&Distribution::<f64>::uniform(), spec(3, 1), 1.0, 1, 0).is_err());
    }
}
