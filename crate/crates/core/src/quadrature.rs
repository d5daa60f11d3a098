//! Double-exponential (tanh-sinh) quadrature on sub-panels of `[0, 1]`.
//!
//! Integrands are supplied in log form, `ln f(u, v)` with `v = 1 − u`, and the
//! nodes are generated together with their distances to both panel ends. A
//! node `10⁻²⁰⁰` away from the upper end therefore reaches the integrand with
//! `v = 10⁻²⁰⁰` intact instead of a rounded `u = 1`.
//!
//! Panels whose end coincides with `u = 0` or `u = 1` are probed for
//! non-integrable growth before integrating: the trimmed tail mass
//! `d · f(d)` is sampled at successively smaller trims `d`, and a tail that
//! does not shrink is reported as divergence.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// A sub-interval `[a, b]` of the unit interval with `1 − a` and `1 − b`
/// carried separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel<T> {
    pub a: T,
    pub b: T,
    pub one_minus_a: T,
    pub one_minus_b: T,
}

impl<T: Real> Panel<T> {
    pub fn new(a: T, b: T) -> Self {
        Self {
            a,
            b,
            one_minus_a: T::one() - a,
            one_minus_b: T::one() - b,
        }
    }

    pub fn width(&self) -> T {
        self.b - self.a
    }

    pub fn midpoint(&self) -> T {
        self.a + lit::<T>(0.5) * self.width()
    }

    /// Level at distance `d` from the left end, with its complement.
    fn at_left(&self, d: T) -> (T, T) {
        (self.a + d, self.one_minus_a - d)
    }

    /// Level at distance `d` from the right end, with its complement.
    fn at_right(&self, d: T) -> (T, T) {
        (self.b - d, self.one_minus_b + d)
    }
}

/// Which panel ends need the divergence probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SingularEnds {
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PanelOutcome<T> {
    Finite { value: T, error: T },
    Diverged { side: Side },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinhConfig<T> {
    /// Stop once successive levels differ by at most this fraction.
    pub rel_tol: T,
    pub min_level: usize,
    pub max_level: usize,
}

impl<T: Real> Default for TanhSinhConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: lit(1e-13),
            min_level: 4,
            max_level: 11,
        }
    }
}

/// Largest abscissa `t` before node distances underflow.
fn t_max<T: Real>() -> T {
    let budget = -T::min_positive_value().ln() * lit(0.9);
    (budget / T::PI()).asinh()
}

struct Node<T> {
    ln_weight: T,
    d_left: T,
    d_right: T,
}

/// Node at abscissa `t` for a panel of width `width`, without the step `h`.
fn node<T: Real>(t: T, width: T) -> Node<T> {
    let half_pi = T::FRAC_PI_2();
    let z = half_pi * t.sinh();
    let e = (-(z.abs() + z.abs())).exp();
    let near = width * e / (T::one() + e);
    let far = width / (T::one() + e);
    let (d_left, d_right) = if t >= T::zero() { (far, near) } else { (near, far) };
    // dx/dt = (w/2)(π/2) cosh t sech² z, sech² z = 4e/(1+e)²
    let ln_weight = (lit::<T>(0.5) * width * half_pi).ln() + t.cosh().ln() + lit::<T>(4.0).ln()
        - (z.abs() + z.abs())
        - lit::<T>(2.0) * e.ln_1p();
    Node {
        ln_weight,
        d_left,
        d_right,
    }
}

fn eval_node<T: Real, F: Fn(T, T) -> T>(panel: &Panel<T>, n: &Node<T>, ln_f: &F) -> T {
    if n.d_left <= T::zero() || n.d_right <= T::zero() {
        return T::zero();
    }
    let (u, v) = if n.d_left <= n.d_right {
        panel.at_left(n.d_left)
    } else {
        panel.at_right(n.d_right)
    };
    let lf = ln_f(u, v);
    if lf == T::neg_infinity() {
        T::zero()
    } else {
        (lf + n.ln_weight).exp()
    }
}

/// Result of a plain tanh-sinh run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinhResult<T> {
    pub value: T,
    /// Difference between the last two levels.
    pub error: T,
    pub converged: bool,
    /// Smallest node distance to either end.
    pub smallest_distance: T,
}

/// Integrates `exp(ln_f(u, 1 − u))` over the panel.
pub fn tanh_sinh<T: Real, F: Fn(T, T) -> T>(panel: &Panel<T>, ln_f: &F, cfg: &TanhSinhConfig<T>) -> TanhSinhResult<T> {
    let width = panel.width();
    let tm = t_max::<T>();
    let last_integer = tm.floor().to_i64().unwrap_or(0);

    let mut level_sum = T::zero();
    for j in -last_integer..=last_integer {
        let nd = node(lit::<T>(j as f64), width);
        level_sum = level_sum + eval_node(panel, &nd, ln_f);
    }
    let mut estimate = level_sum;
    let mut prev = estimate;
    let mut error = T::infinity();
    let mut converged = false;
    let mut h = T::one();

    for level in 1..=cfg.max_level {
        h = h * lit(0.5);
        let mut fresh = T::zero();
        let mut j = 1i64;
        loop {
            let t = h * lit::<T>(j as f64);
            if t > tm {
                break;
            }
            fresh = fresh + eval_node(panel, &node(t, width), ln_f) + eval_node(panel, &node(-t, width), ln_f);
            j += 2;
        }
        estimate = lit::<T>(0.5) * prev + h * fresh;
        error = (estimate - prev).abs();
        prev = estimate;
        if level >= cfg.min_level && error <= cfg.rel_tol * estimate.abs() {
            converged = true;
            break;
        }
    }

    let edge = node(tm, width);
    TanhSinhResult {
        value: estimate,
        error,
        converged,
        smallest_distance: edge.d_right.min(width),
    }
}

/// Trimmed-tail probe at one end: `Ok(Some(slope))` where `d·f(d) ~ d^slope`,
/// `Ok(None)` when the integrand vanishes at the end, or divergence.
fn probe_end<T: Real, F: Fn(T, T) -> T>(panel: &Panel<T>, side: Side, ln_f: &F) -> Result<Option<T>, Side> {
    let ln_min = T::min_positive_value().ln();
    let fractions = [1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0, 0.9];
    let mut ln_d = Vec::with_capacity(fractions.len());
    let mut ln_tail = Vec::with_capacity(fractions.len());
    for &c in &fractions {
        let ld = ln_min * lit(c);
        let d = ld.exp();
        let (u, v) = match side {
            Side::Left => panel.at_left(d),
            Side::Right => panel.at_right(d),
        };
        let lf = ln_f(u, v);
        if lf == T::neg_infinity() {
            return Ok(None);
        }
        ln_d.push(ld);
        ln_tail.push(ld + lf);
    }
    if ln_tail.iter().any(|x| x.is_nan()) {
        return Err(side);
    }
    let k = ln_tail.len();
    // Successive trims shrink d, so a convergent tail has positive slope.
    let slope = (ln_tail[k - 2] - ln_tail[k - 1]) / (ln_d[k - 2] - ln_d[k - 1]);
    if slope <= lit(1e-6) || ln_tail[k - 1] == T::infinity() {
        return Err(side);
    }
    Ok(Some(slope))
}

/// Integrates one panel, first probing flagged ends for divergence. The
/// tail mass beyond the outermost node is estimated from the probe and
/// added to the error.
pub fn integrate_panel<T: Real, F: Fn(T, T) -> T>(
    panel: &Panel<T>,
    ln_f: &F,
    ends: SingularEnds,
    cfg: &TanhSinhConfig<T>,
) -> Result<PanelOutcome<T>> {
    let mut slopes = [None, None];
    for (slot, (flag, side)) in [(ends.left, Side::Left), (ends.right, Side::Right)]
        .into_iter()
        .enumerate()
    {
        if !flag {
            continue;
        }
        match probe_end(panel, side, ln_f) {
            Ok(s) => slopes[slot] = s,
            Err(side) => return Ok(PanelOutcome::Diverged { side }),
        }
    }

    let res = tanh_sinh(panel, ln_f, cfg);
    if !res.value.is_finite() {
        return Err(Error::Tolerance {
            error_estimate: f64::INFINITY,
            target: 0.0,
        });
    }
    let mut error = res.error;
    let d = res.smallest_distance;
    for (slot, side) in [Side::Left, Side::Right].into_iter().enumerate() {
        if let Some(slope) = slopes[slot] {
            let (u, v) = match side {
                Side::Left => panel.at_left(d),
                Side::Right => panel.at_right(d),
            };
            let lf = ln_f(u, v);
            if lf.is_finite() {
                error = error + (d.ln() + lf).exp() / slope;
            }
        }
    }
    Ok(PanelOutcome::Finite {
        value: res.value,
        error,
    })
}
