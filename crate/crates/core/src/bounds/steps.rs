//! One verifier per link of the proof of the main bound. Every quantity is
//! formed in log space, so the checks stay meaningful for `n` far beyond the
//! range where the Gamma values themselves are representable.

use super::report::{InequalityReport, StepName, StepParams};
use super::{c_rho, g_rank};
use crate::distributions::{abs_moment_numeric, Distribution};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};
use crate::special::{log_beta, log_gamma, log_gamma_ratio, stirling_sandwich};

type Report<T> = InequalityReport<T>;

fn half_ln_two_pi<T: Real>() -> T {
    lit::<T>(0.5) * (lit::<T>(2.0) * T::PI()).ln()
}

fn check_rho<T: Real>(rho: T) -> Result<()> {
    if rho > T::zero() && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("ρ must be finite and positive, got {rho}")))
    }
}

/// `ln C(ρ) − ρ ln g(i/(n+1))`, the log of the main bound's factor.
fn ln_theorem_factor<T: Real>(n: usize, i: T, rho: T) -> T {
    c_rho(rho).ln() - rho * g_rank(n, i).ln()
}

/// `E|X|^δ`, preferring the closed form and falling back to quadrature.
fn abs_moment<T: Real>(d: &Distribution<T>, delta: T) -> Result<T> {
    match d.abs_moment_closed_form(delta) {
        Some(m) => Ok(m),
        None => Ok(abs_moment_numeric(d, delta)?.value),
    }
}

/// `|F⁻¹(u)|^δ (1−u) ≤ E|X|^δ` for `u ≥ F(0)`, `|F⁻¹(u)|^δ u ≤ E|X|^δ` below.
///
/// Returns `Ok(None)` when `E|X|^δ = ∞`: the check is skipped, not failed.
pub fn chebyshev_check<T: Real>(d: &Distribution<T>, delta: T, u: T) -> Result<Option<Report<T>>> {
    if !(delta > T::zero() && delta.is_finite()) {
        return Err(Error::Domain(format!("δ must be finite and positive, got {delta}")));
    }
    let q = d.quantile(u)?;
    let moment = abs_moment(d, delta)?;
    if moment.is_infinite() {
        return Ok(None);
    }
    Ok(Some(chebyshev_report(d, delta, u, q, moment)))
}

/// [`chebyshev_check`] with the quantile and moment already at hand, for
/// sweeps over many levels.
pub(crate) fn chebyshev_report<T: Real>(d: &Distribution<T>, delta: T, u: T, q: T, moment: T) -> Report<T> {
    let weight = if u >= d.cdf_at_zero() { T::one() - u } else { u };
    let lhs = q.abs().powf(delta) * weight;
    let params = StepParams {
        x: Some(u),
        delta: Some(delta),
        ..StepParams::default()
    };
    Report::from_values(StepName::Chebyshev, lhs, moment, false, params)
}

/// Chebyshev checks at `levels`, sharing one moment evaluation.
pub fn chebyshev_sweep<T: Real>(d: &Distribution<T>, delta: T, levels: &[T]) -> Result<Option<Vec<Report<T>>>> {
    if !(delta > T::zero() && delta.is_finite()) {
        return Err(Error::Domain(format!("δ must be finite and positive, got {delta}")));
    }
    let moment = abs_moment(d, delta)?;
    if moment.is_infinite() {
        return Ok(None);
    }
    levels
        .iter()
        .map(|&u| Ok(chebyshev_report(d, delta, u, d.quantile(u)?, moment)))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Both halves of the Stirling bracket at `x`, decided by the explicit
/// margins rather than by subtracting nearly equal logarithms.
pub fn stirling_check<T: Real>(x: T) -> Result<[Report<T>; 2]> {
    let s = stirling_sandwich(x)?;
    let ln_value = s.ln_value.unwrap_or(s.ln_lower + s.lower_margin());
    let params = StepParams {
        x: Some(x),
        ..StepParams::default()
    };
    Ok([
        Report::with_log_margin(StepName::Eq3Lower, s.ln_lower, ln_value, s.lower_margin(), true, params),
        Report::with_log_margin(StepName::Eq3Upper, ln_value, s.ln_upper, s.upper_margin(), true, params),
    ])
}

/// `B(i−ρ, n−i+1)/B(i, n−i+1) < e^{ρ+7/6} (n/i)^ρ` for real `i ∈ [ρ+1, n]`.
///
/// The report also records the `e^{1+7/6}` variant as a printed constant.
pub fn check_beta_ratio_lower<T: Real>(i: T, n: usize, rho: T) -> Result<Report<T>> {
    check_rho(rho)?;
    let nf: T = from_usize(n);
    if !(i >= rho + T::one() && i <= nf) {
        return Err(Error::Domain(format!(
            "need ρ+1 ≤ i ≤ n, got i = {i}, n = {n}, ρ = {rho}"
        )));
    }
    let ln_lhs = log_gamma_ratio(i - rho, i)? + log_gamma_ratio(nf + T::one(), nf - rho + T::one())?;
    let ln_n_over_i = (nf / i).ln();
    let ln_rhs = rho + lit(7.0 / 6.0) + rho * ln_n_over_i;
    let printed = lit::<T>(1.0 + 7.0 / 6.0) + rho * ln_n_over_i;
    Ok(
        Report::from_logs(StepName::Eq4, ln_lhs, ln_rhs, true, StepParams::rank(rho, n, i))
            .with_printed_constant(printed),
    )
}

/// `B(i, n−ρ−i+1)/B(i, n−i+1) < e^{ρ+7/6} (n/(n−i+1))^ρ` for `1 ≤ i ≤ n−ρ`,
/// followed by a report that the left side equals the lower-ratio left side
/// at rank `n−i+1` to within `1e-10` relative.
pub fn check_beta_ratio_upper<T: Real>(i: T, n: usize, rho: T) -> Result<[Report<T>; 2]> {
    check_rho(rho)?;
    let nf: T = from_usize(n);
    if !(i >= T::one() && i <= nf - rho) {
        return Err(Error::Domain(format!(
            "need 1 ≤ i ≤ n−ρ, got i = {i}, n = {n}, ρ = {rho}"
        )));
    }
    let tail = nf - i + T::one();
    let ln_lhs = log_beta(i, tail - rho)? - log_beta(i, tail)?;
    let ln_n_over_tail = (nf / tail).ln();
    let ln_rhs = rho + lit(7.0 / 6.0) + rho * ln_n_over_tail;
    let printed = lit::<T>(1.0 + 7.0 / 6.0) + rho * ln_n_over_tail;
    let params = StepParams::rank(rho, n, i);
    let bound = Report::from_logs(StepName::Eq5, ln_lhs, ln_rhs, true, params).with_printed_constant(printed);

    let mirrored = check_beta_ratio_lower(tail, n, rho)?;
    let relative = (ln_lhs - mirrored.ln_lhs).exp_m1().abs();
    let symmetry = Report::from_values(StepName::Eq5Symmetry, relative, lit(1e-10), false, params);
    Ok([bound, symmetry])
}

/// The chain from the exact beta ratio to `e^{ρ+7/6}(n/i)^ρ` for
/// `ρ+2 ≤ i ≤ n−ρ`, one report per link.
pub fn check_central_chain<T: Real>(i: usize, n: usize, rho: T) -> Result<Vec<Report<T>>> {
    check_rho(rho)?;
    let nf: T = from_usize(n);
    let fi: T = from_usize(i);
    if !(fi >= rho + lit(2.0) && fi <= nf - rho) {
        return Err(Error::Domain(format!(
            "need ρ+2 ≤ i ≤ n−ρ, got i = {i}, n = {n}, ρ = {rho}"
        )));
    }
    let one = T::one();
    let params = StepParams::rank(rho, n, fi);
    let report = |name, l, r| Report::from_logs(name, l, r, true, params);

    let im1 = fi - one;
    let head = fi - rho - one;
    let exact = log_gamma_ratio(fi - rho, fi)? + log_gamma_ratio(nf + one, nf - rho + one)?;
    let root = lit::<T>(0.5) * (head * nf / ((nf - rho) * im1)).ln();
    let power = (nf - rho) * (nf / (nf - rho)).ln();
    let ratio = head * (head / im1).ln();
    let eq7 = lit::<T>(1.0 / 6.0) + root + rho * (nf / im1).ln() + power + ratio;
    let eq8_left = lit::<T>(1.0 / 6.0) + rho * rho / im1 + rho * (nf / im1).ln();
    let eq8_right = rho + lit(7.0 / 6.0) + rho * (nf / fi).ln();

    Ok(vec![
        report(StepName::Eq6LtEq7, exact, eq7),
        report(StepName::Eq7Power, power, rho),
        report(StepName::Eq7Root, root, T::zero()),
        report(StepName::Eq7Ratio, ratio, -rho + rho * rho / im1),
        report(StepName::Eq7LtEq8, eq7, eq8_left),
        report(StepName::Eq8, eq8_left, eq8_right),
    ])
}

/// Reports for the ranks `ρ+1 ≤ i < ρ+2` and `ρ ≤ i < ρ+1` that the
/// central chain does not reach. Only the branches that apply to `ρ` are
/// emitted; `n ≥ 2ρ+1` is required.
pub fn check_edge_cases<T: Real>(n: usize, rho: T) -> Result<Vec<Report<T>>> {
    check_rho(rho)?;
    let nf: T = from_usize(n);
    let one = T::one();
    let two = lit::<T>(2.0);
    if nf < two * rho + one {
        return Err(Error::Precondition(format!("need n ≥ 2ρ+1, got n = {n}, ρ = {rho}")));
    }
    let m = rho.floor();
    let integer = rho == m;
    let ln_n = nf.ln();
    // ln Γ(n+1)/Γ(n−ρ+1)
    let falling = log_gamma_ratio(nf + one, nf - rho + one)?;
    let mut out = Vec::new();

    let i = if integer { rho + one } else { m + two };
    if i <= nf {
        let params = StepParams::rank(rho, n, i);
        let exact = log_gamma(i - rho)? - log_gamma(i)? + falling;
        let eq10 = falling - log_gamma(i)?;
        out.push(Report::from_logs(StepName::Eq10, exact, eq10, false, params));

        let fin = rho + one + rho * (nf / i).ln();
        if integer {
            let middle = rho * ln_n + rho - lit::<T>(0.5) * rho.ln() - rho * rho.ln();
            out.push(Report::from_logs(
                StepName::Eq11Falling,
                falling,
                rho * ln_n,
                false,
                params,
            ));
            out.push(Report::from_logs(StepName::Eq11, eq10, fin, true, params));
            out.push(Report::from_logs(StepName::Eq11Majorant, eq10, middle, true, params));
            out.push(Report::from_logs(StepName::Eq11Target, middle, fin, true, params));
        } else if m == T::zero() {
            let middle = lit::<T>(1.0 / 12.0) + rho * ln_n + lit::<T>(0.5) * (one + rho).ln();
            let target = lit::<T>(1.0 / 12.0) + rho / two + one + rho * (nf / i).ln();
            out.push(Report::from_logs(StepName::Eq12, eq10, middle, true, params));
            out.push(Report::from_logs(StepName::Eq12Target, middle, target, true, params));
        } else {
            let mp1 = m + one;
            let a = lit::<T>(1.0 / 12.0) + rho * ln_n + lit::<T>(0.5) * (one + rho).ln() - log_gamma(m + two)?;
            let b = lit::<T>(1.0 / 12.0) + lit::<T>(0.5) * ((one + rho) / mp1).ln() - half_ln_two_pi::<T>()
                + rho * (nf / mp1).ln()
                + rho
                + (mp1 - rho) * (one - mp1.ln());
            let c = -half_ln_two_pi::<T>()
                + lit::<T>(1.5) * lit::<T>(1.5).ln()
                + rho
                + lit(1.0 / 12.0)
                + rho * (nf / mp1).ln();
            out.push(Report::from_logs(StepName::Eq13, eq10, a, true, params));
            out.push(Report::from_logs(StepName::Eq13B, a, b, true, params));
            out.push(Report::from_logs(StepName::Eq13C, b, c, true, params));
            out.push(Report::from_logs(StepName::Eq13Target, c, fin, true, params));
        }
    }

    if integer && rho >= two {
        out.extend(integer_rank_rho(n, rho)?);
    }
    if !integer && rho > one {
        out.extend(fractional_rank(n, rho)?);
    }
    Ok(out)
}

/// Integer `ρ ≥ 2` at `i = ρ`: `1/B(ρ, n−ρ+1)` against its three majorants.
fn integer_rank_rho<T: Real>(n: usize, rho: T) -> Result<Vec<Report<T>>> {
    let one = T::one();
    let half = lit::<T>(0.5);
    let nf: T = from_usize(n);
    let i = rho;
    let params = StepParams::rank(rho, n, i);
    let rm1 = rho - one;
    let nmr = nf - rho;
    let c0 = lit::<T>(1.0 / 12.0) - one - half_ln_two_pi::<T>() + half * rm1.ln();

    let exact = log_gamma_ratio(nf + one, nmr + one)? - log_gamma(rho)?;
    let a = c0 + nf * nf.ln() - rho * rm1.ln() - nmr * nmr.ln() + half * (nf / nmr).ln();
    let b = c0 + rho * (nf / rm1).ln() + rho + half * lit::<T>(2.0).ln();
    let fin = -half * T::PI().ln() + lit(1.0 / 12.0) + rho + one + half * rm1.ln() + rho * (nf / i).ln();
    let report = |name, l, r| Report::from_logs(name, l, r, true, params);
    Ok(vec![
        report(StepName::Eq16, exact, fin),
        report(StepName::Eq16A, exact, a),
        report(StepName::Eq16B, a, b),
        report(StepName::Eq16C, b, fin),
        report(StepName::Eq16Theorem, fin, ln_theorem_factor(n, i, rho)),
    ])
}

/// Non-integer `ρ > 1` at `i = [ρ]+1`: the Hölder factor and the estimates
/// that carry it to the main bound.
fn fractional_rank<T: Real>(n: usize, rho: T) -> Result<Vec<Report<T>>> {
    let one = T::one();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let nf: T = from_usize(n);
    let m = rho.floor();
    let i = m + one;
    let params = StepParams::rank(rho, n, i);
    let report = |name, l, r| Report::from_logs(name, l, r, true, params);
    let ln_n = nf.ln();
    let rest = nf - two * m;

    // ln n!(n−2m)^{ρ−m−1} / (m!(n−m−1)!)
    let holder = log_gamma_ratio(nf + one, nf - m)? + (rho - m - one) * rest.ln() - log_gamma(m + one)?;
    let r18 = rho * ln_n - log_gamma(m + one)? + (m + one - rho) * (nf / rest).ln();
    let mut out = vec![Report::from_logs(StepName::Eq18, holder, r18, false, params)];

    let last = if m == one {
        let a = two.ln() + rho * ln_n;
        let b = two.ln() + rho + rho * (nf * nf / (two * (nf - two))).ln();
        out.push(report(StepName::Eq18M1A, r18, a));
        out.push(report(StepName::Eq18M1B, a, b));
        b
    } else {
        let a =
            -half_ln_two_pi::<T>() + m + rho * (nf / m).ln() + half * m.ln() + (m + one - rho) * (two + m.recip()).ln();
        let b = half * m.ln() + rho * (nf / m).ln() + m;
        let c = rho + half * rho.ln() + (rho - m) / m - (rho - m) + one + rho * (nf / i).ln();
        let d = rho + one + half * rho.ln() - rho * g_rank(n, i).ln();
        out.push(report(StepName::Eq18M2A, r18, a));
        out.push(report(StepName::Eq18M2B, a, b));
        out.push(report(StepName::Eq18M2C, b, c));
        out.push(report(StepName::Eq18M2D, c, d));
        d
    };
    out.push(report(StepName::Eq18Theorem, last, ln_theorem_factor(n, i, rho)));
    Ok(out)
}

/// `n^ρ`, the factor of `(E|X|^δ)^ρ` obtained for `i = 1` and `ρ ≤ 1`.
pub fn holder_i1_bound<T: Real>(n: usize, rho: T) -> Result<T> {
    if !(rho > T::zero() && rho <= T::one()) {
        return Err(Error::Domain(format!("need 0 < ρ ≤ 1, got {rho}")));
    }
    let nf: T = from_usize(n);
    if nf < lit::<T>(2.0) * rho + T::one() {
        return Err(Error::Precondition(format!("need n ≥ 2ρ+1, got n = {n}, ρ = {rho}")));
    }
    Ok(nf.powf(rho))
}

/// `n^ρ ≤ C(ρ) g(1/(n+1))^{−ρ}`.
pub fn holder_i1_check<T: Real>(n: usize, rho: T) -> Result<Report<T>> {
    let factor = holder_i1_bound(n, rho)?;
    let params = StepParams::rank(rho, n, T::one());
    Ok(Report::from_logs(
        StepName::HolderI1,
        factor.ln(),
        ln_theorem_factor(n, T::one(), rho),
        false,
        params,
    ))
}
