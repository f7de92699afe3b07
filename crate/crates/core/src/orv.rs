//! O-regular-variation analysis of the inverse tail `w = 1/delta`: the
//! ratio function `r1`, its log-log limit indices, and numerical checks of
//! the weighted integral bounds and series used throughout the estimates.
//!
//! All limits are replaced by declared finite windows: the limsup at zero
//! becomes a max over the smallest grid points, the index limits become
//! least-squares slopes on log-log wings. Reports carry fit residuals so a
//! coarse grid is distinguishable from a genuine failure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::LevyMeasure;
use crate::quad::{linear_fit, log_panels, log_panels_to_zero};

/// Default grid for the limsup surrogate: ten log-spaced points per decade
/// decreasing to the numerical floor.
pub fn default_x_grid() -> Vec<f64> {
    (0..40)
        .map(|i| 10f64.powf(-2.0 - 4.0 * i as f64 / 39.0))
        .collect()
}

/// Ratio function estimate `r1(eps) = limsup_{x->0} w(eps x)/w(x)`,
/// realized as the max over the five smallest grid points.
pub fn estimate_r1(m: &LevyMeasure, eps: f64, x_grid: &[f64]) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::usage("ratio argument must be positive"));
    }
    if x_grid.is_empty() {
        return Err(Error::usage("ratio estimate needs a nonempty grid"));
    }
    let mut xs: Vec<f64> = x_grid.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut best = f64::NEG_INFINITY;
    for &x in xs.iter().take(5) {
        let v = m.w_of(eps * x)? / m.w_of(x)?;
        best = best.max(v);
    }
    Ok(best)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrvReport {
    /// Sampled `(eps, r1(eps))` pairs over both wings.
    pub r1_samples: Vec<(f64, f64)>,
    /// Lower index: slope of `log r1` against `log eps` on the small wing.
    pub p1: f64,
    /// Upper index: slope on the large wing.
    pub q1: f64,
    /// RMS residuals of the two wing fits.
    pub fit_residuals: (f64, f64),
    /// Set when the fits are inconsistent (`p1 > q1`) or visibly curved.
    pub warning: Option<String>,
}

/// Index estimation on the default dyadic wings `eps in {2^-10..2^-3}` and
/// `{2^3..2^10}`.
pub fn estimate_indices(m: &LevyMeasure) -> Result<OrvReport> {
    let x_grid = default_x_grid();
    let small: Vec<f64> = (3..=10).map(|k| 2f64.powi(-k)).collect();
    let large: Vec<f64> = (3..=10).map(|k| 2f64.powi(k)).collect();
    let mut samples = Vec::new();
    let mut wing = |eps_list: &[f64]| -> Result<(f64, f64, Vec<(f64, f64)>)> {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut pts = Vec::new();
        for &eps in eps_list {
            let r1 = estimate_r1(m, eps, &x_grid)?;
            xs.push(eps.ln());
            ys.push(r1.ln());
            pts.push((eps, r1));
        }
        let (slope, _, res) = linear_fit(&xs, &ys);
        Ok((slope, res, pts))
    };
    let (p1, res_p, pts_p) = wing(&small)?;
    let (q1, res_q, pts_q) = wing(&large)?;
    samples.extend(pts_p);
    samples.extend(pts_q);
    let mut warning = None;
    if p1 > q1 + 1e-9 {
        warning = Some(format!("wing slopes are inverted: p1={p1:.4} > q1={q1:.4}"));
    } else if res_p > 0.05 || res_q > 0.05 {
        warning = Some(format!(
            "wing fits are curved (residuals {res_p:.3}, {res_q:.3}); grid may be too coarse"
        ));
    }
    Ok(OrvReport { r1_samples: samples, p1, q1, fit_residuals: (res_p, res_q), warning })
}

/// The four hypothesis regimes of the weighted integral bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaCase {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub case: LemmaCase,
    pub beta: f64,
    pub tau: f64,
    /// Supremum over the grid of integral / boundary-term.
    pub max_ratio: f64,
    /// Claimed limit of `x^tau w(x)^beta` at zero: "to_zero" or "to_infinity".
    pub trend: String,
    pub pass: bool,
}

/// Checks one case of the weighted integral bound
/// `integral t^tau w(t)^beta dt/t <= C x^tau w(x)^beta` over `x_grid`,
/// with the integral taken over `(0, x]` (cases a, c) or `[x, 1]` (b, d).
pub fn check_al1(
    m: &LevyMeasure,
    case: LemmaCase,
    beta: f64,
    tau: f64,
    x_grid: &[f64],
) -> Result<LemmaReport> {
    if x_grid.is_empty() || x_grid.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
        return Err(Error::usage("grid must lie in (0, 1]"));
    }
    let idx = estimate_indices(m)?;
    let (p1, q1) = (idx.p1, idx.q1);
    // hypothesis table; violations name the failed inequality
    match case {
        LemmaCase::A => {
            if !(beta > 0.0) {
                return Err(Error::usage("case a requires beta > 0"));
            }
            if !(tau > -beta * p1 + 1e-9) {
                return Err(Error::usage(format!(
                    "case a requires tau > -beta*p1 = {:.6}, got tau = {tau}",
                    -beta * p1
                )));
            }
        }
        LemmaCase::B => {
            if !(beta > 0.0) {
                return Err(Error::usage("case b requires beta > 0"));
            }
            if !(tau < -beta * q1 - 1e-9) {
                return Err(Error::usage(format!(
                    "case b requires tau < -beta*q1 = {:.6}, got tau = {tau}",
                    -beta * q1
                )));
            }
        }
        LemmaCase::C => {
            if !(beta < 0.0) {
                return Err(Error::usage("case c requires beta < 0"));
            }
            if !(tau > -beta * q1 + 1e-9) {
                return Err(Error::usage(format!(
                    "case c requires tau > -beta*q1 = {:.6}, got tau = {tau}",
                    -beta * q1
                )));
            }
        }
        LemmaCase::D => {
            if !(beta < 0.0) {
                return Err(Error::usage("case d requires beta < 0"));
            }
            if !(tau < -beta * p1 - 1e-9) {
                return Err(Error::usage(format!(
                    "case d requires tau < -beta*p1 = {:.6}, got tau = {tau}",
                    -beta * p1
                )));
            }
        }
    }
    let integrand = |t: f64| t.powf(tau - 1.0) * m.w_of(t).unwrap_or(f64::NAN).powf(beta);
    let boundary = |x: f64| x.powf(tau) * m.w_of(x).unwrap_or(f64::NAN).powf(beta);
    let inner = matches!(case, LemmaCase::A | LemmaCase::C);
    let mut xs: Vec<f64> = x_grid.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut max_ratio: f64 = 0.0;
    let mut boundary_vals = Vec::with_capacity(xs.len());
    for &x in &xs {
        let integral = if inner {
            log_panels_to_zero(&integrand, x, 6)
        } else if x < 1.0 {
            log_panels(&integrand, x, 1.0, 6)
        } else {
            0.0
        };
        let b = boundary(x);
        boundary_vals.push(b);
        if x < 1.0 || inner {
            max_ratio = max_ratio.max(integral / b);
        }
    }
    // trend of the boundary term as x -> 0: first grid point against the last
    let (to_zero_claimed, trend) = if inner {
        (true, "to_zero".to_string())
    } else {
        (false, "to_infinity".to_string())
    };
    let first = boundary_vals[0]; // smallest x
    let last = *boundary_vals.last().unwrap();
    let trend_ok = if to_zero_claimed { first < 0.5 * last } else { first > 2.0 * last };
    Ok(LemmaReport {
        case,
        beta,
        tau,
        max_ratio,
        trend,
        pass: max_ratio.is_finite() && max_ratio > 0.0 && trend_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    /// Every tenth partial sum, then the final one.
    pub partial_sums: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Partial sums of `sum_j w(N^-j)^beta` with a geometric-tail convergence
/// verdict; never errors, reports non-convergence instead.
pub fn check_ac1(m: &LevyMeasure, beta: f64, n: f64) -> Result<SeriesReport> {
    if !(n > 1.0) {
        return Err(Error::usage("series base must exceed one"));
    }
    if !(beta > 0.0) {
        return Err(Error::usage("series exponent must be positive"));
    }
    let mut sum = 0.0;
    let mut partial = Vec::new();
    let mut last_term = f64::INFINITY;
    let mut ratio: f64 = 1.0;
    for j in 0..=200u32 {
        let term = m.w_of(n.powi(-(j as i32)))?.powf(beta);
        if j > 0 {
            ratio = term / last_term;
        }
        last_term = term;
        sum += term;
        if j % 10 == 0 {
            partial.push(sum);
        }
    }
    partial.push(sum);
    // geometric tail: remaining mass is about last * ratio/(1-ratio)
    let converged = ratio < 0.999 && last_term * ratio / (1.0 - ratio) < 1e-9 * sum.max(1e-300);
    Ok(SeriesReport { partial_sums: partial, value: sum, converged })
}
