//! Radial profiles: the one-dimensional jump-size law of a radial-angular
//! Levy measure, expressed through its per-unit-angular-mass tail
//! `M(r) = integral of the radial density over (r, infinity)`.
//!
//! The full measure tail is `delta(r) = A_eff * M(r)` where `A_eff` is the
//! effective angular mass, see [`super::LevyMeasure`].

use crate::error::{Error, Result};
use crate::quad::{linear_fit, log_panels, log_panels_to_zero};

/// Default truncation radii for radial quadrature.
pub const R_MIN_DEFAULT: f64 = 1e-8;
pub const R_MAX_DEFAULT: f64 = 1e4;

/// The five parametric families of complete-Bernstein-type scale functions
/// used to build slowly-modulated tails via `M(r) = phi(r^{-2})`.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiVariant {
    /// `phi(u) = sum_i u^{a_i}`, all `a_i` in (0,1)
    PowerSum { exponents: Vec<f64> },
    /// `phi(u) = (u + u^a)^b`, `a, b` in (0,1)
    ShiftedPower { a: f64, b: f64 },
    /// `phi(u) = u^a ln(1+u)^b`, `a` in (0,1), `b` in (0, 1-a)
    LogPerturbed { a: f64, b: f64 },
    /// `phi(u) = (u + m^{1/a})^a - m`, `a` in (0,1), `m > 0`
    Relativistic { a: f64, m: f64 },
    /// `phi(u) = (ln cosh sqrt(u))^a`, `a` in (0,1)
    LogCosh { a: f64 },
}

impl PhiVariant {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            PhiVariant::PowerSum { exponents } => exponents.iter().map(|&a| u.powf(a)).sum(),
            PhiVariant::ShiftedPower { a, b } => (u + u.powf(*a)).powf(*b),
            PhiVariant::LogPerturbed { a, b } => u.powf(*a) * u.ln_1p().powf(*b),
            PhiVariant::Relativistic { a, m } => (u + m.powf(1.0 / a)).powf(*a) - m,
            PhiVariant::LogCosh { a } => ln_cosh(u.sqrt()).powf(*a),
        }
    }

    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            PhiVariant::PowerSum { exponents } => {
                exponents.iter().map(|&a| a * u.powf(a - 1.0)).sum()
            }
            PhiVariant::ShiftedPower { a, b } => {
                b * (u + u.powf(*a)).powf(b - 1.0) * (1.0 + a * u.powf(a - 1.0))
            }
            PhiVariant::LogPerturbed { a, b } => {
                u.powf(a - 1.0) * u.ln_1p().powf(b - 1.0) * (a * u.ln_1p() + b * u / (1.0 + u))
            }
            PhiVariant::Relativistic { a, m } => a * (u + m.powf(1.0 / a)).powf(a - 1.0),
            PhiVariant::LogCosh { a } => {
                let s = u.sqrt();
                if s < 1e-8 {
                    // ln cosh s ~ s^2/2, derivative of phi ~ a (s^2/2)^{a-1} / 2
                    return a * (0.5 * u).powf(a - 1.0) * 0.5;
                }
                a * ln_cosh(s).powf(a - 1.0) * s.tanh() / (2.0 * s)
            }
        }
    }

    /// Tail index of the induced measure: twice the log-slope of `phi` at infinity.
    pub fn nominal_alpha(&self) -> f64 {
        match self {
            PhiVariant::PowerSum { exponents } => {
                2.0 * exponents.iter().cloned().fold(f64::MIN, f64::max)
            }
            PhiVariant::ShiftedPower { b, .. } => 2.0 * b,
            PhiVariant::LogPerturbed { a, .. } => 2.0 * a,
            PhiVariant::Relativistic { a, .. } => 2.0 * a,
            PhiVariant::LogCosh { a } => *a,
        }
    }

    /// Analytic bracket `(d1, d2)` for the local log-slope of `phi` on `u >= 1`.
    pub fn slope_bracket(&self) -> (f64, f64) {
        match self {
            PhiVariant::PowerSum { exponents } => {
                let lo = exponents.iter().cloned().fold(f64::MAX, f64::min);
                let hi = exponents.iter().cloned().fold(f64::MIN, f64::max);
                (lo, hi)
            }
            PhiVariant::ShiftedPower { a, b } => (a * b, *b),
            PhiVariant::LogPerturbed { a, b } => (*a, a + b),
            PhiVariant::Relativistic { a, .. } => (*a, 1.0),
            PhiVariant::LogCosh { a } => (a / 2.0, *a),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let in01 = |x: f64| x > 0.0 && x < 1.0;
        let ok = match self {
            PhiVariant::PowerSum { exponents } => {
                !exponents.is_empty() && exponents.iter().all(|&a| in01(a))
            }
            PhiVariant::ShiftedPower { a, b } => in01(*a) && in01(*b),
            PhiVariant::LogPerturbed { a, b } => in01(*a) && *b > 0.0 && *b < 1.0 - a,
            PhiVariant::Relativistic { a, m } => in01(*a) && *m > 0.0,
            PhiVariant::LogCosh { a } => in01(*a),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::config(format!("phi parameters out of range: {self:?}")))
        }
    }
}

/// Overflow-safe `ln(cosh(x))` for `x >= 0`.
fn ln_cosh(x: f64) -> f64 {
    if x > 20.0 {
        x - std::f64::consts::LN_2 + (-2.0 * x).exp().ln_1p()
    } else {
        x.cosh().ln()
    }
}

/// Shape-preserving (Fritsch-Carlson) cubic interpolant of strictly
/// monotone data, used for tabulated tails in log-log coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::config("monotone spline needs >= 2 matched knots"));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("spline abscissae must be strictly increasing"));
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let sec: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        d[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), sec[0], sec.get(1).copied().unwrap_or(sec[0]));
        d[n - 1] = endpoint_slope(
            h[n - 2],
            h.get(n.wrapping_sub(3)).copied().unwrap_or(h[n - 2]),
            sec[n - 2],
            sec.get(n.wrapping_sub(3)).copied().unwrap_or(sec[n - 2]),
        );
        for i in 1..n - 1 {
            if sec[i - 1] * sec[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
            }
        }
        Ok(MonotoneSpline { xs, ys, slopes: d })
    }

    /// Value and first derivative; linear continuation beyond the knots.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return (self.ys[0] + self.slopes[0] * (x - self.xs[0]), self.slopes[0]);
        }
        if x >= self.xs[n - 1] {
            return (
                self.ys[n - 1] + self.slopes[n - 1] * (x - self.xs[n - 1]),
                self.slopes[n - 1],
            );
        }
        let i = match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (y0, y1, d0, d1) = (self.ys[i], self.ys[i + 1], self.slopes[i], self.slopes[i + 1]);
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let val = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
        let dh00 = 6.0 * t * t - 6.0 * t;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = -dh00;
        let dh11 = 3.0 * t * t - 2.0 * t;
        let deriv = (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
        (val, deriv)
    }
}

fn endpoint_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if (d / s0).abs() > 3.0 {
        3.0 * s0
    } else {
        d
    }
}

/// Per-unit-angular-mass radial law.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialProfile {
    /// `M(r) = scale * r^{-alpha} / alpha`; the alpha-stable radial law.
    StablePower { alpha: f64, scale: f64 },
    /// Tail pinned to the scale function: `M(r) = phi(r^{-2})`.
    PhiFamily(PhiVariant),
    /// Monotone spline of `log M` against `log r`.
    Tabulated(MonotoneSpline),
    /// Zoom-in renormalization of a base profile: `M(r) = norm * M_base(scale * r)`.
    Scaled {
        base: Box<RadialProfile>,
        scale: f64,
        norm: f64,
    },
}

impl RadialProfile {
    /// Tabulated profile from `(r, tail)` samples, interpolated in log-log.
    pub fn tabulated(r: &[f64], tail: &[f64]) -> Result<Self> {
        if r.iter().any(|&x| x <= 0.0) || tail.iter().any(|&x| x <= 0.0) {
            return Err(Error::config("tabulated tail needs positive radii and values"));
        }
        if tail.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::config("tabulated tail must be strictly decreasing"));
        }
        let xs: Vec<f64> = r.iter().map(|x| x.ln()).collect();
        let ys: Vec<f64> = tail.iter().map(|x| x.ln()).collect();
        Ok(RadialProfile::Tabulated(MonotoneSpline::new(xs, ys)?))
    }

    /// Per-unit tail `M(r)`, strictly positive and decreasing.
    pub fn tail(&self, r: f64) -> f64 {
        match self {
            RadialProfile::StablePower { alpha, scale } => scale * r.powf(-alpha) / alpha,
            RadialProfile::PhiFamily(phi) => phi.eval(r.powi(-2)),
            RadialProfile::Tabulated(sp) => sp.eval(r.ln()).0.exp(),
            RadialProfile::Scaled { base, scale, norm } => norm * base.tail(scale * r),
        }
    }

    /// Per-unit radial density `m(r) = -M'(r)`.
    pub fn density(&self, r: f64) -> f64 {
        match self {
            RadialProfile::StablePower { alpha, scale } => scale * r.powf(-1.0 - alpha),
            RadialProfile::PhiFamily(phi) => 2.0 * phi.derivative(r.powi(-2)) * r.powi(-3),
            RadialProfile::Tabulated(sp) => {
                let (val, d) = sp.eval(r.ln());
                -val.exp() * d / r
            }
            RadialProfile::Scaled { base, scale, norm } => norm * scale * base.density(scale * r),
        }
    }

    /// Restricted moment `integral_0^r0 s^n m(s) ds` for `n` above the tail index.
    /// Computed by parts through the tail: `n I[s^{n-1} M] - r0^n M(r0)`.
    pub fn restricted_moment(&self, n: u32, r0: f64) -> f64 {
        if let RadialProfile::StablePower { alpha, scale } = self {
            let p = n as f64 - alpha;
            return scale * r0.powf(p) / p;
        }
        let body = log_panels_to_zero(&|s: f64| s.powi(n as i32 - 1) * self.tail(s), r0, 6);
        n as f64 * body - r0.powi(n as i32) * self.tail(r0)
    }

    /// `integral_{r1}^inf M(r) dr`; requires the tail index above one.
    pub fn tail_integral(&self, r1: f64) -> Result<f64> {
        if let RadialProfile::StablePower { alpha, scale } = self {
            if *alpha <= 1.0 {
                return Err(Error::numeric("tail integral of M diverges for alpha <= 1"));
            }
            return Ok(scale * r1.powf(1.0 - alpha) / (alpha * (alpha - 1.0)));
        }
        let r_max = R_MAX_DEFAULT.max(r1 * 10.0);
        let body = log_panels(&|s| self.tail(s), r1, r_max, 6);
        let p = self.local_tail_exponent(r_max);
        if p >= -1.0 - 1e-9 {
            return Err(Error::numeric(format!(
                "tail of M decays like r^{p:.3}; integral over (r1, inf) diverges"
            )));
        }
        Ok(body + self.tail(r_max) * r_max / (-1.0 - p))
    }

    /// First moment over a finite range: `integral_a^b r m(r) dr`
    /// via `a M(a) - b M(b) + integral_a^b M`.
    pub fn first_moment_range(&self, a: f64, b: f64) -> f64 {
        if let RadialProfile::StablePower { alpha, scale } = self {
            if (alpha - 1.0).abs() < 1e-14 {
                return scale * (b / a).ln();
            }
            let p = 1.0 - alpha;
            return scale * (b.powf(p) - a.powf(p)) / p;
        }
        a * self.tail(a) - b * self.tail(b) + log_panels(&|s| self.tail(s), a, b, 6)
    }

    /// First tail moment `integral_{r1}^inf r m(r) dr = r1 M(r1) + integral_{r1}^inf M`.
    pub fn first_tail_moment(&self, r1: f64) -> Result<f64> {
        Ok(r1 * self.tail(r1) + self.tail_integral(r1)?)
    }

    /// Local log-log slope of `M` at radius `r` (negative).
    pub fn local_tail_exponent(&self, r: f64) -> f64 {
        let (xs, ys): (Vec<f64>, Vec<f64>) = (0..5)
            .map(|i| {
                let s = r * 2f64.powi(i - 4);
                (s.ln(), self.tail(s).ln())
            })
            .unzip();
        linear_fit(&xs, &ys).0
    }
}
