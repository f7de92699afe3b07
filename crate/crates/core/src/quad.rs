//! Scalar quadrature kernels shared by the measure, symbol and operator
//! modules: Gauss-Kronrod panels, log-spaced panel sums for power-like
//! integrands, Gauss-Laguerre rules, and small fitting helpers.

use crate::error::{Error, Result};

/// Kronrod 15 nodes on `[0, 1]` folded from the symmetric rule (positive half).
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

/// Gauss 7 weights matching the odd Kronrod nodes, used for the error estimate.
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// One Gauss-Kronrod 15(7) panel; returns `(integral, error_estimate)`.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in GK_NODES.iter().zip(GK_WEIGHTS.iter()).enumerate() {
        let (fl, fr) = (f(c - h * x), f(c + h * x));
        let pair = if i == 7 { fl } else { fl + fr };
        kron += wk * pair;
        if i % 2 == 1 {
            gauss += G7_WEIGHTS[i / 2] * pair;
        } else if i == 7 {
            gauss += G7_WEIGHTS[3] * pair;
        }
    }
    let value = kron * h;
    let err = ((kron - gauss) * h).abs();
    (value, (200.0 * err).powf(1.5).min(err.max(1e-300)))
}

/// Globally adaptive bisection on `[a, b]` down to `tol` (absolute + relative).
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    struct Seg {
        a: f64,
        b: f64,
        val: f64,
        err: f64,
    }
    let (val, err) = gk15(f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    for _ in 0..2000 {
        let total: f64 = segs.iter().map(|s| s.val).sum();
        let err_total: f64 = segs.iter().map(|s| s.err).sum();
        if err_total <= tol * (1.0 + total.abs()) {
            return Ok(total);
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Seg { a, b, .. } = segs.swap_remove(worst);
        let m = 0.5 * (a + b);
        let (v1, e1) = gk15(f, a, m);
        let (v2, e2) = gk15(f, m, b);
        segs.push(Seg { a, b: m, val: v1, err: e1 });
        segs.push(Seg { a: m, b, val: v2, err: e2 });
    }
    Err(Error::numeric(format!(
        "adaptive quadrature on [{a}, {b}] did not reach tolerance {tol}"
    )))
}

/// Sum of GK15 panels on log-spaced subdivisions of `[a, b]`, `a > 0`.
/// Suited to power-like integrands; each panel is refined once if its
/// error estimate is out of proportion.
pub fn log_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels_per_decade: usize) -> f64 {
    assert!(a > 0.0 && b > a, "log_panels needs 0 < a < b");
    let decades = (b / a).log10();
    let n = ((decades * panels_per_decade as f64).ceil() as usize).max(1);
    let step = (b / a).powf(1.0 / n as f64);
    let mut total = 0.0;
    let mut lo = a;
    for _ in 0..n {
        let hi = (lo * step).min(b);
        let (v, e) = gk15(f, lo, hi);
        if e > 1e-12 * (v.abs() + 1e-300) {
            // one refinement level is enough for monotone power-like panels
            let mid = (lo * hi).sqrt();
            let (v1, _) = gk15(f, lo, mid);
            let (v2, _) = gk15(f, mid, hi);
            total += v1 + v2;
        } else {
            total += v;
        }
        lo = hi;
    }
    total
}

/// `integral of f over [0, x]` where `f(t) ~ c t^{p-1}` with `p > 0` near zero:
/// log panels on `[x*1e-10, x]` plus a fitted power-law remainder below.
pub fn log_panels_to_zero<F: Fn(f64) -> f64>(f: &F, x: f64, panels_per_decade: usize) -> f64 {
    let floor = x * 1e-10;
    let body = log_panels(f, floor, x, panels_per_decade);
    // local exponent of f at the left edge gives the remainder of the power law
    let (f1, f2) = (f(floor), f(floor * 2.0));
    if f1 <= 0.0 || f2 <= 0.0 {
        return body;
    }
    let slope = (f2 / f1).ln() / 2f64.ln(); // f ~ c t^slope
    if slope > -1.0 {
        // integral of c t^slope over [0, floor] = f(floor)*floor/(slope+1)
        body + f1 * floor / (slope + 1.0)
    } else {
        body
    }
}

/// Iterated-averaging (Euler) acceleration of a sequence of partial sums.
/// Robust for alternating tails; returns the accelerated limit.
pub fn euler_accelerate(partial_sums: &[f64]) -> f64 {
    if partial_sums.is_empty() {
        return 0.0;
    }
    let mut s = partial_sums.to_vec();
    let sweeps = s.len().saturating_sub(1).min(24);
    for _ in 0..sweeps {
        for i in 0..s.len() - 1 {
            s[i] = 0.5 * (s[i] + s[i + 1]);
        }
        s.pop();
    }
    // the back of the array is anchored at the latest partial sums
    *s.last().unwrap()
}

/// Gauss-Laguerre nodes and weights for `integral_0^inf f(x) e^{-x} dx`.
pub fn gauss_laguerre(n: usize) -> Vec<(f64, f64)> {
    gauss_laguerre_gen(n, 0.0)
}

/// Generalized Gauss-Laguerre rule: `integral_0^inf x^alf e^{-x} f(x) dx
/// = sum w_i f(x_i)`, Newton iteration on the generalized polynomials.
pub fn gauss_laguerre_gen(n: usize, alf: f64) -> Vec<(f64, f64)> {
    use statrs::function::gamma::ln_gamma;
    assert!(alf > -1.0, "weight exponent must exceed -1");
    let nf = n as f64;
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => (1.0 + alf) * (3.0 + 0.92 * alf) / (1.0 + 2.4 * nf + 1.8 * alf),
            1 => z + (15.0 + 6.25 * alf) / (1.0 + 0.9 * alf + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alf / (1.0 + 3.5 * ai))
                    * (z - out[i - 2].0)
                    / (1.0 + 0.3 * alf)
            }
        };
        let mut p1 = 1.0;
        let mut p2 = 0.0;
        for _ in 0..200 {
            p1 = 1.0;
            p2 = 0.0;
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k as f64 + 1.0 + alf - z) * p2 - (k as f64 + alf) * p3)
                    / (k as f64 + 1.0);
            }
            let pp = (nf * p1 - (nf + alf) * p2) / z;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 * z.max(1.0) {
                break;
            }
        }
        let pp = (nf * p1 - (nf + alf) * p2) / z;
        let w = -(ln_gamma(alf + nf) - ln_gamma(nf)).exp() / (pp * nf * p2);
        out.push((z, w));
    }
    out
}

/// Least-squares line through `(x, y)` pairs; returns `(slope, intercept, rms_residual)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    assert!(n >= 2.0, "linear_fit needs at least two points");
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}
