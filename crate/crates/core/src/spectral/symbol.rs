//! Evaluation of the jump symbol on the frequency lattice.
//!
//! With the transform convention `F u(xi) = integral e^{-i 2 pi x.xi} u dx`,
//! the generator acts in frequency as multiplication by
//!
//! `psi(xi) = integral [ e^{i 2 pi xi.y} - 1 - i 2 pi chi(y) xi.y ] nu(dy)`,
//!
//! where the compensator `chi` is empty below order one, the unit-ball
//! indicator at order one, and identically one above order one. For a
//! radial-angular measure this reduces to a scalar profile integral per
//! angular node: `psi(xi) = sum_i lambda_i a_i Phi(2 pi xi . w_i)`.
//!
//! `Phi` is evaluated in three zones: a Taylor zone `[0, r0]` using
//! precomputed restricted moments, a quadrature zone with panels refined to
//! the local oscillation length, and an outer zone where the constant part
//! is summed exactly through the tail `M` and the oscillatory remainder by
//! accelerated half-period sums.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{CompensatorRegime, LevyMeasure, RadialProfile, R_MAX_DEFAULT};
use crate::quad::{euler_accelerate, gk15};

use super::grid::TorusGrid;

/// `sin(x) - x` without cancellation for small arguments.
#[inline]
fn sin_minus_arg(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        -x * x * x / 6.0 * (1.0 - x * x / 20.0)
    } else {
        x.sin() - x
    }
}

/// Sampled symbol values over a grid's frequency lattice.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    grid: TorusGrid,
    psi: Vec<Complex64>,
    measure_fingerprint: u64,
}

impl SymbolTable {
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.psi
    }
    pub fn measure_fingerprint(&self) -> u64 {
        self.measure_fingerprint
    }

    /// Symbol at the lattice index.
    #[inline]
    pub fn at(&self, idx: usize) -> Complex64 {
        self.psi[idx]
    }
}

pub(crate) struct ProfileIntegrator {
    profile: RadialProfile,
    regime: CompensatorRegime,
    r0: f64,
    i1: f64,
    i2: f64,
    i3: f64,
    i4: f64,
    r_max: f64,
}

impl ProfileIntegrator {
    pub fn new(m: &LevyMeasure, nyquist: f64) -> ProfileIntegrator {
        let r0 = 1e-3 / nyquist.max(1.0);
        let profile = m.radial().clone();
        let regime = m.compensator();
        let i1 = if m.alpha() < 1.0 { profile.restricted_moment(1, r0) } else { 0.0 };
        ProfileIntegrator {
            i2: profile.restricted_moment(2, r0),
            i3: profile.restricted_moment(3, r0),
            i4: profile.restricted_moment(4, r0),
            i1,
            r0,
            regime,
            r_max: R_MAX_DEFAULT,
            profile,
        }
    }

    /// Scalar symbol integral `Phi(theta)` per unit angular mass, `theta >= 0`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        if theta == 0.0 {
            return Complex64::ZERO;
        }
        let m = |r: f64| self.profile.density(r);
        // Taylor zone [0, r0]: cos - 1 ~ -t^2/2 + t^4/24, sin - t ~ -t^3/6
        let t2 = theta * theta;
        let mut re = -0.5 * t2 * self.i2 + t2 * t2 * self.i4 / 24.0;
        let mut im = -theta * t2 * self.i3 / 6.0;
        if matches!(self.regime, CompensatorRegime::None) {
            im += theta * self.i1;
        }

        // quadrature zone [r0, r1]; extend past the default window when the
        // oscillation is too slow for the half-period machinery to engage
        let osc_start = 8.0 * std::f64::consts::PI / theta;
        let r1 = if osc_start <= self.r_max { osc_start.max(2.0 * self.r0) } else {
            (100.0 * self.r_max).min(osc_start)
        };
        let (zr, zi) = self.quadrature_zone(theta, self.r0, r1, &m);
        re += zr;
        im += zi;

        // outer zone [r1, inf): exact tail mass for the constant part,
        // accelerated alternating sums for the oscillation
        re += -self.profile.tail(r1) + self.alternating_tail(theta, r1, false, &m);
        im += self.alternating_tail(theta, r1, true, &m);
        im -= theta * self.compensator_tail(r1);

        Complex64::new(re, im)
    }

    /// Integral of `(cos(theta r) - 1) m` and `(sin(theta r) - theta chi r) m`
    /// over `[a, b]`, on log panels subdivided to at most a quarter period.
    fn quadrature_zone(
        &self,
        theta: f64,
        a: f64,
        b: f64,
        m: &impl Fn(f64) -> f64,
    ) -> (f64, f64) {
        if b <= a {
            return (0.0, 0.0);
        }
        let mut cuts: Vec<f64> = Vec::new();
        // panel boundaries: 4 per decade plus the compensator break at r = 1
        let n = ((b / a).log10().ceil() * 4.0) as usize + 1;
        let step = (b / a).powf(1.0 / n as f64);
        let mut lo = a;
        for _ in 0..n {
            cuts.push(lo);
            lo *= step;
        }
        cuts.push(b);
        if matches!(self.regime, CompensatorRegime::UnitBall) && a < 1.0 && b > 1.0 {
            cuts.push(1.0);
            cuts.sort_by(|x, y| x.total_cmp(y));
        }
        let quarter = std::f64::consts::FRAC_PI_2 / theta;
        let mut re = 0.0;
        let mut im = 0.0;
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let pieces = ((hi - lo) / quarter).ceil().max(1.0) as usize;
            let dw = (hi - lo) / pieces as f64;
            for p in 0..pieces {
                let (pa, pb) = (lo + p as f64 * dw, lo + (p + 1) as f64 * dw);
                // cos(x) - 1 = -2 sin^2(x/2), cancellation-free
                let (vr, _) =
                    gk15(&|r: f64| -2.0 * (0.5 * theta * r).sin().powi(2) * m(r), pa, pb);
                let (vi, _) = gk15(
                    &|r: f64| {
                        let x = theta * r;
                        let v = if self.chi(r) == 1.0 { sin_minus_arg(x) } else { x.sin() };
                        v * m(r)
                    },
                    pa,
                    pb,
                );
                re += vr;
                im += vi;
            }
        }
        (re, im)
    }

    #[inline]
    fn chi(&self, r: f64) -> f64 {
        match self.regime {
            CompensatorRegime::None => 0.0,
            CompensatorRegime::UnitBall => {
                if r <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            CompensatorRegime::Full => 1.0,
        }
    }

    /// `integral_{r1}^inf trig(theta r) m(r) dr` by half-period partial sums
    /// with iterated averaging.
    fn alternating_tail(&self, theta: f64, r1: f64, sine: bool, m: &impl Fn(f64) -> f64) -> f64 {
        let half = std::f64::consts::PI / theta;
        let mut partial = Vec::with_capacity(64);
        let mut acc = 0.0;
        let mut lo = r1;
        for k in 0..64 {
            let hi = lo + half;
            let (v, _) = gk15(
                &|r: f64| if sine { (theta * r).sin() * m(r) } else { (theta * r).cos() * m(r) },
                lo,
                hi,
            );
            acc += v;
            partial.push(acc);
            lo = hi;
            if k > 8 && v.abs() < 1e-16 * (1.0 + acc.abs()) {
                break;
            }
        }
        euler_accelerate(&partial)
    }

    /// Remaining compensator mass `integral_{r1}^{...} r m(r) dr` per regime.
    fn compensator_tail(&self, r1: f64) -> f64 {
        match self.regime {
            CompensatorRegime::None => 0.0,
            CompensatorRegime::UnitBall => {
                if r1 < 1.0 {
                    self.profile.first_moment_range(r1, 1.0)
                } else {
                    0.0
                }
            }
            CompensatorRegime::Full => self
                .profile
                .first_tail_moment(r1)
                .expect("order above one guarantees a finite first tail moment"),
        }
    }
}

/// Evaluates the symbol of `m` on the frequency lattice of `grid`.
///
/// The angular reduction evaluates the scalar profile integral once per
/// distinct projection value, in parallel; the assembled real part is
/// clamped to the closed left half-plane to keep the semigroup contractive
/// against rounding.
pub fn compute_symbol(m: &LevyMeasure, grid: &TorusGrid) -> Result<SymbolTable> {
    if m.dim() != grid.dim() {
        return Err(Error::usage(format!(
            "measure dimension {} does not match grid dimension {}",
            m.dim(),
            grid.dim()
        )));
    }
    let integ = ProfileIntegrator::new(m, grid.nyquist());
    let nodes = &m.angular().nodes;
    let dim = grid.dim();

    // distinct |theta| values over (lattice point, node) pairs
    let mut thetas: Vec<u64> = Vec::new();
    for idx in 0..grid.len() {
        let xi = grid.freq_of(idx);
        for node in nodes {
            let dot: f64 = node.dir.iter().zip(&xi[..dim]).map(|(a, b)| a * b).sum();
            let theta = (2.0 * std::f64::consts::PI * dot).abs();
            thetas.push(theta.to_bits());
        }
    }
    thetas.sort_unstable();
    thetas.dedup();

    let evaluated: HashMap<u64, Complex64> = thetas
        .par_iter()
        .map(|&bits| (bits, integ.eval(f64::from_bits(bits))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let psi: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let xi = grid.freq_of(idx);
            let mut acc = Complex64::ZERO;
            for node in nodes {
                let dot: f64 =
                    node.dir.iter().zip(&xi[..dim]).map(|(a, b)| a * b).sum();
                let theta = 2.0 * std::f64::consts::PI * dot;
                let phi = evaluated[&theta.abs().to_bits()];
                let phi = if theta < 0.0 { phi.conj() } else { phi };
                acc += node.weight * node.modulation * phi;
            }
            Complex64::new(acc.re.min(0.0), acc.im)
        })
        .collect();

    Ok(SymbolTable { grid: *grid, psi, measure_fingerprint: m.fingerprint() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{AngularMeasure, PhiVariant};
    use crate::quad::adaptive;

    /// Independent scalar oracle for the one-dimensional stable symbol:
    /// `psi(xi) = -2 (2 pi |xi|)^alpha J(alpha)` with the universal constant
    /// evaluated by composite quadrature in the scaled variable.
    fn stable_symbol_oracle(alpha: f64, xi: f64) -> f64 {
        let j = stable_j_constant(alpha);
        -2.0 * (2.0 * std::f64::consts::PI * xi.abs()).powf(alpha) * j
    }

    fn stable_j_constant(alpha: f64) -> f64 {
        // J(alpha) = integral_0^inf (1 - cos u) u^{-1-alpha} du, split at 1;
        // the integrand is a clean power law near zero
        let inner = crate::quad::log_panels(
            &|u: f64| 2.0 * (0.5 * u).sin().powi(2) * u.powf(-1.0 - alpha),
            1e-9,
            1.0,
            8,
        ) + 0.5 * 1e-9f64.powf(2.0 - alpha) / (2.0 - alpha);
        // on [1, inf): integral u^{-1-alpha} - integral cos(u) u^{-1-alpha}
        let const_part = 1.0 / alpha;
        let mut osc = 0.0;
        let mut partial = Vec::new();
        let mut lo = 1.0;
        for _ in 0..200 {
            let hi = lo + std::f64::consts::PI;
            osc += adaptive(&|u: f64| u.cos() * u.powf(-1.0 - alpha), lo, hi, 1e-12).unwrap();
            partial.push(osc);
            lo = hi;
        }
        inner + const_part - euler_accelerate(&partial)
    }

    #[test]
    fn j_constant_matches_gamma_identity() {
        // J(alpha) = Gamma(2-alpha) cos(pi alpha/2) / (alpha (1-alpha)), J(1) = pi/2
        for &alpha in &[0.6, 1.4] {
            let gamma = statrs::function::gamma::gamma(2.0 - alpha);
            let exact =
                gamma * (std::f64::consts::PI * alpha / 2.0).cos() / (alpha * (1.0 - alpha));
            let j = stable_j_constant(alpha);
            assert!((j / exact - 1.0).abs() < 1e-9, "alpha {alpha}: {j} vs {exact}");
        }
        assert!((stable_j_constant(1.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn symbol_matches_oracle_for_stable_orders() {
        let grid = TorusGrid::new(1, 1.0, 128).unwrap();
        for &alpha in &[0.6, 1.0, 1.4] {
            let m = LevyMeasure::stable(alpha, 1).unwrap();
            let table = compute_symbol(&m, &grid).unwrap();
            for idx in 0..grid.len() {
                let xi = grid.freq_of(idx)[0];
                if xi == 0.0 {
                    assert_eq!(table.at(idx), Complex64::ZERO);
                    continue;
                }
                if xi.abs() > 32.0 {
                    continue;
                }
                let oracle = stable_symbol_oracle(alpha, xi);
                let got = table.at(idx);
                assert!(
                    (got.re / oracle - 1.0).abs() < 1e-6,
                    "alpha {alpha} xi {xi}: {} vs {oracle}",
                    got.re
                );
                assert!(got.im.abs() < 1e-8, "alpha {alpha} xi {xi}: im {}", got.im);
            }
        }
    }

    #[test]
    fn cauchy_symbol_closed_form() {
        // order one: psi(xi) = -2 pi^2 |xi|
        let grid = TorusGrid::new(1, 1.0, 128).unwrap();
        let m = LevyMeasure::stable(1.0, 1).unwrap();
        let table = compute_symbol(&m, &grid).unwrap();
        for idx in 0..grid.len() {
            let xi = grid.freq_of(idx)[0];
            if xi == 0.0 || xi.abs() > 32.0 {
                continue;
            }
            let exact = -2.0 * std::f64::consts::PI.powi(2) * xi.abs();
            assert!(
                (table.at(idx).re / exact - 1.0).abs() < 1e-6,
                "xi {xi}: {} vs {exact}",
                table.at(idx).re
            );
        }
    }

    #[test]
    fn phi_symbol_negative_real_and_symmetric() {
        let m = LevyMeasure::new(
            1.0,
            RadialProfile::PhiFamily(PhiVariant::LogPerturbed { a: 0.5, b: 0.3 }),
            AngularMeasure::uniform(1, 0).unwrap(),
        )
        .unwrap();
        let grid = TorusGrid::new(1, 1.0, 64).unwrap();
        let table = compute_symbol(&m, &grid).unwrap();
        for idx in 0..grid.len() {
            let v = table.at(idx);
            assert!(v.re <= 0.0);
            assert!(v.im.abs() < 1e-10);
        }
        // monotone growth of |Re psi| in |xi| for the isotropic law
        let re_at = |k: usize| table.at(k).re.abs();
        assert!(re_at(2) > re_at(1) && re_at(8) > re_at(4));
    }

    #[test]
    fn asymmetric_below_order_one_has_odd_imag_part() {
        use crate::measures::AngularNode;
        let angular = AngularMeasure::new(
            1,
            vec![
                AngularNode::plain(vec![1.0], 2.0),
                AngularNode::plain(vec![-1.0], 1.0),
            ],
        )
        .unwrap();
        let m = LevyMeasure::new(
            0.6,
            RadialProfile::StablePower { alpha: 0.6, scale: 1.0 },
            angular,
        )
        .unwrap();
        let grid = TorusGrid::new(1, 1.0, 32).unwrap();
        let table = compute_symbol(&m, &grid).unwrap();
        let at_mode = |k: i64| {
            let idx = (0..grid.len())
                .find(|&i| grid.signed_mode(grid.coords_of(i)[0]) == k)
                .unwrap();
            table.at(idx)
        };
        let plus = at_mode(3);
        let minus = at_mode(-3);
        assert!(plus.im.abs() > 1e-3, "asymmetry must show in the imaginary part");
        assert!((plus.im + minus.im).abs() < 1e-10, "odd symmetry in xi");
        assert!((plus.re - minus.re).abs() < 1e-10, "even symmetry in xi");
    }

    #[test]
    fn scaled_symbol_of_stable_is_scale_free() {
        // stable laws are fixed points of the renormalization, so the scaled
        // symbol coincides with the R = 1 one
        let m = LevyMeasure::stable(1.0, 1).unwrap();
        let grid = TorusGrid::new(1, 1.0, 32).unwrap();
        let t1 = compute_symbol(&m.scaled(1.0).unwrap().to_measure().unwrap(), &grid).unwrap();
        let t2 = compute_symbol(&m.scaled(0.0625).unwrap().to_measure().unwrap(), &grid).unwrap();
        for i in 0..grid.len() {
            assert!((t1.at(i) - t2.at(i)).norm() < 1e-8 * (1.0 + t1.at(i).norm()));
        }
    }
}
