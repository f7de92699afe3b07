//! Deterministic test-function corpora. Every element is defined as a
//! continuum function (explicit modes or closed forms), so the same corpus
//! element can be materialized on grids of different resolution for
//! refinement studies. All elements are real and band-limited to half the
//! Nyquist frequency of the coarsest intended grid.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measures::LevyMeasure;
use crate::spectral::{GridFunction, TorusGrid};

/// The default twelve-element corpus: a constant, three harmonics, four
/// seeded random band-limited samples, three periodized bumps, and a
/// lacunary cosine series.
pub fn standard_corpus(grid: &TorusGrid, seed: u64) -> Vec<(String, GridFunction)> {
    let mut out: Vec<(String, GridFunction)> = Vec::new();
    out.push(("constant".into(), GridFunction::from_real_fn(*grid, |_| 1.0)));
    for k in [1.0, 3.0, 8.0] {
        let side = grid.side();
        out.push((
            format!("harmonic_k{k}"),
            GridFunction::from_real_fn(*grid, move |x| {
                (2.0 * std::f64::consts::PI * k * x[0] / side).cos()
            }),
        ));
    }
    for (i, band) in [4, 8, 16, 12].iter().enumerate() {
        out.push((
            format!("random_band{band}_{i}"),
            random_band_limited(grid, *band, seed.wrapping_add(i as u64)),
        ));
    }
    for sigma in [0.2, 0.1, 0.05] {
        let side = grid.side();
        out.push((
            format!("bump_sigma{sigma}"),
            GridFunction::from_real_fn(*grid, move |x| periodized_bump(x, side, sigma * side)),
        ));
    }
    out.push(("lacunary".into(), lacunary(grid, 0.5, 2.0, 5)));
    out
}

/// Real band-limited sample with seeded Gaussian-ish coefficients on the
/// mode box `|k|_inf <= band`; identical across grid resolutions.
pub fn random_band_limited(grid: &TorusGrid, band: i64, seed: u64) -> GridFunction {
    let dim = grid.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut coeffs: HashMap<[i64; 3], Complex64> = HashMap::new();
    // iterate the box in a fixed order; keep one representative per +-k pair
    let mut k = [0i64; 3];
    let range: Vec<i64> = (-band..=band).collect();
    let mut visit = |k: [i64; 3], rng: &mut ChaCha8Rng| {
        let first_nonzero = k.iter().take(dim).find(|&&v| v != 0);
        match first_nonzero {
            None => {}
            Some(&v) if v < 0 => {}
            _ => {
                let decay = 1.0 / (1.0 + k.iter().map(|&x| (x * x) as f64).sum::<f64>());
                let amp: f64 = rng.random::<f64>() * decay;
                let phase: f64 = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
                let c = Complex64::from_polar(amp, phase);
                coeffs.insert(k, c);
                let mut neg = k;
                for v in &mut neg {
                    *v = -*v;
                }
                coeffs.insert(neg, c.conj());
            }
        }
    };
    match dim {
        1 => {
            for &a in &range {
                k[0] = a;
                visit(k, &mut rng);
            }
        }
        2 => {
            for &a in &range {
                for &b in &range {
                    k = [a, b, 0];
                    visit(k, &mut rng);
                }
            }
        }
        _ => {
            for &a in &range {
                for &b in &range {
                    for &c in &range {
                        k = [a, b, c];
                        visit(k, &mut rng);
                    }
                }
            }
        }
    }
    GridFunction::from_modes(*grid, |kq| {
        let mut key = [0i64; 3];
        key[..kq.len()].copy_from_slice(kq);
        coeffs.get(&key).copied().unwrap_or(Complex64::ZERO)
    })
    .to_physical()
}

/// Product of periodized Gaussians centered at `side/2`, numerically
/// band-limited for `sigma` at least a few grid cells.
pub fn periodized_bump(x: &[f64], side: f64, sigma: f64) -> f64 {
    x.iter()
        .map(|&xi| {
            let mut acc = 0.0;
            for n in -3..=3 {
                let d = xi - 0.5 * side - n as f64 * side;
                acc += (-d * d / (2.0 * sigma * sigma)).exp();
            }
            acc
        })
        .product()
}

/// Lacunary cosine series `sum_j decay^j cos(2 pi N^j x0 / L)` with `j` up
/// to `levels`, a sparse multi-scale sample.
pub fn lacunary(grid: &TorusGrid, decay: f64, n_base: f64, levels: usize) -> GridFunction {
    let side = grid.side();
    GridFunction::from_real_fn(*grid, move |x| {
        (0..=levels)
            .map(|j| {
                decay.powi(j as i32)
                    * (2.0 * std::f64::consts::PI * n_base.powi(j as i32) * x[0] / side).cos()
            })
            .sum()
    })
}

/// Lacunary forcing with block amplitudes `w(N^-j)^beta`: an input whose
/// weighted block norms are flat, the tight test case for the solution
/// estimates.
pub fn lacunary_rough(
    grid: &TorusGrid,
    m: &LevyMeasure,
    beta: f64,
    n_base: f64,
    levels: usize,
    include_mean: bool,
) -> GridFunction {
    let side = grid.side();
    let amps: Vec<f64> = (0..=levels)
        .map(|j| m.w_of(n_base.powi(-(j as i32))).unwrap().powf(beta))
        .collect();
    GridFunction::from_real_fn(*grid, move |x| {
        let series: f64 = amps
            .iter()
            .enumerate()
            .map(|(j, a)| {
                a * (2.0 * std::f64::consts::PI * n_base.powi(j as i32) * x[0] / side).cos()
            })
            .sum();
        if include_mean {
            series + 1.0
        } else {
            series
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_twelve_elements_and_is_deterministic() {
        let grid = TorusGrid::new(1, 1.0, 64).unwrap();
        let a = standard_corpus(&grid, 5);
        let b = standard_corpus(&grid, 5);
        assert_eq!(a.len(), 12);
        for ((na, fa), (nb, fb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(fa.values(), fb.values());
        }
    }

    #[test]
    fn corpus_elements_are_real_and_band_limited() {
        let grid = TorusGrid::new(1, 1.0, 128).unwrap();
        for (name, f) in standard_corpus(&grid, 11) {
            let imag_max = f
                .values()
                .iter()
                .map(|v| v.im.abs())
                .fold(0.0, f64::max);
            assert!(imag_max < 1e-12, "{name} not real: {imag_max}");
            let freq = f.to_frequency();
            let sup = f.sup_norm();
            for (i, v) in freq.values().iter().enumerate() {
                let k = freq.grid().signed_mode(freq.grid().coords_of(i)[0]);
                if k.unsigned_abs() as usize > 32 {
                    assert!(
                        v.norm() < 1e-10 * (1.0 + sup),
                        "{name} has energy at |k|={k}: {}",
                        v.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn refinement_preserves_the_continuum_function() {
        let coarse = TorusGrid::new(1, 1.0, 64).unwrap();
        let fine = TorusGrid::new(1, 1.0, 128).unwrap();
        let a = standard_corpus(&coarse, 3);
        let b = standard_corpus(&fine, 3);
        for ((name, fa), (_, fb)) in a.iter().zip(&b) {
            // coarse points are every second fine point
            for i in 0..fa.values().len() {
                let va = fa.values()[i];
                let vb = fb.values()[2 * i];
                assert!((va - vb).norm() < 1e-9, "{name} at {i}: {va} vs {vb}");
            }
        }
    }

    #[test]
    fn rough_lacunary_has_flat_weighted_blocks() {
        let grid = TorusGrid::new(1, 1.0, 256).unwrap();
        let m = LevyMeasure::stable(1.0, 1).unwrap();
        let f = lacunary_rough(&grid, &m, 0.5, 2.0, 5, false);
        // amplitude of mode 2^j is w(2^-j)^beta by construction
        let freq = f.to_frequency();
        for j in 0..=5usize {
            let k = 2usize.pow(j as u32);
            let idx = (0..grid.len())
                .find(|&i| grid.signed_mode(grid.coords_of(i)[0]) == k as i64)
                .unwrap();
            let expect = 0.5 * m.w_of(2f64.powi(-(j as i32))).unwrap().powf(0.5);
            assert!(
                (freq.values()[idx].norm() - expect).abs() < 1e-12,
                "block {j}"
            );
        }
    }
}
