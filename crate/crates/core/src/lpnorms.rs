//! Littlewood-Paley partitions and the two norm scales they induce: the
//! generalized Besov norm `sup_j w(N^-j)^{-beta} |u * phi_j|_0` and the
//! w-modulus Holder norm `|u|_0 + sup |u(x+h)-u(x)| / w(|h|)^beta`.
//!
//! The cutoff is built from the canonical smooth step; any admissible
//! cutoff changes norms only by equivalence, so reports always measure
//! ratios rather than absolute values.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::LevyMeasure;
use crate::orv;
use crate::spectral::{GridFunction, TorusGrid};

/// Smooth radial cutoff: one on `|s| <= 1`, zero on `|s| >= n_base`,
/// `h(t)/(h(t)+h(1-t))` with `h(t) = exp(-1/t)` in between.
fn cutoff(n_base: f64, s: f64) -> f64 {
    let a = s.abs();
    if a <= 1.0 {
        1.0
    } else if a >= n_base {
        0.0
    } else {
        let t = (n_base - a) / (n_base - 1.0);
        let h = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
        h(t) / (h(t) + h(1.0 - t))
    }
}

/// Frequency-annulus partition of unity subordinate to base `N` on a grid.
#[derive(Debug, Clone)]
pub struct Partition {
    n_base: f64,
    j_max: usize,
    grid: TorusGrid,
    /// `phi_hat_j` sampled on the lattice, `j = 0..=j_max`.
    block_symbols: Vec<Vec<f64>>,
}

/// Builds the partition with the top annulus fitting under the Nyquist
/// frequency: `j_max = floor(log_N(nyquist / N))`.
pub fn build_partition(n_base: f64, grid: &TorusGrid) -> Result<Partition> {
    if !(n_base > 1.0) {
        return Err(Error::usage("partition base must exceed one"));
    }
    let j_max = ((grid.nyquist() / n_base).ln() / n_base.ln() + 1e-9).floor();
    if j_max < 1.0 {
        return Err(Error::usage("grid too coarse for the requested partition base"));
    }
    let j_max = j_max as usize;
    let mut block_symbols = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut vals = Vec::with_capacity(grid.len());
        for idx in 0..grid.len() {
            let xi = grid.freq_of(idx);
            let r = xi[..grid.dim()].iter().map(|x| x * x).sum::<f64>().sqrt();
            let v = if j == 0 {
                cutoff(n_base, r)
            } else {
                cutoff(n_base, r / n_base.powi(j as i32))
                    - cutoff(n_base, r / n_base.powi(j as i32 - 1))
            };
            vals.push(v);
        }
        block_symbols.push(vals);
    }
    Ok(Partition { n_base, j_max, grid: *grid, block_symbols })
}

impl Partition {
    pub fn n_base(&self) -> f64 {
        self.n_base
    }
    pub fn j_max(&self) -> usize {
        self.j_max
    }
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }
    pub fn block_symbol(&self, j: usize, idx: usize) -> f64 {
        self.block_symbols[j][idx]
    }

    /// The `j`-th frequency block `u * phi_j`.
    pub fn block(&self, u: &GridFunction, j: usize) -> Result<GridFunction> {
        self.check(u, j)?;
        let mut freq = u.to_frequency();
        for (i, v) in freq.values_mut().iter_mut().enumerate() {
            *v *= self.block_symbols[j][i];
        }
        Ok(match u.space() {
            crate::spectral::Space::Frequency => freq,
            crate::spectral::Space::Physical => freq.to_physical(),
        })
    }

    /// Partial sum `sum_{j<=n} u * phi_j`, realized exactly by the
    /// telescoped multiplier `cutoff(N^-n xi)`.
    pub fn truncate(&self, u: &GridFunction, n: usize) -> Result<GridFunction> {
        self.check(u, n)?;
        let scale = self.n_base.powi(n as i32);
        let n_base = self.n_base;
        let dim = self.grid.dim();
        Ok(u.apply_multiplier(move |xi| {
            let r = xi[..dim].iter().map(|x| x * x).sum::<f64>().sqrt();
            Complex64::new(cutoff(n_base, r / scale), 0.0)
        }))
    }

    fn check(&self, u: &GridFunction, j: usize) -> Result<()> {
        if u.grid() != &self.grid {
            return Err(Error::usage("partition grid does not match the function grid"));
        }
        if j > self.j_max {
            return Err(Error::usage(format!(
                "block index {j} exceeds the top block {}",
                self.j_max
            )));
        }
        Ok(())
    }
}

/// Blocks of a function together with the weights `w(N^-j)^{-beta}`.
#[derive(Debug, Clone)]
pub struct LpDecomposition {
    pub blocks: Vec<GridFunction>,
    pub weights: Vec<f64>,
    pub beta: f64,
}

/// Block weights `w(N^-j)^{-beta}` for `j = 0..=j_max`.
pub fn block_weights(m: &LevyMeasure, beta: f64, p: &Partition) -> Result<Vec<f64>> {
    (0..=p.j_max)
        .map(|j| Ok(m.w_of(p.n_base.powi(-(j as i32)))?.powf(-beta)))
        .collect()
}

pub fn decompose(u: &GridFunction, m: &LevyMeasure, beta: f64, p: &Partition) -> Result<LpDecomposition> {
    let weights = block_weights(m, beta, p)?;
    let blocks = (0..=p.j_max).map(|j| p.block(u, j)).collect::<Result<Vec<_>>>()?;
    Ok(LpDecomposition { blocks, weights, beta })
}

/// Generalized Besov norm `max_j w(N^-j)^{-beta} |u * phi_j|_0`.
pub fn besov_norm(u: &GridFunction, m: &LevyMeasure, beta: f64, p: &Partition) -> Result<f64> {
    let weights = block_weights(m, beta, p)?;
    let mut best: f64 = 0.0;
    let freq = u.to_frequency();
    for (j, w) in weights.iter().enumerate() {
        let mut block = freq.clone();
        for (i, v) in block.values_mut().iter_mut().enumerate() {
            *v *= p.block_symbols[j][i];
        }
        best = best.max(w * block.sup_norm());
    }
    Ok(best)
}

/// Dyadic grid shifts per axis up to a quarter period, avoiding wrap-around
/// artifacts in the difference quotients.
pub fn default_shift_set(grid: &TorusGrid) -> Vec<[i64; 3]> {
    let mut shifts = Vec::new();
    let mut cells = 1i64;
    while (cells as f64) * grid.spacing() <= grid.side() / 4.0 {
        for axis in 0..grid.dim() {
            let mut s = [0i64; 3];
            s[axis] = cells;
            shifts.push(s);
        }
        cells *= 2;
    }
    shifts
}

/// w-modulus Holder norm `|u|_0 + max_h sup_x |u(x+h) - u(x)| / w(|h|)^beta`.
pub fn holder_norm(
    u: &GridFunction,
    m: &LevyMeasure,
    beta: f64,
    shifts: &[[i64; 3]],
) -> Result<f64> {
    let phys = u.to_physical();
    let h = phys.grid().spacing();
    let mut best: f64 = 0.0;
    for shift in shifts {
        let length = (shift.iter().map(|&s| (s * s) as f64).sum::<f64>()).sqrt() * h;
        let w = m.w_of(length)?.powf(beta);
        let rolled = phys.roll(*shift);
        let diff: f64 = rolled
            .values()
            .iter()
            .zip(phys.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        best = best.max(diff / w);
    }
    Ok(phys.sup_norm() + best)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormEquivalenceReport {
    /// Per-element `(name, besov, holder, ratio holder/besov)`.
    pub rows: Vec<(String, f64, f64, f64)>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Pass band `[1/k, k]` for the ratios.
    pub band: f64,
    pub pass: bool,
}

impl NormEquivalenceReport {
    pub fn to_csv(&self, beta: f64) -> String {
        let mut out = String::from("function_id,beta,besov,holder,ratio\n");
        for (name, besov, holder, ratio) in &self.rows {
            out.push_str(&format!("{name},{beta},{besov},{holder},{ratio}\n"));
        }
        out
    }
}

/// Ratio study `|u|_beta / |u|_{beta,infty}` over a corpus; the exponent
/// must lie below the reciprocal upper index for the Holder form to be a
/// norm on this scale.
pub fn equivalence_report(
    corpus: &[(String, GridFunction)],
    m: &LevyMeasure,
    beta: f64,
    p: &Partition,
    band: f64,
) -> Result<NormEquivalenceReport> {
    let idx = orv::estimate_indices(m)?;
    if !(beta > 0.0 && beta < 1.0 / idx.q1) {
        return Err(Error::usage(format!(
            "exponent must lie in (0, 1/q1) = (0, {:.4}), got {beta}",
            1.0 / idx.q1
        )));
    }
    let shifts = default_shift_set(p.grid());
    let mut rows = Vec::new();
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    for (name, u) in corpus {
        let b = besov_norm(u, m, beta, p)?;
        let h = holder_norm(u, m, beta, &shifts)?;
        if b == 0.0 && h == 0.0 {
            continue;
        }
        let ratio = h / b;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        rows.push((name.clone(), b, h, ratio));
    }
    let pass = min_ratio >= 1.0 / band && max_ratio <= band;
    Ok(NormEquivalenceReport { rows, min_ratio, max_ratio, band, pass })
}

/// Minimal constant realizing `|u|_{beta',infty} <= eps |u|_{beta,infty} +
/// C |u|_0` for one function.
pub fn interpolation_constant(
    u: &GridFunction,
    m: &LevyMeasure,
    beta_lo: f64,
    beta_hi: f64,
    eps: f64,
    p: &Partition,
) -> Result<f64> {
    let lo = besov_norm(u, m, beta_lo, p)?;
    let hi = besov_norm(u, m, beta_hi, p)?;
    let sup = u.sup_norm();
    if sup == 0.0 {
        return Ok(0.0);
    }
    Ok(((lo - eps * hi) / sup).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::standard_corpus;

    fn setup() -> (TorusGrid, LevyMeasure, Partition) {
        let grid = TorusGrid::new(1, 1.0, 128).unwrap();
        let m = LevyMeasure::stable(1.0, 1).unwrap();
        let p = build_partition(2.0, &grid).unwrap();
        (grid, m, p)
    }

    #[test]
    fn partition_telescopes_exactly() {
        let (grid, _, p) = setup();
        assert_eq!(p.j_max(), 5); // nyquist 64, base 2
        for idx in 0..grid.len() {
            let xi = grid.freq_of(idx)[0].abs();
            let sum: f64 = (0..=p.j_max()).map(|j| p.block_symbol(j, idx)).sum();
            let expect = cutoff(2.0, xi / 2f64.powi(p.j_max() as i32));
            assert!((sum - expect).abs() < 1e-14, "xi={xi}: {sum} vs {expect}");
            if xi <= 2f64.powi(p.j_max() as i32) {
                assert!((sum - 1.0).abs() < 1e-14, "partition must sum to one at xi={xi}");
            }
        }
    }

    #[test]
    fn block_symbol_hits_one_at_annulus_gap() {
        let (grid, _, p) = setup();
        // at |xi| = N^j the lower cutoff is exactly one and the upper zero
        for j in 1..=p.j_max() {
            let k = 2usize.pow(j as u32);
            let idx = (0..grid.len())
                .find(|&i| grid.freq_of(i)[0] == k as f64)
                .unwrap();
            assert!((p.block_symbol(j, idx) - 1.0).abs() < 1e-15);
        }
        // block 3 vanishes at |xi| = N (outside its annulus [N^2, N^4])
        let idx_n = (0..grid.len()).find(|&i| grid.freq_of(i)[0] == 2.0).unwrap();
        assert_eq!(p.block_symbol(3, idx_n), 0.0);
    }

    #[test]
    fn blocks_reconstruct_band_limited_functions() {
        let (grid, m, p) = setup();
        for (name, u) in standard_corpus(&grid, 2) {
            let dec = decompose(&u, &m, 0.4, &p).unwrap();
            let mut sum = GridFunction::zeros(grid, crate::spectral::Space::Physical);
            for b in &dec.blocks {
                sum = sum.add(b).unwrap();
            }
            let err: f64 = sum
                .values()
                .iter()
                .zip(u.to_physical().values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "{name}: reconstruction error {err}");
        }
    }

    #[test]
    fn blocks_are_almost_orthogonal() {
        let (grid, _, p) = setup();
        let u = GridFunction::from_real_fn(grid, |x| {
            (2.0 * std::f64::consts::PI * 5.0 * x[0]).cos()
                + 0.7 * (2.0 * std::f64::consts::PI * 17.0 * x[0]).sin()
        });
        for j in 0..=p.j_max() {
            let bj = p.block(&u, j).unwrap();
            for k in 0..=p.j_max() {
                if (j as i64 - k as i64).abs() >= 2 {
                    let bjk = p.block(&bj, k).unwrap();
                    assert!(bjk.sup_norm() < 1e-13, "blocks {j},{k} overlap");
                }
            }
        }
    }

    #[test]
    fn besov_norm_of_constant() {
        let (grid, m, p) = setup();
        let u = GridFunction::from_real_fn(grid, |_| 1.0);
        // only block zero survives; w(1) = 1/2 for the order-one stable law
        for &beta in &[0.3, 0.7] {
            let v = besov_norm(&u, &m, beta, &p).unwrap();
            assert!((v - 2f64.powf(beta)).abs() < 1e-12, "beta={beta}: {v}");
        }
        let zero = GridFunction::zeros(grid, crate::spectral::Space::Physical);
        assert_eq!(besov_norm(&zero, &m, 0.4, &p).unwrap(), 0.0);
    }

    #[test]
    fn besov_norm_of_harmonic_is_weighted_block_value() {
        let (grid, m, p) = setup();
        let k = 5.0;
        let u = GridFunction::from_fn(grid, |x| {
            (Complex64::i() * 2.0 * std::f64::consts::PI * k * x[0]).exp()
        });
        let expect = (0..=p.j_max())
            .map(|j| {
                let idx = (0..grid.len()).find(|&i| grid.freq_of(i)[0] == k).unwrap();
                m.w_of(2f64.powi(-(j as i32))).unwrap().powf(-0.4) * p.block_symbol(j, idx)
            })
            .fold(0.0f64, f64::max);
        let v = besov_norm(&u, &m, 0.4, &p).unwrap();
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");
        // at most two blocks carry the harmonic
        let nonzero = (0..=p.j_max())
            .filter(|&j| {
                let idx = (0..grid.len()).find(|&i| grid.freq_of(i)[0] == k).unwrap();
                p.block_symbol(j, idx) > 1e-14
            })
            .count();
        assert!(nonzero <= 2);
    }

    #[test]
    fn holder_norm_basics() {
        let (grid, m, _) = setup();
        let shifts = default_shift_set(&grid);
        let c = GridFunction::from_real_fn(grid, |_| 3.0);
        assert!((holder_norm(&c, &m, 0.4, &shifts).unwrap() - 3.0).abs() < 1e-12);
        // shift invariance on grid shifts
        let u = GridFunction::from_real_fn(grid, |x| (2.0 * std::f64::consts::PI * x[0]).cos());
        let a = holder_norm(&u, &m, 0.4, &shifts).unwrap();
        let b = holder_norm(&u.roll([11, 0, 0]), &m, 0.4, &shifts).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn cosine_difference_quotient_scales_with_w() {
        // |u(x+h)-u(x)| ~ 2 pi |h| |sin|: the quotient against w(|h|)^beta
        // stays finite precisely because beta q1 < 1
        let (grid, m, _) = setup();
        let u = GridFunction::from_real_fn(grid, |x| (2.0 * std::f64::consts::PI * x[0]).cos());
        let beta = 0.4;
        for cells in [1i64, 2, 4, 8] {
            let h = cells as f64 * grid.spacing();
            let rolled = u.roll([cells, 0, 0]);
            let diff: f64 = rolled
                .values()
                .iter()
                .zip(u.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            let lhs = diff / m.w_of(h).unwrap().powf(beta);
            let taylor = 2.0 * std::f64::consts::PI * h / m.w_of(h).unwrap().powf(beta);
            assert!(lhs <= taylor * 1.01, "h={h}: {lhs} vs {taylor}");
            assert!(lhs >= taylor * 0.5, "h={h}: quotient collapsed");
        }
    }

    #[test]
    fn equivalence_ratios_in_band() {
        let (grid, m, p) = setup();
        let corpus = standard_corpus(&grid, 7);
        let rep = equivalence_report(&corpus, &m, 0.4, &p, 50.0).unwrap();
        assert!(rep.pass, "ratios [{}, {}]", rep.min_ratio, rep.max_ratio);
        assert_eq!(rep.rows.len(), 12);
        // exponent out of range is a usage error citing the bound
        let err = equivalence_report(&corpus, &m, 1.2, &p, 50.0).unwrap_err();
        assert!(format!("{err}").contains("1/q1"));
    }

    #[test]
    fn equivalence_ratio_stable_under_refinement() {
        let m = LevyMeasure::stable(1.0, 1).unwrap();
        let coarse = TorusGrid::new(1, 1.0, 128).unwrap();
        let fine = TorusGrid::new(1, 1.0, 256).unwrap();
        let pc = build_partition(2.0, &coarse).unwrap();
        let pf = build_partition(2.0, &fine).unwrap();
        let cc = standard_corpus(&coarse, 7);
        let cf = standard_corpus(&fine, 7);
        let rc = equivalence_report(&cc, &m, 0.4, &pc, 50.0).unwrap();
        let rf = equivalence_report(&cf, &m, 0.4, &pf, 50.0).unwrap();
        for ((name, _, _, ra), (_, _, _, rb)) in rc.rows.iter().zip(&rf.rows) {
            assert!(
                ((ra - rb) / ra).abs() <= 0.1,
                "{name}: ratio drift {ra} -> {rb}"
            );
        }
    }

    #[test]
    fn truncate_partial_sums() {
        let (grid, m, p) = setup();
        let u = standard_corpus(&grid, 3).remove(5).1; // a random band-limited sample
        // full truncation returns the function
        let full = p.truncate(&u, p.j_max()).unwrap();
        let err: f64 = full
            .values()
            .iter()
            .zip(u.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10);
        // a pure harmonic in block 3 dies under truncation at 2
        let h = GridFunction::from_real_fn(grid, |x| {
            (2.0 * std::f64::consts::PI * 8.0 * x[0]).cos()
        });
        let t2 = p.truncate(&h, 2).unwrap();
        assert!(t2.sup_norm() < 1e-13);
        // truncation error decays in a weaker norm as the cut grows
        let beta_weak = 0.3;
        let mut prev = f64::INFINITY;
        for n in 2..=p.j_max() {
            let tn = p.truncate(&u, n).unwrap();
            let d = tn.sub(&u).unwrap();
            let e = besov_norm(&d, &m, beta_weak, &p).unwrap();
            // compare only above rounding noise
            if e > 1e-12 && prev > 1e-12 {
                assert!(e <= prev * (1.0 + 1e-9), "n={n}: {e} vs {prev}");
            }
            prev = e;
        }
    }

    #[test]
    fn interpolation_constant_finite_and_growing() {
        let (grid, m, p) = setup();
        for (name, u) in standard_corpus(&grid, 5) {
            let c1 = interpolation_constant(&u, &m, 0.3, 0.6, 0.1, &p).unwrap();
            let c2 = interpolation_constant(&u, &m, 0.3, 0.6, 0.01, &p).unwrap();
            assert!(c1.is_finite() && c2.is_finite());
            assert!(c2 >= c1 - 1e-12, "{name}: C_eps must grow as eps shrinks");
        }
    }

    #[test]
    fn sup_norm_bounded_by_weight_series_times_besov() {
        let (grid, m, p) = setup();
        let beta = 0.5;
        let series = crate::orv::check_ac1(&m, beta, 2.0).unwrap().value;
        for (name, u) in standard_corpus(&grid, 9) {
            let b = besov_norm(&u, &m, beta, &p).unwrap();
            assert!(
                u.sup_norm() <= series * b * (1.0 + 1e-9),
                "{name}: {} vs {}",
                u.sup_norm(),
                series * b
            );
        }
    }
}
