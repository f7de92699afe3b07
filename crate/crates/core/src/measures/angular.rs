//! Finite angular measures on the unit sphere, given as weighted
//! quadrature nodes, with an optional per-node jump-density modulation
//! `a_i` bounded below by `rho0_i`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct AngularNode {
    pub dir: Vec<f64>,
    pub weight: f64,
    /// Jump-density modulation in `[rho0, 1]`; 1 when absent.
    pub modulation: f64,
    /// Certified lower bound for the modulation.
    pub rho0: f64,
}

impl AngularNode {
    pub fn plain(dir: Vec<f64>, weight: f64) -> Self {
        AngularNode { dir, weight, modulation: 1.0, rho0: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularMeasure {
    pub dim: usize,
    pub nodes: Vec<AngularNode>,
}

impl AngularMeasure {
    pub fn new(dim: usize, nodes: Vec<AngularNode>) -> Result<Self> {
        if dim == 0 || dim > 3 {
            return Err(Error::config("angular presets cover dimensions 1..=3"));
        }
        if nodes.is_empty() {
            return Err(Error::config("angular measure needs at least one node"));
        }
        for n in &nodes {
            if n.dir.len() != dim {
                return Err(Error::config("angular node dimension mismatch"));
            }
            let norm: f64 = n.dir.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-9 {
                return Err(Error::config("angular nodes must be unit vectors"));
            }
            if n.weight <= 0.0 {
                return Err(Error::config("angular weights must be positive"));
            }
            if !(n.rho0 <= n.modulation && n.modulation <= 1.0 && n.rho0 > 0.0) {
                return Err(Error::config(
                    "modulation must satisfy 0 < rho0 <= a <= 1 per node",
                ));
            }
        }
        Ok(AngularMeasure { dim, nodes })
    }

    /// Counting nodes on `S^0`, uniform angles on `S^1`, Fibonacci points on `S^2`;
    /// weights sum to the surface measure of the sphere.
    pub fn uniform(dim: usize, count: usize) -> Result<Self> {
        let nodes = match dim {
            1 => vec![
                AngularNode::plain(vec![1.0], 1.0),
                AngularNode::plain(vec![-1.0], 1.0),
            ],
            2 => {
                let n = count.max(4);
                let w = 2.0 * std::f64::consts::PI / n as f64;
                (0..n)
                    .map(|i| {
                        let th = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
                        AngularNode::plain(vec![th.cos(), th.sin()], w)
                    })
                    .collect()
            }
            3 => {
                let n = count.max(16);
                let w = 4.0 * std::f64::consts::PI / n as f64;
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                (0..n)
                    .map(|i| {
                        let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                        let rho = (1.0 - z * z).sqrt();
                        let th = golden * i as f64;
                        AngularNode::plain(vec![rho * th.cos(), rho * th.sin(), z], w)
                    })
                    .collect()
            }
            _ => return Err(Error::config("angular presets cover dimensions 1..=3")),
        };
        AngularMeasure::new(dim, nodes)
    }

    /// Total mass `sum lambda_i`.
    pub fn total_mass(&self) -> f64 {
        self.nodes.iter().map(|n| n.weight).sum()
    }

    /// Effective mass `sum lambda_i a_i` with the density modulation applied.
    pub fn effective_mass(&self) -> f64 {
        self.nodes.iter().map(|n| n.weight * n.modulation).sum()
    }

    /// Directional second angular moment `sum lambda_i a_i (xi . w_i)^2`.
    pub fn directional_moment(&self, xi: &[f64]) -> f64 {
        self.nodes
            .iter()
            .map(|n| {
                let dot: f64 = n.dir.iter().zip(xi).map(|(a, b)| a * b).sum();
                n.weight * n.modulation * dot * dot
            })
            .sum()
    }

    /// Same moment with the certified lower bounds `rho0_i` in place of `a_i`.
    pub fn directional_moment_floor(&self, xi: &[f64]) -> f64 {
        self.nodes
            .iter()
            .map(|n| {
                let dot: f64 = n.dir.iter().zip(xi).map(|(a, b)| a * b).sum();
                n.weight * n.rho0 * dot * dot
            })
            .sum()
    }

    /// True when the node set is closed under `w -> -w` with matching
    /// effective weights; the exact-cancellation requirement at `alpha = 1`.
    pub fn is_symmetric(&self) -> bool {
        self.nodes.iter().all(|n| {
            self.nodes.iter().any(|m| {
                n.dir
                    .iter()
                    .zip(&m.dir)
                    .all(|(a, b)| (a + b).abs() < 1e-12)
                    && (n.weight * n.modulation - m.weight * m.modulation).abs()
                        < 1e-12 * (n.weight * n.modulation)
            })
        })
    }

    /// First angular moment `sum lambda_i a_i w_i`; zero for symmetric measures.
    pub fn mean_direction(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim];
        for n in &self.nodes {
            for (a, d) in acc.iter_mut().zip(&n.dir) {
                *a += n.weight * n.modulation * d;
            }
        }
        acc
    }

    /// Second angular moment matrix `sum lambda_i a_i w_i w_i^T`, row-major.
    pub fn covariance_direction(&self) -> Vec<f64> {
        let d = self.dim;
        let mut acc = vec![0.0; d * d];
        for n in &self.nodes {
            for i in 0..d {
                for j in 0..d {
                    acc[i * d + j] += n.weight * n.modulation * n.dir[i] * n.dir[j];
                }
            }
        }
        acc
    }
}

/// Unit-direction grids used when scanning the nondegeneracy condition.
pub fn default_direction_grid(dim: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..64)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
                vec![th.cos(), th.sin()]
            })
            .collect(),
        _ => {
            let n = 128;
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..n)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let th = golden * i as f64;
                    vec![rho * th.cos(), rho * th.sin(), z]
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_masses() {
        assert!((AngularMeasure::uniform(1, 0).unwrap().total_mass() - 2.0).abs() < 1e-15);
        let m2 = AngularMeasure::uniform(2, 32).unwrap();
        assert!((m2.total_mass() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let m3 = AngularMeasure::uniform(3, 64).unwrap();
        assert!((m3.total_mass() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn uniform_is_symmetric_and_centered() {
        let m = AngularMeasure::uniform(2, 32).unwrap();
        assert!(m.is_symmetric());
        assert!(m.mean_direction().iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn directional_moment_isotropy_d2() {
        let m = AngularMeasure::uniform(2, 64).unwrap();
        let a = m.directional_moment(&[1.0, 0.0]);
        let b = m.directional_moment(&[0.6, 0.8]);
        assert!((a - b).abs() < 1e-10 * a);
        // trace identity: moments over orthogonal directions sum to the mass
        let c = m.directional_moment(&[0.0, 1.0]);
        assert!((a + c - m.total_mass()).abs() < 1e-10);
    }

    #[test]
    fn asymmetric_detected() {
        let m = AngularMeasure::new(
            1,
            vec![
                AngularNode::plain(vec![1.0], 2.0),
                AngularNode::plain(vec![-1.0], 1.0),
            ],
        )
        .unwrap();
        assert!(!m.is_symmetric());
    }

    #[test]
    fn modulation_bounds_enforced() {
        let bad = AngularMeasure::new(
            1,
            vec![AngularNode { dir: vec![1.0], weight: 1.0, modulation: 0.4, rho0: 0.5 }],
        );
        assert!(bad.is_err());
    }
}
