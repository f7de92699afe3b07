//! JSON presets for measures. Schema:
//!
//! ```json
//! {
//!   "family": "stable" | "phi1" | ... | "phi5" | "tabulated",
//!   "alpha": 1.0,
//!   "dim": 1,
//!   "params": { "scale": 1.0, "a": 0.5, "b": 0.3, "exponents": [..],
//!               "m": 0.5, "r": [..], "delta": [..] },
//!   "angular": { "kind": "uniform" | "nodes", "count": 64,
//!                "nodes": [{"dir": [..], "weight": 1.0, "a": 0.8, "rho0": 0.5}] }
//! }
//! ```
//!
//! `alpha` may be omitted for the phi families (it is derived from the
//! variant); when present it must agree with the derived value.

use serde::{Deserialize, Serialize};

use super::{AngularMeasure, AngularNode, LevyMeasure, PhiVariant, RadialProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub dim: usize,
    #[serde(default)]
    pub params: MeasureParams,
    #[serde(default)]
    pub angular: AngularConfig,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MeasureParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngularConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<AngularNodeConfig>>,
}

impl Default for AngularConfig {
    fn default() -> Self {
        AngularConfig { kind: "uniform".into(), count: None, nodes: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AngularNodeConfig {
    pub dir: Vec<f64>,
    pub weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho0: Option<f64>,
}

impl MeasureConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("measure config: {e}")))
    }

    pub fn build(&self) -> Result<LevyMeasure> {
        let angular = self.build_angular()?;
        let require = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::config(format!("family {} needs params.{name}", self.family)))
        };
        let (radial, derived_alpha) = match self.family.as_str() {
            "stable" => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| Error::config("stable family needs an explicit alpha"))?;
                let scale = self.params.scale.unwrap_or(1.0);
                (RadialProfile::StablePower { alpha, scale }, alpha)
            }
            "phi1" => {
                let exps = self
                    .params
                    .exponents
                    .clone()
                    .ok_or_else(|| Error::config("phi1 needs params.exponents"))?;
                let v = PhiVariant::PowerSum { exponents: exps };
                v.validate()?;
                let a = v.nominal_alpha();
                (RadialProfile::PhiFamily(v), a)
            }
            "phi2" => {
                let v = PhiVariant::ShiftedPower {
                    a: require(self.params.a, "a")?,
                    b: require(self.params.b, "b")?,
                };
                v.validate()?;
                let a = v.nominal_alpha();
                (RadialProfile::PhiFamily(v), a)
            }
            "phi3" => {
                let v = PhiVariant::LogPerturbed {
                    a: require(self.params.a, "a")?,
                    b: require(self.params.b, "b")?,
                };
                v.validate()?;
                let a = v.nominal_alpha();
                (RadialProfile::PhiFamily(v), a)
            }
            "phi4" => {
                let v = PhiVariant::Relativistic {
                    a: require(self.params.a, "a")?,
                    m: require(self.params.m, "m")?,
                };
                v.validate()?;
                let a = v.nominal_alpha();
                (RadialProfile::PhiFamily(v), a)
            }
            "phi5" => {
                let v = PhiVariant::LogCosh { a: require(self.params.a, "a")? };
                v.validate()?;
                let a = v.nominal_alpha();
                (RadialProfile::PhiFamily(v), a)
            }
            "tabulated" => {
                let r = self
                    .params
                    .r
                    .clone()
                    .ok_or_else(|| Error::config("tabulated needs params.r"))?;
                let delta = self
                    .params
                    .delta
                    .clone()
                    .ok_or_else(|| Error::config("tabulated needs params.delta"))?;
                let radial = RadialProfile::tabulated(&r, &delta)?;
                // infer the order from the small-radius slope of the tail
                let alpha = match self.alpha {
                    Some(a) => a,
                    None => -radial.local_tail_exponent(r[0] * 4.0),
                };
                (radial, alpha)
            }
            other => return Err(Error::config(format!("unknown measure family '{other}'"))),
        };
        if let Some(a) = self.alpha {
            if (a - derived_alpha).abs() > 0.05 {
                return Err(Error::config(format!(
                    "declared alpha {a} conflicts with the family's derived order {derived_alpha}"
                )));
            }
        }
        // tabulated deltas are absolute tails; fold the angular mass out so
        // that tail() reproduces the table exactly
        let radial = if self.family == "tabulated" {
            match radial {
                RadialProfile::Tabulated(_) => RadialProfile::Scaled {
                    base: Box::new(radial),
                    scale: 1.0,
                    norm: 1.0 / angular.effective_mass(),
                },
                r => r,
            }
        } else {
            radial
        };
        LevyMeasure::new(derived_alpha, radial, angular)
    }

    fn build_angular(&self) -> Result<AngularMeasure> {
        match self.angular.kind.as_str() {
            "uniform" => AngularMeasure::uniform(
                self.dim,
                self.angular.count.unwrap_or(match self.dim {
                    1 => 2,
                    2 => 64,
                    _ => 128,
                }),
            ),
            "nodes" => {
                let nodes = self
                    .angular
                    .nodes
                    .as_ref()
                    .ok_or_else(|| Error::config("angular kind 'nodes' needs a node list"))?;
                let nodes = nodes
                    .iter()
                    .map(|n| {
                        let modulation = n.a.unwrap_or(1.0);
                        AngularNode {
                            dir: n.dir.clone(),
                            weight: n.weight,
                            modulation,
                            rho0: n.rho0.unwrap_or(modulation),
                        }
                    })
                    .collect();
                AngularMeasure::new(self.dim, nodes)
            }
            other => Err(Error::config(format!("unknown angular kind '{other}'"))),
        }
    }
}
