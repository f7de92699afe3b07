//! Spectral machinery for the nonlocal parabolic Cauchy problem
//! `du/dt = L u - lambda u + f` on a periodic grid, where `L` is the
//! generator of a pure-jump Levy process whose tail function is
//! O-regularly varying at zero.

pub mod corpus;
pub mod error;
pub mod fracops;
pub mod lpnorms;
pub mod measures;
pub mod orv;
pub mod quad;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use fracops::{c_kappa, c_kappa_prime, DecayFit, FracNormReport, FracPowerSpec, PowerDirection};
pub use solver::{solve, CauchyProblem, EstimateReport, Forcing, SolveResult};
pub use lpnorms::{besov_norm, build_partition, holder_norm, LpDecomposition, NormEquivalenceReport, Partition};
pub use spectral::{compute_symbol, semigroup, GridFunction, Space, SymbolTable, TorusGrid};
pub use orv::{LemmaCase, LemmaReport, OrvReport, SeriesReport};
pub use measures::{
    AngularMeasure, ConditionBReport, ConditionCReport, LevyMeasure, MeasureConfig, MomentKind,
    RadialProfile, ScaledMeasure,
};
