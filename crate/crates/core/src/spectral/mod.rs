//! Periodic spectral discretization: grids, the FFT contract, symbol
//! tables, and semigroup action.

mod grid;
mod io;
mod symbol;

pub use grid::{GridFunction, Space, TorusGrid};
pub use io::{read_binary, write_binary, write_csv};
pub use symbol::{compute_symbol, SymbolTable};

use num_complex::Complex64;

use crate::error::{Error, Result};

impl GridFunction {
    /// Applies `psi -> map(psi)` as a multiplier from a precomputed table.
    pub fn apply_table(
        &self,
        table: &SymbolTable,
        map: impl Fn(Complex64) -> Complex64 + Sync,
    ) -> Result<GridFunction> {
        if table.grid() != self.grid() {
            return Err(Error::usage("symbol table grid does not match the function grid"));
        }
        let mut freq = self.to_frequency();
        for (i, v) in freq.values_mut().iter_mut().enumerate() {
            *v *= map(table.at(i));
        }
        Ok(match self.space() {
            Space::Frequency => freq,
            Space::Physical => freq.to_physical(),
        })
    }
}

/// Transition semigroup `E u(. + Z_t)` as the multiplier `exp(t psi)`.
/// Identity at `t = 0`; contraction in the supremum norm.
pub fn semigroup(u: &GridFunction, table: &SymbolTable, t: f64) -> Result<GridFunction> {
    if t < 0.0 {
        return Err(Error::usage("semigroup time must be nonnegative"));
    }
    u.apply_table(table, |psi| (psi * t).exp())
}

/// Generator application `L u` as the multiplier `psi`.
pub fn generator(u: &GridFunction, table: &SymbolTable) -> Result<GridFunction> {
    u.apply_table(table, |psi| psi)
}
