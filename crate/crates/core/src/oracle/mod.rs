//! Brute-force evaluation of the defining integrals by exhaustive
//! enumeration over residue cosets, with certified local constancy: every
//! enumerated quantity carries an error radius, cells subdivide until every
//! decision (support membership, Hilbert-symbol class, character value) is
//! provably constant on the cell, and oracles refuse rather than approximate
//! when the cell budget is exhausted.

mod engine;
mod i_orbit;
mod j_orbit;
mod psi_g;
mod psi_gp;
mod tracked;

pub use engine::{cell_sum, Budget, Step, VarSpec};
pub use i_orbit::{
    i_ij_oracle, i_isolated_oracle, i_one_param_oracle, i_rho2_family2_oracle,
};
pub use j_orbit::{j_ij_oracle, j_one_param_oracle};
pub use psi_g::{gamma_cell_oracle, psi_coeff_g_oracle, GammaReport};
pub use psi_gp::psi_coeff_gp_oracle;
pub use tracked::TP;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("enumeration budget exhausted after {visited} cells (limit {limit})")]
    Refused { visited: u64, limit: u64 },
    #[error("enumeration point outside the covered formula domain: {0}")]
    Uncovered(String),
    #[error("p-adic precision exhausted: {0}")]
    Precision(String),
}

/// Value plus the number of evaluated cells.
pub type OracleResult = Result<(crate::complex::CVal, u64), OracleError>;
