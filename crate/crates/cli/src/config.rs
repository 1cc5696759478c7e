//! Run configuration shared by the suites.

use fl_core::{Ctx, Mu3Ident, PadicError};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u64,
    pub precision: u32,
    /// overrides the per-suite base tolerance when set
    pub tol: Option<f64>,
    pub budget: u64,
    pub max_mn: i64,
    pub val_lo: i64,
    pub val_hi: i64,
    pub idents: Vec<Mu3Ident>,
    pub threads: usize,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 7,
            precision: 12,
            tol: None,
            budget: 100_000_000,
            max_mn: 4,
            val_lo: -6,
            val_hi: 6,
            idents: vec![Mu3Ident::Rho],
            threads: 0,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn ctx(&self, ident: Mu3Ident) -> Result<Ctx, PadicError> {
        Ctx::with_ident(self.p, self.precision, ident)
    }

    pub fn closed_tol(&self) -> f64 {
        self.tol.unwrap_or(fl_core::report::CLOSED_TOL)
    }

    pub fn oracle_tol(&self, terms: u64) -> f64 {
        self.tol.unwrap_or_else(|| fl_core::report::oracle_tol(terms))
    }

    /// Unit representatives covering the three cubic classes.
    pub fn unit_reps(&self, ctx: &Ctx) -> Vec<i64> {
        let g = ctx.prim_root as i64;
        vec![1, g, (g * g).rem_euclid(self.p as i64)]
    }
}
