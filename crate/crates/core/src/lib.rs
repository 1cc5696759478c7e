//! Exact verification toolkit for the cubic-cover orbital-integral
//! identities: p-adic arithmetic, cubic character sums, the closed-form
//! case tables on both groups, and independent brute-force oracles for the
//! defining integrals.

pub mod charsums;
pub mod complex;
pub mod coverage;
pub mod hecke;
pub mod iside;
pub mod jside;
pub mod oracle;
pub mod padic;
pub mod report;
pub mod snf;
pub mod transfer;

pub use complex::CVal;
pub use padic::{Ctx, Mu3, Mu3Ident, PAdic, PadicError};
