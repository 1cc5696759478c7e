//! Adaptive exact enumeration over products of p-adic cells.
//!
//! Each variable ranges over a ball center + p^L·O, initially split into
//! cells of radius p^{-start_m}. A leaf either evaluates the integrand (its
//! value certified constant on the cell product) or asks for a split; cells
//! subdivide p-adically until every decision is certified, escalating to
//! outer variables when a cap is reached.

use super::tracked::TP;
use super::OracleError;
use crate::complex::{self, CVal};
use crate::padic::{Ctx, PAdic};

pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

/// p^Σdigits as a saturating estimate of an enumeration's initial cells.
pub fn cell_estimate(p: u64, digits: &[i64]) -> u64 {
    let total: i64 = digits.iter().map(|&d| d.max(0)).sum();
    if total > 40 {
        return u64::MAX;
    }
    p.saturating_pow(total as u32)
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.limit {
            Err(OracleError::Refused {
                visited: self.used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// One enumeration variable: the ball center + p^ball_exp·O, cells of
/// initial modulus start_m, refinable down to max_m.
pub struct VarSpec {
    pub center: PAdic,
    pub ball_exp: i64,
    pub start_m: i64,
    pub max_m: i64,
}

impl VarSpec {
    pub fn range(lo: i64, start_m: i64, depth: i64) -> VarSpec {
        VarSpec {
            center: PAdic::ZERO,
            ball_exp: lo,
            start_m: start_m.max(lo),
            max_m: start_m.max(lo) + depth,
        }
    }

    pub fn ball(center: PAdic, lo: i64, start_m: i64, depth: i64) -> VarSpec {
        VarSpec {
            center,
            ball_exp: lo,
            start_m: start_m.max(lo),
            max_m: start_m.max(lo) + depth,
        }
    }
}

pub enum Step {
    Val(CVal),
    Split,
}

type SpecFn<'a> = &'a dyn Fn(&[TP]) -> Option<VarSpec>;
type LeafFn<'a> = &'a dyn Fn(&[TP]) -> Result<Step, OracleError>;

/// Exact sum of measure(cell)·integrand over the product of cell families.
pub fn cell_sum(
    ctx: &Ctx,
    specs: &[SpecFn<'_>],
    leaf: LeafFn<'_>,
    budget: &mut Budget,
) -> Result<CVal, OracleError> {
    let mut assigned = Vec::with_capacity(specs.len());
    match level(ctx, specs, leaf, 0, &mut assigned, budget)? {
        Some(v) => Ok(v),
        None => Err(OracleError::Uncovered(
            "cell refinement exhausted at the outermost variable".into(),
        )),
    }
}

fn level(
    ctx: &Ctx,
    specs: &[SpecFn<'_>],
    leaf: LeafFn<'_>,
    idx: usize,
    assigned: &mut Vec<TP>,
    budget: &mut Budget,
) -> Result<Option<CVal>, OracleError> {
    if idx == specs.len() {
        budget.tick()?;
        return match leaf(assigned)? {
            Step::Val(v) => Ok(Some(v)),
            Step::Split => Ok(None),
        };
    }
    let spec = match specs[idx](assigned) {
        Some(s) => s,
        None => return Ok(Some(complex::zero())),
    };
    debug_assert!(spec.start_m >= spec.ball_exp);
    let digits = spec.start_m - spec.ball_exp;
    if digits > 24 {
        return Err(OracleError::Refused {
            visited: budget.used,
            limit: budget.limit,
        });
    }
    let count = ctx.p.pow(digits as u32);
    let mut total = complex::zero();
    for t in 0..count {
        let rep = offset(ctx, spec.center, t, spec.ball_exp);
        match cell(ctx, specs, leaf, idx, assigned, budget, rep, spec.start_m, spec.max_m)? {
            Some(v) => total += v,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Evaluate one cell rep + p^m·O, subdividing on request.
#[allow(clippy::too_many_arguments)]
fn cell(
    ctx: &Ctx,
    specs: &[SpecFn<'_>],
    leaf: LeafFn<'_>,
    idx: usize,
    assigned: &mut Vec<TP>,
    budget: &mut Budget,
    rep: PAdic,
    m: i64,
    max_m: i64,
) -> Result<Option<CVal>, OracleError> {
    assigned.push(TP::cell(rep, m));
    let inner = level(ctx, specs, leaf, idx + 1, assigned, budget)?;
    assigned.pop();
    match inner {
        Some(v) => Ok(Some(v * ctx.qf(-m))),
        None => {
            if m >= max_m {
                // escalate: ask the parent variable to refine
                return Ok(None);
            }
            let mut total = complex::zero();
            for t in 0..ctx.p {
                let sub = offset(ctx, rep, t, m);
                match cell(ctx, specs, leaf, idx, assigned, budget, sub, m + 1, max_m)? {
                    Some(v) => total += v,
                    None => return Ok(None),
                }
            }
            Ok(Some(total))
        }
    }
}

fn offset(ctx: &Ctx, base: PAdic, t: u64, exp: i64) -> PAdic {
    if t == 0 {
        return base;
    }
    ctx.add_or_zero(base, ctx.shift(ctx.int(t as i64), exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_sum_measures_a_ball() {
        // ∫_{|x| ≤ q²} 1 dx = q²
        let ctx = Ctx::new(7, 10).unwrap();
        let spec = |_: &[TP]| Some(VarSpec::range(-2, 0, 4));
        let leaf = |_: &[TP]| Ok(Step::Val(complex::one()));
        let mut b = Budget::new(10_000);
        let v = cell_sum(&ctx, &[&spec], &leaf, &mut b).unwrap();
        assert!((v - complex::re(49.0)).norm() < 1e-12);
    }

    #[test]
    fn cell_sum_psi_over_shell() {
        // ∫_{|x| ≤ 1} ψ(x/p) dx  requires splitting to decide ψ
        let ctx = Ctx::new(7, 10).unwrap();
        let spec = |_: &[TP]| Some(VarSpec::range(0, 0, 4));
        let pi_inv = ctx.elem(-1, 1);
        let cref = &ctx;
        let leaf = move |vars: &[TP]| {
            let x = vars[0].mul_const(cref, pi_inv);
            match x.psi(cref) {
                Some(z) => Ok(Step::Val(z)),
                None => Ok(Step::Split),
            }
        };
        let mut b = Budget::new(10_000);
        let v = cell_sum(&ctx, &[&spec], &leaf, &mut b).unwrap();
        // ∫_O ψ(x/7) dx = 0
        assert!(v.norm() < 1e-12);
        assert!(b.used >= 7);
    }

    #[test]
    fn budget_refusal() {
        let ctx = Ctx::new(7, 10).unwrap();
        let spec = |_: &[TP]| Some(VarSpec::range(-4, 2, 4));
        let leaf = |_: &[TP]| Ok(Step::Val(complex::one()));
        let mut b = Budget::new(10);
        let r = cell_sum(&ctx, &[&spec], &leaf, &mut b);
        assert!(matches!(r, Err(OracleError::Refused { .. })));
    }
}
