//! p-adic values with an attached error radius: a `TP` stands for the set
//! c + p^err·O. Arithmetic propagates the radius ultrametrically, so any
//! predicate decided from a `TP` is provably constant on the whole cell.

use crate::complex::CVal;
use crate::padic::{Ctx, Mu3, PAdic, VAL_INF};

/// Error exponent for exactly-known values.
pub const ERR_EXACT: i64 = VAL_INF / 2;

#[derive(Debug, Clone, Copy)]
pub struct TP {
    pub c: PAdic,
    /// perturbation lives in p^err·O
    pub err: i64,
}

impl TP {
    pub fn exact(c: PAdic) -> TP {
        TP { c, err: ERR_EXACT }
    }

    pub fn cell(c: PAdic, err: i64) -> TP {
        TP { c, err }
    }

    /// Lower bound for the valuation of every element of the cell.
    pub fn val_floor(&self) -> i64 {
        self.c.val.min(self.err)
    }

    /// Exact valuation if it is cell-constant.
    pub fn val_exact(&self) -> Option<i64> {
        if !self.c.is_zero() && self.err > self.c.val {
            Some(self.c.val)
        } else if self.c.is_zero() && self.err >= ERR_EXACT {
            Some(VAL_INF)
        } else {
            None
        }
    }

    /// val(x) ≥ k for the whole cell / for none / undecided.
    pub fn val_ge(&self, k: i64) -> Option<bool> {
        if self.val_floor() >= k {
            Some(true)
        } else if let Some(v) = self.val_exact() {
            Some(v >= k)
        } else {
            None
        }
    }

    pub fn val_eq(&self, k: i64) -> Option<bool> {
        match self.val_exact() {
            Some(v) => Some(v == k),
            None => {
                if self.val_floor() > k {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    pub fn in_o(&self) -> Option<bool> {
        self.val_ge(0)
    }

    /// The leading unit is cell-constant (valuation and unit class mod p).
    pub fn class_decided(&self) -> bool {
        !self.c.is_zero() && self.err > self.c.val
    }

    pub fn add(&self, ctx: &Ctx, other: &TP) -> TP {
        TP {
            c: ctx.add_or_zero(self.c, other.c),
            err: self.err.min(other.err),
        }
    }

    pub fn neg(&self, ctx: &Ctx) -> TP {
        TP {
            c: ctx.neg(self.c),
            err: self.err,
        }
    }

    pub fn sub(&self, ctx: &Ctx, other: &TP) -> TP {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn mul(&self, ctx: &Ctx, other: &TP) -> TP {
        let va = if self.c.is_zero() { ERR_EXACT } else { self.c.val };
        let vb = if other.c.is_zero() { ERR_EXACT } else { other.c.val };
        let err = (va.saturating_add(other.err))
            .min(vb.saturating_add(self.err))
            .min(self.err.saturating_add(other.err))
            .min(ERR_EXACT);
        TP {
            c: ctx.mul(self.c, other.c),
            err,
        }
    }

    pub fn mul_const(&self, ctx: &Ctx, k: PAdic) -> TP {
        if k.is_zero() {
            return TP::exact(PAdic::ZERO);
        }
        TP {
            c: ctx.mul(self.c, k),
            err: self.err.saturating_add(k.val).min(ERR_EXACT),
        }
    }

    /// ϖ^s · x.
    pub fn shift(&self, ctx: &Ctx, s: i64) -> TP {
        TP {
            c: ctx.shift(self.c, s),
            err: self.err.saturating_add(s).min(ERR_EXACT),
        }
    }

    /// Multiplicative inverse; requires a cell-constant valuation.
    pub fn inv(&self, ctx: &Ctx) -> Option<TP> {
        let v = self.val_exact()?;
        if v >= VAL_INF {
            return None;
        }
        Some(TP {
            c: ctx.inv(self.c).ok()?,
            err: self.err.saturating_sub(2 * v).min(ERR_EXACT),
        })
    }

    /// ψ(x) if it is cell-constant (err ≥ 0, i.e. perturbations in O).
    pub fn psi(&self, ctx: &Ctx) -> Option<CVal> {
        if self.err >= 0 {
            ctx.try_psi(self.c).ok()
        } else {
            None
        }
    }
}

/// Hilbert symbol of two tracked values, when both classes are decided.
pub fn hilbert_tp(ctx: &Ctx, x: &TP, y: &TP) -> Option<Mu3> {
    if x.class_decided() && y.class_decided() {
        Some(ctx.hilbert(x.c, y.c))
    } else {
        None
    }
}

/// Elementary divisors of a 3×3 tracked matrix with known determinant
/// valuation; None when a minimum is not yet cell-decided.
pub fn snf_tp(ctx: &Ctx, g: &[[TP; 3]; 3], det_val: i64) -> Option<[i64; 3]> {
    let m1 = min_tracked(g.iter().flatten())?;
    let mut minors = Vec::with_capacity(9);
    for ri in 0..3usize {
        for ci in 0..3usize {
            let rows: Vec<usize> = (0..3).filter(|&r| r != ri).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != ci).collect();
            let ad = g[rows[0]][cols[0]].mul(ctx, &g[rows[1]][cols[1]]);
            let bc = g[rows[0]][cols[1]].mul(ctx, &g[rows[1]][cols[0]]);
            minors.push(ad.sub(ctx, &bc));
        }
    }
    let m2 = min_tracked(minors.iter())?;
    if m1 > m2 - m1 || m2 - m1 > det_val - m2 {
        return None;
    }
    Some([m1, m2 - m1, det_val - m2])
}

fn min_tracked<'a, I: Iterator<Item = &'a TP>>(items: I) -> Option<i64> {
    let mut best_exact = VAL_INF;
    let mut best_floor = VAL_INF;
    for t in items {
        match t.val_exact() {
            Some(v) => best_exact = best_exact.min(v),
            None => best_floor = best_floor.min(t.val_floor()),
        }
    }
    if best_exact <= best_floor {
        Some(best_exact)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracked_decisions() {
        let ctx = Ctx::new(7, 10).unwrap();
        // cell 3 + p²O: val exact 0, class decided
        let t = TP::cell(ctx.elem(0, 3), 2);
        assert_eq!(t.val_exact(), Some(0));
        assert!(t.class_decided());
        assert_eq!(t.in_o(), Some(true));
        // zero-centered cell p²O: val ≥ 2 only
        let z = TP::cell(PAdic::ZERO, 2);
        assert_eq!(z.val_exact(), None);
        assert_eq!(z.val_ge(1), Some(true));
        assert_eq!(z.val_eq(0), Some(false));
        assert_eq!(z.in_o(), Some(true));
        // cell p^{-1}·u + p^0 O is out of O for sure
        let t = TP::cell(ctx.elem(-1, 2), 0);
        assert_eq!(t.in_o(), Some(false));
        // product error propagation
        let a = TP::cell(ctx.elem(-2, 1), 1); // |a| = q², err q^{-1}
        let b = TP::cell(ctx.elem(-1, 3), 2);
        let ab = a.mul(&ctx, &b);
        assert_eq!(ab.c.val, -3);
        // err = min(-2+2, -1+1, 1+2) = 0
        assert_eq!(ab.err, 0);
        assert!(ab.class_decided());
    }
}
