//! Orbit matching, transfer factors, and the local comparison
//! O(ξ, ω(f_{m,n})φ∘) ?= factor · q^{-2(m+n)} O'(γ, f'_{m,n}).

use crate::complex::CVal;
use crate::hecke::{sh_scale, OrbitG, OrbitGp};
use crate::iside;
use crate::jside;
use crate::padic::{Ctx, PAdic};

/// Matched orbit pair with its transfer factor.
#[derive(Debug, Clone, Copy)]
pub struct MatchedPair {
    pub left: OrbitG,
    pub right: OrbitGp,
    pub factor: CVal,
}

/// Part (1): ξ(a,b) ↔ γ(c,d) with c = -54a, d = 54b and factor (d,c).
pub fn match_generic(ctx: &Ctx, a: PAdic, b: PAdic) -> MatchedPair {
    let c = ctx.mul(ctx.int(-54), a);
    let d = ctx.mul(ctx.int(54), b);
    MatchedPair {
        left: OrbitG::Generic(a, b),
        right: OrbitGp::Generic(c, d),
        factor: ctx.mu3_c(ctx.hilbert(d, c)),
    }
}

/// c₁ = 3(ρ²-ρ)a⁻¹.
pub fn c1_param(ctx: &Ctx, a: PAdic) -> PAdic {
    let diff = ctx.sub(ctx.rho_pow(2), ctx.rho_pow(1));
    ctx.mul(ctx.int(3), ctx.mul(diff, ctx.inv(a).expect("nonzero")))
}

/// c₂ = [3(1-ρ)]⁻¹ a.
pub fn c2_param(ctx: &Ctx, a: PAdic) -> PAdic {
    let den = ctx.mul(ctx.int(3), ctx.sub(ctx.one(), ctx.rho_pow(1)));
    ctx.mul(ctx.inv(den).expect("unit"), a)
}

/// t₁(c) = |c|² ψ(3ρc⁻¹).
pub fn t1_factor(ctx: &Ctx, c: PAdic) -> CVal {
    let arg = ctx.mul(ctx.int(3), ctx.mul(ctx.rho_pow(1), ctx.inv(c).expect("nonzero")));
    ctx.psi(arg) * ctx.qf(-2 * c.val)
}

/// t₂(c) = |c|⁻² ψ(-3ρc).
pub fn t2_factor(ctx: &Ctx, c: PAdic) -> CVal {
    let arg = ctx.mul(ctx.int(-3), ctx.mul(ctx.rho_pow(1), c));
    ctx.psi(arg) * ctx.qf(2 * c.val)
}

/// Part (2): ξ_i(a) ↔ γ_i(c_i) with factor t_i(c_i).
pub fn match_family(ctx: &Ctx, which: u8, a: PAdic) -> MatchedPair {
    match which {
        1 => {
            let c = c1_param(ctx, a);
            MatchedPair {
                left: OrbitG::Family1(a),
                right: OrbitGp::Family1(c),
                factor: t1_factor(ctx, c),
            }
        }
        2 => {
            let c = c2_param(ctx, a);
            MatchedPair {
                left: OrbitG::Family2(a),
                right: OrbitGp::Family2(c),
                factor: t2_factor(ctx, c),
            }
        }
        _ => panic!("family index must be 1 or 2"),
    }
}

/// Part (3): ξ[ℓ] ↔ γ[ℓ] with factor 1.
pub fn match_isolated(ell: u8) -> MatchedPair {
    MatchedPair {
        left: OrbitG::Isolated(ell),
        right: OrbitGp::Isolated(ell),
        factor: crate::complex::one(),
    }
}

/// Both sides of the comparison for a matched pair at basis index (m,n):
/// lhs = O(ξ, ω(f_{m,n})φ∘), rhs = factor · q^{-2(m+n)} · O'(γ, f'_{m,n}).
pub fn fl_check(ctx: &Ctx, pair: &MatchedPair, m: i64, n: i64) -> (CVal, CVal) {
    let lhs = match pair.left {
        OrbitG::Generic(a, b) => iside::i_generic_closed(ctx, m, n, a, b),
        OrbitG::Family1(a) => iside::i_family1(ctx, m, n, a),
        OrbitG::Family2(a) => iside::i_family2(ctx, m, n, a),
        OrbitG::Isolated(_) => iside::i_isolated(m, n),
    };
    let right = match pair.right {
        OrbitGp::Generic(c, d) => jside::j_generic_closed(ctx, m, n, c, d),
        OrbitGp::Family1(c) => jside::j_family1(ctx, m, n, c),
        OrbitGp::Family2(c) => jside::j_family2(ctx, m, n, c),
        OrbitGp::Isolated(_) => jside::j_isolated(ctx, m, n),
    };
    let rhs = pair.factor * right * sh_scale(ctx, m, n);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex;

    #[test]
    fn factor_moduli() {
        let ctx = Ctx::new(7, 12).unwrap();
        for va in -4i64..=4 {
            let c = ctx.elem(va, 3);
            assert!((t1_factor(&ctx, c).norm() - ctx.qf(-2 * va)).abs() < 1e-9);
            assert!((t2_factor(&ctx, c).norm() - ctx.qf(2 * va)).abs() < 1e-9);
        }
    }

    #[test]
    fn isolated_part_matches() {
        let ctx = Ctx::new(7, 12).unwrap();
        for ell in 1..=3u8 {
            for (m, n) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1), (2, 0)] {
                let (lhs, rhs) = fl_check(&ctx, &match_isolated(ell), m, n);
                assert!((lhs - rhs).norm() < 1e-12, "ell={ell} m={m} n={n}");
            }
        }
    }

    #[test]
    fn family1_part_two_sample() {
        // part (2), i = 1, full chain at a sample grid point
        let ctx = Ctx::new(7, 12).unwrap();
        for va in -3i64..=3 {
            for (m, n) in [(0i64, 1i64), (1, 0), (0, 2)] {
                let a = ctx.elem(va, 2);
                let (lhs, rhs) = fl_check(&ctx, &match_family(&ctx, 1, a), m, n);
                assert!(
                    (lhs - rhs).norm() < 1e-9,
                    "va={va} m={m} n={n}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn generic_part_one_row1() {
        let ctx = Ctx::new(7, 12).unwrap();
        for (m, n) in [(1i64, 0i64), (0, 1), (1, 1)] {
            let a = ctx.elem(-(n + 2 * m), 1);
            let b = ctx.elem(-(m + 2 * n), 1);
            let (lhs, rhs) = fl_check(&ctx, &match_generic(&ctx, a, b), m, n);
            assert!((lhs - rhs).norm() < 1e-9, "m={m} n={n}: {lhs} vs {rhs}");
        }
        let _ = complex::one();
    }
}
