//! p-adic Smith normal form for 3×3 matrices: the elementary divisors
//! (λ₁ ≤ λ₂ ≤ λ₃) with g ∈ K t_λ K, read off minor valuations:
//! λ₁ = min val(entries), λ₁+λ₂ = min val(2×2 minors), |λ| = val(det).

use crate::padic::{Ctx, PAdic, PadicError};

pub type Mat3 = [[PAdic; 3]; 3];

/// Valuation information of a sum that may have cancelled beyond precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ValBound {
    Exact(i64),
    /// True valuation is ≥ this; the computation cancelled past its digits.
    AtLeast(i64),
}

fn sum_val(ctx: &Ctx, terms: &[PAdic]) -> ValBound {
    let mut acc = PAdic::ZERO;
    let mut floor = i64::MAX;
    for &t in terms {
        match ctx.try_add(acc, t) {
            Ok(s) => acc = s,
            Err(PadicError::PrecisionLoss(k)) => {
                let base = acc.val.min(t.val);
                floor = floor.min(base + k as i64);
                acc = PAdic::ZERO;
            }
            Err(e) => panic!("unexpected p-adic error: {e}"),
        }
    }
    if acc.is_zero() {
        if floor == i64::MAX {
            // genuine zero (all terms zero)
            ValBound::Exact(crate::padic::VAL_INF)
        } else {
            ValBound::AtLeast(floor)
        }
    } else if floor < acc.val {
        ValBound::AtLeast(floor)
    } else {
        ValBound::Exact(acc.val)
    }
}

/// min over a list of bounds: Exact(v) if some exact value is ≤ every lower
/// bound, otherwise undetermined.
fn min_val(bounds: &[ValBound]) -> Option<i64> {
    let mut best_exact = i64::MAX;
    let mut best_floor = i64::MAX;
    for b in bounds {
        match *b {
            ValBound::Exact(v) => best_exact = best_exact.min(v),
            ValBound::AtLeast(v) => best_floor = best_floor.min(v),
        }
    }
    if best_exact <= best_floor {
        Some(best_exact)
    } else {
        None
    }
}

/// Elementary divisors of an invertible 3×3 matrix over Q_p.
pub fn snf_cartan(ctx: &Ctx, g: &Mat3) -> Result<[i64; 3], PadicError> {
    let entry_bounds: Vec<ValBound> = g
        .iter()
        .flatten()
        .map(|e| {
            if e.is_zero() {
                ValBound::Exact(crate::padic::VAL_INF)
            } else {
                ValBound::Exact(e.val)
            }
        })
        .collect();
    let l1 = min_val(&entry_bounds).expect("entries have exact valuations");
    if l1 >= crate::padic::VAL_INF {
        return Err(PadicError::SingularMatrix);
    }

    let mut minor_bounds = Vec::with_capacity(9);
    for ri in 0..3usize {
        for ci in 0..3usize {
            let rows: Vec<usize> = (0..3).filter(|&r| r != ri).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != ci).collect();
            let a = g[rows[0]][cols[0]];
            let b = g[rows[0]][cols[1]];
            let c = g[rows[1]][cols[0]];
            let d = g[rows[1]][cols[1]];
            minor_bounds.push(sum_val(ctx, &[ctx.mul(a, d), ctx.neg(ctx.mul(b, c))]));
        }
    }
    let m2 = min_val(&minor_bounds).ok_or(PadicError::PrecisionLoss(0))?;
    if m2 >= crate::padic::VAL_INF {
        return Err(PadicError::SingularMatrix);
    }

    // det by expansion along the first row
    let mut det_terms = Vec::new();
    for c0 in 0..3usize {
        let cols: Vec<usize> = (0..3).filter(|&c| c != c0).collect();
        let minor = [
            ctx.mul(g[1][cols[0]], g[2][cols[1]]),
            ctx.neg(ctx.mul(g[1][cols[1]], g[2][cols[0]])),
        ];
        let sign_entry = if c0 % 2 == 0 {
            g[0][c0]
        } else {
            ctx.neg(g[0][c0])
        };
        det_terms.push(ctx.mul(sign_entry, minor[0]));
        det_terms.push(ctx.mul(sign_entry, minor[1]));
    }
    let det = match sum_val(ctx, &det_terms) {
        ValBound::Exact(v) if v < crate::padic::VAL_INF => v,
        ValBound::Exact(_) => return Err(PadicError::SingularMatrix),
        ValBound::AtLeast(_) => return Err(PadicError::SingularMatrix),
    };

    let lam = [l1, m2 - l1, det - m2];
    if lam[0] > lam[1] || lam[1] > lam[2] {
        return Err(PadicError::Invalid(format!(
            "inconsistent minor valuations {lam:?}"
        )));
    }
    Ok(lam)
}

pub fn mat_mul(ctx: &Ctx, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[PAdic::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = PAdic::ZERO;
            for k in 0..3 {
                acc = ctx.add_or_zero(acc, ctx.mul(a[i][k], b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn diag(ctx: &Ctx, v: [i64; 3]) -> Mat3 {
    let mut out = [[PAdic::ZERO; 3]; 3];
    for i in 0..3 {
        out[i][i] = ctx.elem(v[i], 1);
    }
    out
}

/// Upper unipotent matrix with the standard coordinates.
pub fn unipotent(x: PAdic, y: PAdic, z: PAdic, ctx: &Ctx) -> Mat3 {
    let one = ctx.one();
    [
        [one, x, z],
        [PAdic::ZERO, one, y],
        [PAdic::ZERO, PAdic::ZERO, one],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn snf_diagonal() {
        let c = Ctx::new(7, 12).unwrap();
        let id = diag(&c, [0, 0, 0]);
        assert_eq!(snf_cartan(&c, &id).unwrap(), [0, 0, 0]);
        for (m, n) in [(0i64, 0i64), (1, 0), (2, 1), (3, 2)] {
            let d = diag(&c, [-m - n, -n, 0]);
            assert_eq!(snf_cartan(&c, &d).unwrap(), [-m - n, -n, 0]);
        }
    }

    #[test]
    fn snf_gamma_case2() {
        // u t_μ^{-1} with x ∈ O, val(y) = -1, z ∈ xy + O lands in K t_λ K
        // for μ = (-λ3, -λ2+1, -λ1-1).
        let c = Ctx::new(7, 12).unwrap();
        let lam = [-3i64, -1, 0];
        let mu = [-lam[2], -lam[1] + 1, -lam[0] - 1];
        let x = c.elem(1, 4);
        let y = c.elem(-1, 3);
        let z = c.add(c.mul(x, y), c.elem(0, 5));
        let u = unipotent(x, y, z, &c);
        let tmu_inv = diag(&c, [-mu[0], -mu[1], -mu[2]]);
        let g = mat_mul(&c, &u, &tmu_inv);
        assert_eq!(snf_cartan(&c, &g).unwrap(), lam);
    }

    #[test]
    fn snf_singular_rejected() {
        let c = Ctx::new(7, 8).unwrap();
        let mut m = diag(&c, [0, 0, 0]);
        m[2] = m[0]; // repeated row
        assert!(snf_cartan(&c, &m).is_err());
    }

    fn random_k_matrix(c: &Ctx, seed: &[i64; 6]) -> Mat3 {
        // L·U with unit diagonals times a diagonal unit matrix: always in GL3(O).
        let one = c.one();
        let l = [
            [one, PAdic::ZERO, PAdic::ZERO],
            [c.int(seed[0]), one, PAdic::ZERO],
            [c.int(seed[1]), c.int(seed[2]), one],
        ];
        let u = [
            [one, c.int(seed[3]), c.int(seed[4])],
            [PAdic::ZERO, one, c.int(seed[5])],
            [PAdic::ZERO, PAdic::ZERO, one],
        ];
        mat_mul(c, &l, &u)
    }

    proptest! {
        #[test]
        fn snf_bi_k_invariant(s1 in prop::array::uniform6(-20i64..20),
                              s2 in prop::array::uniform6(-20i64..20),
                              d in prop::array::uniform3(-3i64..3),
                              x in -40i64..40, y in -40i64..40, z in -40i64..40) {
            let c = Ctx::new(7, 12).unwrap();
            let k1 = random_k_matrix(&c, &s1);
            let k2 = random_k_matrix(&c, &s2);
            let mut core = diag(&c, [d[0].min(d[1]).min(d[2]), d[1], d[0].max(d[1]).max(d[2])]);
            core[0][1] = c.int(x);
            core[0][2] = c.int(y);
            core[1][2] = c.int(z);
            let g0 = snf_cartan(&c, &core);
            let g1 = snf_cartan(&c, &mat_mul(&c, &k1, &mat_mul(&c, &core, &k2)));
            match (g0, g1) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                _ => {} // precision refusals are allowed, never wrong answers
            }
        }
    }
}
