//! Hecke-basis indexing, torus-coset indices, orbit parameters and the
//! Whittaker coefficient tables Ψ_{m,n} and Ψ'_{m,n} of the Iwasawa
//! expansions.

use crate::charsums::gauss_g;
use crate::complex::{self, CVal};
use crate::coverage;
use crate::padic::{Ctx, PAdic, PadicError};

/// Index of the Hecke basis f_{m,n} / f'_{m,n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeckeIndex {
    pub m: i64,
    pub n: i64,
}

impl HeckeIndex {
    pub fn new(m: i64, n: i64) -> HeckeIndex {
        assert!(m >= 0 && n >= 0);
        HeckeIndex { m, n }
    }
}

/// μ ∈ Ω = Z³/Z, stored normalized with μ₁ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GLWeight {
    norm: [i64; 3],
}

impl GLWeight {
    pub fn new(mu: [i64; 3]) -> GLWeight {
        GLWeight {
            norm: [0, mu[1] - mu[0], mu[2] - mu[0]],
        }
    }

    pub fn rep(&self) -> [i64; 3] {
        self.norm
    }

    /// μ ∈ Λ: weakly increasing coordinates.
    pub fn in_lambda(&self) -> bool {
        self.norm[1] >= 0 && self.norm[2] >= self.norm[1]
    }

    /// δ_B(t_μ) = q^{2(μ₃-μ₁)}.
    pub fn delta_b_exp(&self) -> i64 {
        2 * self.norm[2]
    }
}

/// (i,j) with the Λ' = {2i ≥ j, 2j ≥ i} membership test; indexes the torus
/// cosets c_{i,j} = diag(ϖ^{-j}, ϖ^{j-i}, ϖ^i).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetaIndex {
    pub i: i64,
    pub j: i64,
}

impl MetaIndex {
    pub fn new(i: i64, j: i64) -> MetaIndex {
        MetaIndex { i, j }
    }

    pub fn in_lambda_prime(&self) -> bool {
        2 * self.i >= self.j && 2 * self.j >= self.i
    }

    /// δ_{B'}(sec(c_{i,j})) = q^{2(i+j)}.
    pub fn delta_b_exp(&self) -> i64 {
        2 * (self.i + self.j)
    }
}

/// Relevant-orbit parameters on the PGL₃ side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitG {
    /// ξ(a,b)
    Generic(PAdic, PAdic),
    /// ξ₁(a)
    Family1(PAdic),
    /// ξ₂(a)
    Family2(PAdic),
    /// ξ[ℓ], ℓ = 1,2,3
    Isolated(u8),
}

/// Relevant-orbit parameters on the metaplectic side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitGp {
    /// γ(a,b)
    Generic(PAdic, PAdic),
    /// γ₁(a)
    Family1(PAdic),
    /// γ₂(a)
    Family2(PAdic),
    /// γ[ℓ]
    Isolated(u8),
}

/// Ψ_{m,n}(μ): nonzero on exactly seven μ-patterns mod diagonal translation.
pub fn psi_coeff_g(ctx: &Ctx, m: i64, n: i64, mu: GLWeight) -> Result<CVal, PadicError> {
    if !mu.in_lambda() {
        return Err(PadicError::Invalid(format!(
            "μ = {:?} is not dominant",
            mu.rep()
        )));
    }
    let q = ctx.p as f64;
    let d = |a: i64, b: i64| if a == b { 1.0 } else { 0.0 };
    let cases: [([i64; 3], f64); 7] = [
        ([0, n, m + n], 1.0),
        ([0, n + 1, m + n - 1], -1.0),
        ([1, n - 1, m + n], -1.0),
        ([1, n, m + n - 1], 1.0 - q - d(n, 1) - d(m, 1)),
        ([1, n + 1, m + n - 2], q),
        ([2, n - 1, m + n - 1], q),
        ([2, n, m + n - 2], -q),
    ];
    for (row, (pat, val)) in cases.iter().enumerate() {
        let w = GLWeight::new(*pat);
        if w.in_lambda() && w == mu {
            coverage::hit("psi_g", row as u32 + 1);
            return Ok(complex::re(*val));
        }
    }
    coverage::hit("psi_g", 0);
    Ok(complex::zero())
}

/// Ψ'_{m,n}(i,j): nonzero on exactly six (i,j).
pub fn psi_coeff_gp(ctx: &Ctx, m: i64, n: i64, idx: MetaIndex) -> Result<CVal, PadicError> {
    if !idx.in_lambda_prime() {
        return Err(PadicError::Invalid(format!(
            "(i,j) = ({},{}) is not in Λ'",
            idx.i, idx.j
        )));
    }
    let q = ctx.p as f64;
    let gbar = gauss_g(ctx).conj();
    let q2 = complex::re(q * q);
    let cases: [((i64, i64), CVal); 6] = [
        ((2 * m + n, m + 2 * n), complex::one()),
        ((2 * m + n - 1, m + 2 * n), gbar),
        ((2 * m + n, m + 2 * n - 1), gbar),
        ((2 * m + n - 2, m + 2 * n - 1), q2),
        ((2 * m + n - 1, m + 2 * n - 2), q2),
        ((2 * m + n - 2, m + 2 * n - 2), q2 * gbar),
    ];
    for (row, ((pi, pj), val)) in cases.iter().enumerate() {
        if idx.i == *pi && idx.j == *pj {
            coverage::hit("psi_gp", row as u32 + 1);
            return Ok(*val);
        }
    }
    coverage::hit("psi_gp", 0);
    Ok(complex::zero())
}

/// The seven (coefficient, (i,j)) pairs of the expansion
/// O(x, ω(f_{m,n})φ∘) = Σ coeff · I(x;i,j), with I := 0 off i,j ≥ 0.
pub fn expansion_g(ctx: &Ctx, m: i64, n: i64) -> Vec<(CVal, i64, i64)> {
    let q = ctx.p as f64;
    let d = |a: i64, b: i64| if a == b { 1.0 } else { 0.0 };
    vec![
        (complex::one(), n, m),
        (complex::re(-1.0), n + 1, m - 2),
        (complex::re(-1.0), n - 2, m + 1),
        (complex::re(1.0 - q - d(n, 1) - d(m, 1)), n - 1, m - 1),
        (complex::re(q), n, m - 3),
        (complex::re(q), n - 3, m),
        (complex::re(-q), n - 2, m - 2),
    ]
}

/// The six (coefficient, (i,j)) pairs of the metaplectic expansion
/// O'(x, f'_{m,n}) = Σ coeff · J^l(x;i,j), with J^l := 0 off Λ'.
pub fn expansion_gp(ctx: &Ctx, m: i64, n: i64) -> Vec<(CVal, i64, i64)> {
    let q2 = complex::re((ctx.p * ctx.p) as f64);
    let gbar = gauss_g(ctx).conj();
    vec![
        (complex::one(), 2 * m + n, m + 2 * n),
        (q2 * gbar, 2 * m + n - 2, m + 2 * n - 2),
        (gbar, 2 * m + n - 1, m + 2 * n),
        (gbar, 2 * m + n, m + 2 * n - 1),
        (q2, 2 * m + n - 2, m + 2 * n - 1),
        (q2, 2 * m + n - 1, m + 2 * n - 2),
    ]
}

/// Sh(f_{m,n}) = q^{-2(m+n)} f'_{m,n}: the scalar of the Shimura map on the
/// basis.
pub fn sh_scale(ctx: &Ctx, m: i64, n: i64) -> f64 {
    (ctx.p as f64).powi(-2 * (m + n) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sh_scale_values() {
        let c = Ctx::new(7, 6).unwrap();
        assert_eq!(sh_scale(&c, 0, 0), 1.0);
        assert!((sh_scale(&c, 1, 0) - 7f64.powi(-2)).abs() < 1e-18);
        assert!((sh_scale(&c, 2, 3) - 7f64.powi(-10)).abs() < 1e-30);
    }

    #[test]
    fn psi_g_spec_rows() {
        let c = Ctx::new(7, 6).unwrap();
        let q = 7.0;
        // μ = (0, n, m+n) → 1
        for (m, n) in [(0i64, 0i64), (1, 2), (3, 1)] {
            let v = psi_coeff_g(&c, m, n, GLWeight::new([0, n, m + n])).unwrap();
            assert_eq!(v, complex::one());
        }
        // μ = (1, n, m+n-1), m = n = 1 → -1 - q
        let v = psi_coeff_g(&c, 1, 1, GLWeight::new([1, 1, 1])).unwrap();
        assert_eq!(v, complex::re(1.0 - q - 2.0));
        // off-table μ → 0
        let v = psi_coeff_g(&c, 1, 1, GLWeight::new([0, 0, 7])).unwrap();
        assert_eq!(v, complex::zero());
        // μ ∉ Λ rejected
        assert!(psi_coeff_g(&c, 1, 1, GLWeight::new([0, 2, 1])).is_err());
        // normalization: pattern matching is mod diagonal shifts
        let v = psi_coeff_g(&c, 2, 1, GLWeight::new([5, 6, 8])).unwrap();
        assert_eq!(v, complex::one());
    }

    #[test]
    fn psi_g_patterns_disjoint() {
        // at most one of the seven patterns fires for any μ in the window
        let c = Ctx::new(7, 6).unwrap();
        let q = 7.0;
        for m in 0..=4i64 {
            for n in 0..=4i64 {
                let d = |a: i64, b: i64| if a == b { 1.0 } else { 0.0 };
                let pats: [([i64; 3], f64); 7] = [
                    ([0, n, m + n], 1.0),
                    ([0, n + 1, m + n - 1], -1.0),
                    ([1, n - 1, m + n], -1.0),
                    ([1, n, m + n - 1], 1.0 - q - d(n, 1) - d(m, 1)),
                    ([1, n + 1, m + n - 2], q),
                    ([2, n - 1, m + n - 1], q),
                    ([2, n, m + n - 2], -q),
                ];
                for b in 0..=(m + n + 2) {
                    for cc in b..=(m + n + 2) {
                        let mu = GLWeight::new([0, b, cc]);
                        let matches = pats
                            .iter()
                            .filter(|(p, _)| {
                                let w = GLWeight::new(*p);
                                w.in_lambda() && w == mu
                            })
                            .count();
                        assert!(matches <= 1, "m={m} n={n} μ={:?}", mu.rep());
                    }
                }
                let _ = psi_coeff_g(&c, m, n, GLWeight::new([0, 0, m + n]));
            }
        }
    }

    #[test]
    fn psi_gp_spec_rows() {
        let c = Ctx::new(7, 8).unwrap();
        let q2 = 49.0;
        let gbar = gauss_g(&c).conj();
        for (m, n) in [(1i64, 1i64), (2, 1), (1, 3)] {
            let one = psi_coeff_gp(&c, m, n, MetaIndex::new(2 * m + n, m + 2 * n)).unwrap();
            assert_eq!(one, complex::one());
            let six =
                psi_coeff_gp(&c, m, n, MetaIndex::new(2 * m + n - 2, m + 2 * n - 2)).unwrap();
            assert!((six - gbar * q2).norm() < 1e-12);
            let zero =
                psi_coeff_gp(&c, m, n, MetaIndex::new(2 * m + n - 1, m + 2 * n - 1)).unwrap();
            assert_eq!(zero, complex::zero());
        }
        assert!(psi_coeff_gp(&c, 0, 0, MetaIndex::new(2, 0)).is_err());
    }
}
