//! The §4 sum zoo: cubic Gauss sums 𝔤_a, twisted Kloosterman sums 𝒦(t;a,b),
//! cubic exponential sums 𝒞(a,b;k) and 𝒞*(a,b;k), all as exact finite sums
//! over residue cosets chosen fine enough that the integrand is constant on
//! every coset.

use crate::complex::{self, CVal};
use crate::padic::{Ctx, PAdic, PadicError};
use rayon::prelude::*;

/// Hard cap on enumerated cells for any single closed-form sum.
const CELL_CAP: u64 = 1 << 45;

/// Cubic Gauss sum 𝔤_a = ∫_{val(x)=-1} (a,x) ψ(x) dx, as a (p-1)-term sum
/// over the cosets u/p + O.
pub fn gauss(ctx: &Ctx, a: PAdic) -> CVal {
    assert!(!a.is_zero());
    let mut s = complex::zero();
    for u in 1..ctx.p {
        let x = ctx.elem(-1, u as i64);
        s += ctx.hilbert_c(a, x) * ctx.psi(x);
    }
    s
}

/// 𝔤 := 𝔤_ϖ.
pub fn gauss_g(ctx: &Ctx) -> CVal {
    gauss(ctx, ctx.pi())
}

/// ∫_{u, 1-u ∈ O^*} (a, u(u-1)) du. Requires 3 ∤ val(a).
pub fn jacobi_integral(ctx: &Ctx, a: PAdic) -> Result<CVal, PadicError> {
    if a.is_zero() || a.val.rem_euclid(3) == 0 {
        return Err(PadicError::Invalid(
            "jacobi integral needs 3 ∤ val(a)".into(),
        ));
    }
    let mut s = complex::zero();
    for u in 2..ctx.p {
        // u ≠ 0, 1 mod p; the integrand is constant on u + pO
        let uu = ctx.elem(0, u as i64);
        let um1 = ctx.elem(0, u as i64 - 1);
        s += ctx.mu3_c(ctx.hilbert(a, ctx.mul(uu, um1)));
    }
    Ok(s / ctx.p as f64)
}

/// Number of unit-modulus terms in the jacobi integral enumeration.
pub fn jacobi_term_count(ctx: &Ctx) -> u64 {
    ctx.p - 2
}

/// 𝒦(t;a,b) = ∫_{O^*} (t,u) ψ(au + b/u) du with additive measure.
pub fn kloosterman(ctx: &Ctx, t: PAdic, a: PAdic, b: PAdic) -> Result<CVal, PadicError> {
    assert!(!t.is_zero());
    let depth = kloosterman_depth(a, b);
    if depth > ctx.n_prec {
        return Err(PadicError::InsufficientPrecision(depth));
    }
    let m = ctx.ppow[depth as usize];
    let weight = 1.0 / m as f64;
    // (t,u) for a unit u is the cubic class of u^{-val t}
    let tw = (-t.val).rem_euclid(3);
    let mut s = complex::zero();
    for u in 1..m {
        if u % ctx.p == 0 {
            continue;
        }
        let ue = PAdic {
            val: 0,
            unit: u,
            prec: ctx.n_prec,
        };
        let sym = ctx.mu3_c(ctx.cubic_class(u).pow(tw as i64));
        let phase = ctx.add(
            ctx.mul(a, ue),
            ctx.mul(b, ctx.inv(ue).unwrap()),
        );
        s += sym * ctx.try_psi(phase)?;
    }
    Ok(s * weight)
}

pub fn kloosterman_depth(a: PAdic, b: PAdic) -> u32 {
    let va = if a.is_zero() { 0 } else { (-a.val).max(0) };
    let vb = if b.is_zero() { 0 } else { (-b.val).max(0) };
    1.max(va as u32).max(vb as u32)
}

/// Enumeration size of 𝒞(a,b;k): p^e cells where e is the least exponent
/// making the phase constant on every cell.
pub fn cubic_depth(a: PAdic, b: PAdic, k: i64) -> u64 {
    let lin = if a.is_zero() { 0 } else { k - a.val };
    let cub = if b.is_zero() { 0 } else { 3 * k - b.val };
    lin.max(cub).max(0) as u64
}

/// 𝒞(a,b;k) = ∫_{|x| ≤ q^k} ψ(ax + bx³) dx as an exact q^{k-e}-weighted sum
/// of p^e unit-modulus terms.
pub fn cubic(ctx: &Ctx, a: PAdic, b: PAdic, k: i64) -> Result<CVal, PadicError> {
    cubic_with_count(ctx, a, b, k).map(|(v, _)| v)
}

pub fn cubic_with_count(ctx: &Ctx, a: PAdic, b: PAdic, k: i64) -> Result<(CVal, u64), PadicError> {
    let (s, cnt) = cubic_raw(ctx, a, b, k, false)?;
    Ok((s, cnt))
}

/// 𝒞*(a,b;k): the same integral over the shell |x| = q^k.
pub fn cubic_shell(ctx: &Ctx, a: PAdic, b: PAdic, k: i64) -> Result<CVal, PadicError> {
    cubic_shell_with_count(ctx, a, b, k).map(|(v, _)| v)
}

pub fn cubic_shell_with_count(
    ctx: &Ctx,
    a: PAdic,
    b: PAdic,
    k: i64,
) -> Result<(CVal, u64), PadicError> {
    cubic_raw(ctx, a, b, k, true)
}

type CubicKey = (u64, i64, u64, i64, u64, i64, bool);

fn cubic_cache() -> &'static std::sync::Mutex<std::collections::HashMap<CubicKey, (CVal, u64)>> {
    static CACHE: std::sync::OnceLock<
        std::sync::Mutex<std::collections::HashMap<CubicKey, (CVal, u64)>>,
    > = std::sync::OnceLock::new();
    CACHE.get_or_init(|| std::sync::Mutex::new(std::collections::HashMap::new()))
}

fn cubic_raw(
    ctx: &Ctx,
    a: PAdic,
    b: PAdic,
    k: i64,
    shell_only: bool,
) -> Result<(CVal, u64), PadicError> {
    let key: CubicKey = (
        ctx.p,
        if a.is_zero() { i64::MIN } else { a.val },
        a.unit,
        if b.is_zero() { i64::MIN } else { b.val },
        b.unit,
        k,
        shell_only,
    );
    if let Some(hit) = cubic_cache().lock().unwrap().get(&key) {
        return Ok(*hit);
    }
    let out = cubic_raw_uncached(ctx, a, b, k, shell_only)?;
    cubic_cache().lock().unwrap().insert(key, out);
    Ok(out)
}

fn cubic_raw_uncached(
    ctx: &Ctx,
    a: PAdic,
    b: PAdic,
    k: i64,
    shell_only: bool,
) -> Result<(CVal, u64), PadicError> {
    let e = cubic_depth(a, b, k);
    if e > ctx.n_prec as u64 {
        return Err(PadicError::InsufficientPrecision(e as u32));
    }
    let p = ctx.p;
    let cells = p.checked_pow(e as u32).filter(|&c| c <= CELL_CAP).ok_or(
        PadicError::Invalid(format!("cubic sum too large: p^{e} cells")),
    )?;
    let weight = q_pow(ctx, k - e as i64);
    if e == 0 {
        // integrand identically 1 on the ball
        let v = if shell_only {
            weight * (1.0 - 1.0 / p as f64)
        } else {
            weight
        };
        return Ok((complex::re(v), 1));
    }
    let m = cells;
    // x = j p^{-k}: phase frac = (α j + β j³ mod p^e)/p^e
    let alpha = coeff_mod(ctx, a, -k, e as i64, m);
    let beta = coeff_mod(ctx, b, -3 * k, e as i64, m);
    let s = twisted_cubic_kernel(p, m, alpha, beta, shell_only);
    Ok((s * weight, if shell_only { m - m / p } else { m }))
}

fn q_pow(ctx: &Ctx, e: i64) -> f64 {
    (ctx.p as f64).powi(e as i32)
}

/// c·p^{shift}·p^{e} reduced mod m = p^e, for c·p^{shift} of valuation ≥ -e.
fn coeff_mod(ctx: &Ctx, c: PAdic, shift: i64, e: i64, m: u64) -> u64 {
    if c.is_zero() {
        return 0;
    }
    let v = c.val + shift + e;
    assert!(v >= 0, "coefficient valuation too low for cell depth");
    if v as u64 >= 64 || ctx.p.checked_pow(v as u32).is_none() {
        return 0;
    }
    let pv = ctx.p.pow(v as u32) % m;
    ((c.unit as u128 * pv as u128) % m as u128) as u64
}

/// Σ_j e^{2πi (αj + βj³ mod m)/m} over j mod m (optionally only p ∤ j),
/// via cubic finite differences; the character value is assembled from
/// base-p³ digit tables small enough to stay cache-resident.
fn cubic_kernel_chunk(
    p: u64,
    m: u64,
    alpha: u64,
    beta: u64,
    lo: u64,
    hi: u64,
    units_only: bool,
    tables: &[Vec<CVal>],
    digit: u64,
) -> CVal {
    let addm = |x: u64, y: u64| {
        let s = x + y;
        if s >= m {
            s - m
        } else {
            s
        }
    };
    // f(j) = αj + βj³; d1 = f(j+1)-f(j); d2 = d1(j+1)-d1(j); d3 const.
    let j = lo as u128;
    let mm = m as u128;
    let mut f = ((alpha as u128 * j) % mm + (beta as u128 * ((j * j % mm) * j % mm)) % mm) as u64 % m;
    let b6 = (6 * beta as u128 % mm) as u64;
    let mut d1 = ((alpha as u128
        + beta as u128 * ((3 * j % mm * (j % mm) % mm + 3 * j % mm + 1) % mm))
        % mm) as u64;
    let mut d2 = ((b6 as u128 * ((j + 1) % mm)) % mm) as u64;
    let d3 = b6;
    let mut acc = complex::zero();
    for j in lo..hi {
        if !(units_only && j % p == 0) {
            let mut t = f;
            let mut v = tables[0][(t % digit) as usize];
            let mut k = 1;
            t /= digit;
            while t > 0 {
                v *= tables[k][(t % digit) as usize];
                t /= digit;
                k += 1;
            }
            acc += v;
        }
        f = addm(f, d1);
        d1 = addm(d1, d2);
        d2 = addm(d2, d3);
    }
    acc
}

fn twisted_cubic_kernel(p: u64, m: u64, alpha: u64, beta: u64, units_only: bool) -> CVal {
    // e(f/m) = Π_k e(c_k / (m / digit^k)) for the base-digit expansion of f
    let digit = p * p * p;
    let mut tables: Vec<Vec<CVal>> = Vec::new();
    let mut den = m;
    loop {
        let width = digit.min(den) as usize;
        tables.push((0..width as u64).map(|c| complex::unit_root(c, den)).collect());
        if den <= digit {
            break;
        }
        den /= digit;
    }
    const CHUNK: u64 = 1 << 16;
    if m <= CHUNK {
        cubic_kernel_chunk(p, m, alpha, beta, 0, m, units_only, &tables, digit)
    } else {
        let chunks: Vec<(u64, u64)> = (0..m)
            .step_by(CHUNK as usize)
            .map(|lo| (lo, (lo + CHUNK).min(m)))
            .collect();
        chunks
            .into_par_iter()
            .map(|(lo, hi)| {
                cubic_kernel_chunk(p, m, alpha, beta, lo, hi, units_only, &tables, digit)
            })
            .reduce(complex::zero, |a, b| a + b)
    }
}

/// ∫_O ψ(a x³) dx for |a| = q.
pub fn sum_of_cubes(ctx: &Ctx, a: PAdic) -> Result<CVal, PadicError> {
    if a.is_zero() || a.val != -1 {
        return Err(PadicError::Invalid("sum_of_cubes needs |a| = q".into()));
    }
    cubic(ctx, PAdic::ZERO, a, 0)
}

/// Which hypothesis case of the Duke–Iwaniec relation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiCase {
    UnitShell,
    DeepShell,
}

/// 𝒦(t;c,d) = (t, c d^{-1}) 𝒞(-3a, c^{-1}d^{-1}a³; 0) under
/// (1) |a|=|c|=|d|=q, 3∤val(t), or (2) |a|=|c|=|d| > q.
/// Returns (case, lhs, rhs).
pub fn duke_iwaniec_check(
    ctx: &Ctx,
    t: PAdic,
    c: PAdic,
    d: PAdic,
    a: PAdic,
) -> Result<(DiCase, CVal, CVal), PadicError> {
    if a.is_zero() || c.is_zero() || d.is_zero() {
        return Err(PadicError::Invalid("nonzero parameters required".into()));
    }
    if !(a.val == c.val && c.val == d.val) {
        return Err(PadicError::Invalid(
            "requires |a| = |c| = |d| in both cases".into(),
        ));
    }
    let case = if a.val == -1 {
        if t.val.rem_euclid(3) == 0 {
            return Err(PadicError::Invalid(
                "case (1) requires 3 ∤ val(t)".into(),
            ));
        }
        DiCase::UnitShell
    } else if a.val < -1 {
        DiCase::DeepShell
    } else {
        return Err(PadicError::Invalid(
            "requires |a| = |c| = |d| ≥ q".into(),
        ));
    };
    let lhs = kloosterman(ctx, t, c, d)?;
    let cd_inv = ctx.mul(c, ctx.inv(d)?);
    let arg1 = ctx.mul(ctx.int(-3), a);
    let a3 = ctx.mul(a, ctx.mul(a, a));
    let arg2 = ctx.mul(ctx.inv(ctx.mul(c, d))?, a3);
    let rhs = ctx.hilbert_c(t, cd_inv) * cubic(ctx, arg1, arg2, 0)?;
    Ok((case, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: CVal, b: CVal, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn gauss_three_branch_formula() {
        // 𝔤_a = (ϖ,a)𝔤, (ϖ,a)𝔤̄ or -(ϖ,a) by val(a) mod 3
        for p in [7u64, 13] {
            let ctx = Ctx::new(p, 10).unwrap();
            let g = gauss_g(&ctx);
            assert!((g * g.conj() - complex::re(p as f64)).norm() < 1e-10);
            for v in -4i64..=4 {
                for u in [1i64, 2, 3] {
                    let a = ctx.elem(v, u);
                    let ga = gauss(&ctx, a);
                    let sym = ctx.hilbert_c(ctx.pi(), a);
                    let expect = match v.rem_euclid(3) {
                        1 => sym * g,
                        2 => sym * g.conj(),
                        _ => -sym,
                    };
                    assert!(close(ga, expect, 1e-10), "p={p} v={v} u={u}");
                }
            }
        }
    }

    #[test]
    fn gauss_conjugate_identity() {
        let ctx = Ctx::new(7, 10).unwrap();
        for v in -2i64..=2 {
            for u in 1..7 {
                let a = ctx.elem(v, u);
                let lhs = gauss(&ctx, a).conj();
                let rhs = gauss(&ctx, ctx.inv(a).unwrap());
                assert!(close(lhs, rhs, 1e-10));
            }
        }
    }

    #[test]
    fn jacobi_relation() {
        // ∫ (a, u(u-1)) du = q^{-2} 𝔤_a³ for 3 ∤ val(a)
        for p in [7u64, 13] {
            let ctx = Ctx::new(p, 10).unwrap();
            let q = p as f64;
            for v in [-2i64, -1, 1, 2] {
                let a = ctx.elem(v, 2);
                let lhs = jacobi_integral(&ctx, a).unwrap();
                let ga = gauss(&ctx, a);
                let rhs = ga * ga * ga / (q * q);
                assert!(close(lhs, rhs, 1e-9), "p={p} v={v}");
            }
            assert_eq!(jacobi_term_count(&ctx), p - 2);
            assert!(jacobi_integral(&ctx, ctx.one()).is_err());
        }
    }

    #[test]
    fn kloosterman_volume_and_gauss_rows() {
        let ctx = Ctx::new(7, 10).unwrap();
        let q = 7.0f64;
        // a, b ∈ O: 1 - 1/q if 3 | val(t), else 0
        for vt in -3i64..=3 {
            let t = ctx.elem(vt, 3);
            let k = kloosterman(&ctx, t, ctx.one(), ctx.int(2)).unwrap();
            let expect = if vt.rem_euclid(3) == 0 {
                complex::re(1.0 - 1.0 / q)
            } else {
                complex::zero()
            };
            assert!(close(k, expect, 1e-10), "vt={vt}");
        }
        // |a| = q, b ∈ O: q𝒦(t;a,b) = (a,t)𝔤_t and q𝒦(t;b,a) = (t,a)𝔤̄_t
        for vt in [-2i64, -1, 0, 1, 2] {
            let t = ctx.elem(vt, 2);
            let a = ctx.elem(-1, 3);
            let b = ctx.int(5);
            let lhs1 = kloosterman(&ctx, t, a, b).unwrap() * q;
            let rhs1 = ctx.hilbert_c(a, t) * gauss(&ctx, t);
            assert!(close(lhs1, rhs1, 1e-9));
            let lhs2 = kloosterman(&ctx, t, b, a).unwrap() * q;
            let rhs2 = ctx.hilbert_c(t, a) * gauss(&ctx, t).conj();
            assert!(close(lhs2, rhs2, 1e-9));
        }
    }

    #[test]
    fn cubic_examples() {
        let ctx = Ctx::new(7, 12).unwrap();
        // |a|q^k ≤ 1 and |b|q^{3k} ≤ 1 → q^k
        let v = cubic(&ctx, ctx.elem(2, 1), ctx.elem(5, 1), 1).unwrap();
        assert!(close(v, complex::re(7.0), 1e-12));
        // |a| ≤ q^{-k}, |b| = q^{1-3k} → q^{k-1}[𝔤_b + 𝔤̄_b]
        for k in [0i64, 1, 2] {
            let a = ctx.elem(k + 1, 2);
            let b = ctx.elem(3 * k - 1, 3);
            let lhs = cubic(&ctx, a, b, k).unwrap();
            let gb = gauss(&ctx, b);
            let rhs = (gb + gb.conj()) * q_pow(&ctx, k - 1);
            assert!(close(lhs, rhs, 1e-9), "k={k}");
        }
        // max(|b|q^{3k}, 1) < |a|q^k → 0
        let v = cubic(&ctx, ctx.elem(-3, 1), ctx.elem(0, 1), 1).unwrap();
        assert!(v.norm() < 1e-9);
        // sum of cubes at p = 7
        let a = ctx.rat(1, 7);
        let lhs = sum_of_cubes(&ctx, a).unwrap();
        let ga = gauss(&ctx, a);
        assert!(close(lhs, (ga + ga.conj()) / 7.0, 1e-9));
        assert!(lhs.im.abs() < 1e-12, "sum of cubes is real");
        // direct 7-term oracle agreement
        let mut direct = complex::zero();
        for x in 0..7u64 {
            let xe = ctx.int(x as i64);
            direct += ctx.psi(ctx.mul(a, ctx.mul(xe, ctx.mul(xe, xe))));
        }
        assert!(close(lhs, direct / 7.0, 1e-12));
    }

    #[test]
    fn cubic_shell_splitting() {
        let ctx = Ctx::new(7, 12).unwrap();
        for (va, vb, k) in [(0i64, -2i64, 1i64), (-1, 0, 0), (-2, -4, 2), (1, -5, 1)] {
            let a = ctx.elem(va, 3);
            let b = ctx.elem(vb, 2);
            let c_full = cubic(&ctx, a, b, k).unwrap();
            let c_star = cubic_shell(&ctx, a, b, k).unwrap();
            let c_prev = cubic(&ctx, a, b, k - 1).unwrap();
            assert!(close(c_full, c_star + c_prev, 1e-9));
        }
    }

    #[test]
    fn duke_iwaniec_cases() {
        let ctx = Ctx::new(7, 12).unwrap();
        // case (1): |a|=|c|=|d|=q, 3 ∤ val(t)
        for ut in 1..7i64 {
            for vt in [-2i64, -1, 1, 2, 4] {
                let t = ctx.elem(vt, ut);
                let c = ctx.elem(-1, 2);
                let d = ctx.elem(-1, 3);
                let a = ctx.elem(-1, 1);
                let (case, lhs, rhs) = duke_iwaniec_check(&ctx, t, c, d, a).unwrap();
                assert_eq!(case, DiCase::UnitShell);
                assert!(close(lhs, rhs, 1e-9), "vt={vt} ut={ut}");
            }
        }
        // case (2): |a|=|c|=|d| = q²
        let (case, lhs, rhs) = duke_iwaniec_check(
            &ctx,
            ctx.elem(0, 3),
            ctx.elem(-2, 2),
            ctx.elem(-2, 5),
            ctx.elem(-2, 1),
        )
        .unwrap();
        assert_eq!(case, DiCase::DeepShell);
        assert!(close(lhs, rhs, 1e-9));
        // |a| = 1 rejected
        assert!(duke_iwaniec_check(&ctx, ctx.pi(), ctx.one(), ctx.one(), ctx.one()).is_err());
    }
}
