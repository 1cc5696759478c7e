//! Closed-form identity suites: the character-sum relations, the
//! Duke–Iwaniec relation, the symmetry relations, and the
//! assembly-vs-consolidation comparison with case-guard exclusivity audits.

use crate::config::RunConfig;
use fl_core::charsums::{
    cubic, cubic_shell, duke_iwaniec_check, gauss, gauss_g, jacobi_integral, kloosterman,
    sum_of_cubes,
};
use fl_core::complex::{self, CVal};
use fl_core::hecke::OrbitG;
use fl_core::hecke::OrbitGp;
use fl_core::iside;
use fl_core::jside;
use fl_core::report::CheckRecord;
use fl_core::{Ctx, PAdic};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn rec(
    suite: &str,
    identity: &str,
    ps: &[(&str, String)],
    lhs: CVal,
    rhs: CVal,
    tol: f64,
) -> CheckRecord {
    CheckRecord::new(suite, identity, params(ps), lhs, rhs, 0, tol)
}

/// The §4 character-sum identity suite.
pub fn charsum_suite(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let q = ctx.p as f64;
    let reps = cfg.unit_reps(ctx);
    let suite = "charsum";
    let mut out: Vec<CheckRecord> = Vec::new();
    let pstr = ctx.p.to_string();

    // 𝔤𝔤̄ = q
    let g = gauss_g(ctx);
    out.push(rec(
        suite,
        "abs-gauss",
        &[("p", pstr.clone())],
        g * g.conj(),
        complex::re(q),
        tol,
    ));

    // three-branch Gauss formula and the conjugate identity
    for va in -4i64..=4 {
        for &u in &reps {
            let a = ctx.elem(va, u);
            let ga = gauss(ctx, a);
            let sym = ctx.hilbert_c(ctx.pi(), a);
            let expect = match va.rem_euclid(3) {
                1 => sym * g,
                2 => sym * g.conj(),
                _ => -sym,
            };
            let ps = [("p", pstr.clone()), ("va", va.to_string()), ("ua", u.to_string())];
            out.push(rec(suite, "the-gauss-sum", &ps, ga, expect, tol));
            out.push(rec(
                suite,
                "conjugate-gauss",
                &ps,
                ga.conj(),
                gauss(ctx, ctx.inv(a).unwrap()),
                tol,
            ));
        }
    }

    // Jacobi relation ∫(a,u(u-1))du = q^{-2}𝔤_a³
    for va in [-4i64, -2, -1, 1, 2, 4] {
        for &u in &reps {
            let a = ctx.elem(va, u);
            let lhs = jacobi_integral(ctx, a).unwrap();
            let ga = gauss(ctx, a);
            out.push(rec(
                suite,
                "jacobi-gauss",
                &[("p", pstr.clone()), ("va", va.to_string()), ("ua", u.to_string())],
                lhs,
                ga * ga * ga / (q * q),
                tol,
            ));
        }
    }

    // sum of cubes ∫_O ψ(ax³) = q^{-1}[𝔤_a+𝔤̄_a] for |a| = q
    for &u in &reps {
        let a = ctx.elem(-1, u);
        let lhs = sum_of_cubes(ctx, a).unwrap();
        let ga = gauss(ctx, a);
        out.push(rec(
            suite,
            "sum-of-cubes",
            &[("p", pstr.clone()), ("ua", u.to_string())],
            lhs,
            (ga + ga.conj()) / q,
            tol,
        ));
    }

    // klvol
    for vt in -3i64..=3 {
        let t = ctx.elem(vt, reps[1]);
        let lhs = kloosterman(ctx, t, ctx.one(), ctx.int(2)).unwrap();
        let rhs = if vt.rem_euclid(3) == 0 {
            complex::re(1.0 - 1.0 / q)
        } else {
            complex::zero()
        };
        out.push(rec(
            suite,
            "klvol",
            &[("p", pstr.clone()), ("vt", vt.to_string())],
            lhs,
            rhs,
            tol,
        ));
    }

    // kl-as-gauss, both orderings
    for vt in -2i64..=2 {
        for &u in &reps {
            let t = ctx.elem(vt, u);
            let a = ctx.elem(-1, 3 % ctx.p as i64);
            let b = ctx.int(5 % ctx.p as i64);
            let ps = [("p", pstr.clone()), ("vt", vt.to_string()), ("ut", u.to_string())];
            let lhs1 = kloosterman(ctx, t, a, b).unwrap() * q;
            out.push(rec(
                suite,
                "kl-as-gauss",
                &ps,
                lhs1,
                ctx.hilbert_c(a, t) * gauss(ctx, t),
                tol,
            ));
            let lhs2 = kloosterman(ctx, t, b, a).unwrap() * q;
            out.push(rec(
                suite,
                "kl-as-gauss-conj",
                &ps,
                lhs2,
                ctx.hilbert_c(t, a) * gauss(ctx, t).conj(),
                tol,
            ));
        }
    }

    // klinv: 𝒦(t; av⁻¹, bv) = (t,v)𝒦(t;a,b)
    for (vt, va, vb) in [(1i64, -1i64, 0i64), (-2, -2, -1), (2, -1, -1)] {
        for &vu in &reps {
            let t = ctx.elem(vt, 2);
            let a = ctx.elem(va, 2);
            let b = ctx.elem(vb, 3 % ctx.p as i64);
            let v = ctx.elem(0, vu);
            let lhs = kloosterman(ctx, t, ctx.div(a, v), ctx.mul(b, v)).unwrap();
            let rhs = ctx.hilbert_c(t, v) * kloosterman(ctx, t, a, b).unwrap();
            out.push(rec(
                suite,
                "klinv",
                &[
                    ("p", pstr.clone()),
                    ("vt", vt.to_string()),
                    ("va", va.to_string()),
                    ("vb", vb.to_string()),
                    ("uv", vu.to_string()),
                ],
                lhs,
                rhs,
                tol,
            ));
        }
    }

    // klvan: max(|a|,|b|) ≥ q², |a| ≠ |b| → 0
    for (va, vb) in [(-2i64, 0i64), (-3, -1), (0, -2), (-2, -4), (-4, -1)] {
        let t = ctx.elem(1, 2);
        let lhs = kloosterman(ctx, t, ctx.elem(va, 2), ctx.elem(vb, 3 % ctx.p as i64)).unwrap();
        out.push(rec(
            suite,
            "klvan",
            &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string())],
            lhs,
            complex::zero(),
            tol,
        ));
    }

    // cubicvarch: 𝒞(a,b;k) = q^{-n}𝒞(a_n, b_{3n}; k+n), same for 𝒞*
    for (va, vb, k, n) in [
        (0i64, -2i64, 1i64, 1i64),
        (-1, 0, 0, -1),
        (-2, -4, 2, 2),
        (1, -3, 0, 1),
    ] {
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        let ps = [
            ("p", pstr.clone()),
            ("va", va.to_string()),
            ("vb", vb.to_string()),
            ("k", k.to_string()),
            ("n", n.to_string()),
        ];
        let lhs = cubic(ctx, a, b, k).unwrap();
        let rhs =
            cubic(ctx, ctx.shift(a, n), ctx.shift(b, 3 * n), k + n).unwrap() * ctx.qf(-n);
        out.push(rec(suite, "cubicvarch", &ps, lhs, rhs, tol));
        let lhs = cubic_shell(ctx, a, b, k).unwrap();
        let rhs =
            cubic_shell(ctx, ctx.shift(a, n), ctx.shift(b, 3 * n), k + n).unwrap() * ctx.qf(-n);
        out.push(rec(suite, "cubicvarch-shell", &ps, lhs, rhs, tol));
    }

    // unit invariance and realness of 𝒞
    for (va, vb, k) in [(0i64, -2i64, 1i64), (-1, -4, 1), (1, -2, 0)] {
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        for &u in &reps {
            let uu = ctx.elem(0, u);
            let lhs = cubic(ctx, ctx.mul(uu, a), ctx.mul(ctx.mul(uu, ctx.mul(uu, uu)), b), k)
                .unwrap();
            let rhs = cubic(ctx, a, b, k).unwrap();
            out.push(rec(
                suite,
                "cu-units",
                &[
                    ("p", pstr.clone()),
                    ("va", va.to_string()),
                    ("vb", vb.to_string()),
                    ("k", k.to_string()),
                    ("u", u.to_string()),
                ],
                lhs,
                rhs,
                tol,
            ));
        }
        let v = cubic(ctx, a, b, k).unwrap();
        out.push(rec(
            suite,
            "cu-real",
            &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string()), ("k", k.to_string())],
            complex::re(v.im),
            complex::zero(),
            tol,
        ));
    }

    // 𝒞 = 𝒞* + 𝒞(k-1)
    for (va, vb, k) in [(0i64, -2i64, 1i64), (-1, 0, 0), (-2, -4, 2), (1, -5, 1)] {
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        let lhs = cubic(ctx, a, b, k).unwrap();
        let rhs = cubic_shell(ctx, a, b, k).unwrap() + cubic(ctx, a, b, k - 1).unwrap();
        out.push(rec(
            suite,
            "c-split",
            &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string()), ("k", k.to_string())],
            lhs,
            rhs,
            tol,
        ));
    }

    // 𝒞* vanishing: max(|a|q^k, |b|q^{3k}) ≥ q² and |a| ≠ |b|q^{2k}
    for (va, vb, k) in [(-2i64, 0i64, 0i64), (0, -5, 1), (-3, -2, 1), (-1, -6, 1)] {
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        if (-va + k).max(-vb + 3 * k) >= 2 && -va != -vb + 2 * k {
            let lhs = cubic_shell(ctx, a, b, k).unwrap();
            out.push(rec(
                suite,
                "cstar-van",
                &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string()), ("k", k.to_string())],
                lhs,
                complex::zero(),
                tol,
            ));
        }
    }

    // 𝒞 vanishing: max(|b|q^{3k}, 1) < |a|q^k
    for (va, vb, k) in [(-3i64, 0i64, 1i64), (-2, 1, 0), (-4, -2, 0)] {
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        if (-vb + 3 * k).max(0) < -va + k {
            let lhs = cubic(ctx, a, b, k).unwrap();
            out.push(rec(
                suite,
                "c-van",
                &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string()), ("k", k.to_string())],
                lhs,
                complex::zero(),
                tol,
            ));
        }
    }

    // second 𝒞 vanishing: |a|q^k ≥ q², |b|q^{2k} = q|a|
    for (va, k) in [(-2i64, 0i64), (-3, 1), (-4, 0)] {
        let vb = va - 1 + 2 * k;
        let a = ctx.elem(va, 2);
        let b = ctx.elem(vb, 3 % ctx.p as i64);
        if -va + k >= 2 {
            let lhs = cubic(ctx, a, b, k).unwrap();
            out.push(rec(
                suite,
                "another-cu-van",
                &[("p", pstr.clone()), ("va", va.to_string()), ("vb", vb.to_string()), ("k", k.to_string())],
                lhs,
                complex::zero(),
                tol,
            ));
        }
    }

    // special Cu sum: |a| ≤ q^{-k}, |b| = q^{1-3k} → q^{k-1}[𝔤_b+𝔤̄_b]
    for k in -1i64..=2 {
        for &u in &reps {
            let a = ctx.elem(k + 1, 2);
            let b = ctx.elem(3 * k - 1, u);
            let lhs = cubic(ctx, a, b, k).unwrap();
            let gb = gauss(ctx, b);
            out.push(rec(
                suite,
                "special-cu-sum",
                &[("p", pstr.clone()), ("k", k.to_string()), ("ub", u.to_string())],
                lhs,
                (gb + gb.conj()) * ctx.qf(k - 1),
                tol,
            ));
        }
    }

    // the six special evaluations of 𝒞 at the table scales, m,n ≤ 3
    out.extend(special_cu_lemma(cfg, ctx));

    // Duke–Iwaniec, both hypothesis cases
    out.extend(duke_iwaniec_suite(cfg, ctx));

    out
}

fn special_cu_lemma(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let suite = "charsum";
    let reps = cfg.unit_reps(ctx);
    let mut out = Vec::new();
    let pstr = ctx.p.to_string();
    for m in 0i64..=3 {
        for n in 0i64..=3 {
            for &ua in &reps {
                for &ub in &reps[..2] {
                    // part 1: |a_{2m+n}| = 1
                    let a = ctx.elem(-(2 * m + n), ua);
                    let gpair = |aa: PAdic, bb: PAdic| {
                        let t = gauss(
                            ctx,
                            ctx.mul(ctx.int(2), ctx.inv(ctx.mul(aa, bb)).unwrap()),
                        );
                        t + t.conj()
                    };
                    let cc = |aa: PAdic, bb: PAdic, k: i64| {
                        let ai = ctx.inv(aa).unwrap();
                        let bi = ctx.inv(bb).unwrap();
                        cubic(ctx, bi, ctx.mul(ctx.int(2), ctx.mul(ai, bi)), k).unwrap()
                    };
                    let ps = |row: &str| {
                        params(&[
                            ("p", pstr.clone()),
                            ("m", m.to_string()),
                            ("n", n.to_string()),
                            ("ua", ua.to_string()),
                            ("ub", ub.to_string()),
                            ("row", row.to_string()),
                        ])
                    };
                    let b1 = ctx.elem(-(m + 2 * n), ub);
                    out.push(CheckRecord::new(
                        suite,
                        "special-cu-lemma",
                        ps("1a"),
                        cc(a, b1, m + n),
                        complex::re(ctx.qf(m + n)),
                        0,
                        tol,
                    ));
                    if n >= 1 {
                        let b = ctx.elem(1 - m - 2 * n, ub);
                        out.push(CheckRecord::new(
                            suite,
                            "special-cu-lemma",
                            ps("1b"),
                            cc(a, b, m + n),
                            gpair(a, b) * ctx.qf(m + n - 1),
                            0,
                            tol,
                        ));
                        let b = ctx.elem(2 - m - 2 * n, ub);
                        out.push(CheckRecord::new(
                            suite,
                            "special-cu-lemma",
                            ps("1c"),
                            cc(a, b, m + n),
                            complex::re(ctx.qf(m + n - 1)),
                            0,
                            tol,
                        ));
                    }
                    // part 2: |a_{2m+n}| = q^{-1}
                    let a = ctx.elem(1 - 2 * m - n, ua);
                    for (row, shift, needs) in
                        [("2a", 1i64, 0i64), ("2a'", 2, 1), ("2b", 3, 2)]
                    {
                        if n >= needs {
                            let b = ctx.elem(shift - m - 2 * n, ub);
                            let rhs = if row == "2b" {
                                gpair(a, b) * ctx.qf(m + n - 2)
                            } else {
                                complex::re(ctx.qf(m + n - 1))
                            };
                            out.push(CheckRecord::new(
                                suite,
                                "special-cu-lemma",
                                ps(row),
                                cc(a, b, m + n - 1),
                                rhs,
                                0,
                                tol,
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

fn duke_iwaniec_suite(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let reps = cfg.unit_reps(ctx);
    let mut out = Vec::new();
    let pstr = ctx.p.to_string();
    // case (1): |a|=|c|=|d|=q over all val(t) classes and unit representatives
    for vt in [-2i64, -1, 1, 2, 4, 5] {
        for ut in 1..ctx.p as i64 {
            for &uc in &reps[..2] {
                let t = ctx.elem(vt, ut);
                let c = ctx.elem(-1, uc);
                let d = ctx.elem(-1, 3 % ctx.p as i64);
                let a = ctx.elem(-1, 1);
                let (_, lhs, rhs) = duke_iwaniec_check(ctx, t, c, d, a).unwrap();
                out.push(rec(
                    "duke-iwaniec",
                    "di-unit-shell",
                    &[
                        ("p", pstr.clone()),
                        ("vt", vt.to_string()),
                        ("ut", ut.to_string()),
                        ("uc", uc.to_string()),
                    ],
                    lhs,
                    rhs,
                    tol,
                ));
            }
        }
    }
    // case (2): |a|=|c|=|d| > q
    for depth in [-2i64, -3] {
        for vt in -2i64..=2 {
            for &ua in &reps {
                let t = ctx.elem(vt, 3 % ctx.p as i64);
                let c = ctx.elem(depth, 2);
                let d = ctx.elem(depth, 5 % ctx.p as i64);
                let a = ctx.elem(depth, ua);
                let (_, lhs, rhs) = duke_iwaniec_check(ctx, t, c, d, a).unwrap();
                out.push(rec(
                    "duke-iwaniec",
                    "di-deep-shell",
                    &[
                        ("p", pstr.clone()),
                        ("depth", depth.to_string()),
                        ("vt", vt.to_string()),
                        ("ua", ua.to_string()),
                    ],
                    lhs,
                    rhs,
                    tol,
                ));
            }
        }
    }
    out
}

/// Symmetry relations at the closed-form level.
pub fn symmetry_suite(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let reps = cfg.unit_reps(ctx);
    let suite = "symmetry";
    let pstr = ctx.p.to_string();
    let mut out = Vec::new();

    // feq at the I(a,b;i,j) level
    for (i, j) in [(0i64, 0i64), (1, 0), (1, 1), (2, 1), (0, 2)] {
        for va in -3i64..=3 {
            for vb in -3i64..=3 {
                let a = ctx.elem(va, 2);
                let b = ctx.elem(vb, 3 % ctx.p as i64);
                let lhs = iside::i_ij_closed(ctx, a, b, i, j);
                let rhs = iside::i_ij_closed(ctx, ctx.neg(b), ctx.neg(a), j, i);
                out.push(rec(
                    suite,
                    "feq",
                    &[
                        ("p", pstr.clone()),
                        ("i", i.to_string()),
                        ("j", j.to_string()),
                        ("va", va.to_string()),
                        ("vb", vb.to_string()),
                    ],
                    lhs,
                    rhs,
                    tol,
                ));
            }
        }
    }

    let grid: Vec<(i64, i64, i64, i64, i64, i64)> = (0..=cfg.max_mn)
        .flat_map(|m| (0..=(cfg.max_mn - m)).map(move |n| (m, n)))
        .flat_map(|(m, n)| {
            let mut pts = Vec::new();
            for va in -5i64..=3 {
                for vb in -5i64..=3 {
                    pts.push((m, n, va, vb, 2i64, 3i64));
                }
            }
            pts
        })
        .collect();

    // I_{m,n}(a,b) = I_{n,m}(-b,-a) and conj J_{n,m}(b,a) = J_{m,n}(a,b)
    let sym_recs: Vec<CheckRecord> = grid
        .par_iter()
        .flat_map(|&(m, n, va, vb, ua, ub)| {
            if m == 0 && n == 0 {
                return Vec::new();
            }
            let a = ctx.elem(va, ua);
            let b = ctx.elem(vb, ub % ctx.p as i64);
            let ps = [
                ("p", pstr.clone()),
                ("m", m.to_string()),
                ("n", n.to_string()),
                ("va", va.to_string()),
                ("vb", vb.to_string()),
            ];
            let mut v = Vec::new();
            v.push(rec(
                suite,
                "i-mn-symmetry",
                &ps,
                iside::i_generic_closed(ctx, m, n, a, b),
                iside::i_generic_closed(ctx, n, m, ctx.neg(b), ctx.neg(a)),
                tol,
            ));
            v.push(rec(
                suite,
                "j-mn-involution",
                &ps,
                jside::j_generic_closed(ctx, m, n, a, b),
                jside::j_generic_closed(ctx, n, m, b, a).conj(),
                tol,
            ));
            // ρ-invariance of both generic closed forms; on the cover the
            // invariant object is the Hilbert-weighted value (b,a)J_{m,n}(a,b)
            // (the bare section picks up a central μ₃ cocycle factor)
            let ra = ctx.mul(ctx.rho_pow(1), a);
            let rb = ctx.mul(ctx.rho_pow(2), b);
            v.push(rec(
                suite,
                "rho-invariance-i",
                &ps,
                iside::i_generic_closed(ctx, m, n, ra, rb),
                iside::i_generic_closed(ctx, m, n, a, b),
                tol,
            ));
            let weighted = |x: fl_core::PAdic, y: fl_core::PAdic| {
                ctx.mu3_c(ctx.hilbert(y, x)) * jside::j_generic_closed(ctx, m, n, x, y)
            };
            v.push(rec(
                suite,
                "rho-invariance-j",
                &ps,
                weighted(ra, rb),
                weighted(a, b),
                tol,
            ));
            v
        })
        .collect();
    out.extend(sym_recs);

    // one-parameter relations: the ξ₂/γ₂ chains evaluated at grid points
    for (m, n) in [(0i64, 1i64), (1, 0), (1, 1), (2, 1)] {
        for va in -3i64..=3 {
            for &u in &reps[..2] {
                let a = ctx.elem(va, u);
                let ps = [
                    ("p", pstr.clone()),
                    ("m", m.to_string()),
                    ("n", n.to_string()),
                    ("va", va.to_string()),
                    ("ua", u.to_string()),
                ];
                out.push(rec(
                    suite,
                    "degenerate-i-symmetry",
                    &ps,
                    iside::i_family2(ctx, m, n, a),
                    iside::i_family1(ctx, n, m, ctx.mul(ctx.neg(ctx.rho_pow(1)), a))
                        .conj(),
                    tol,
                ));
                out.push(rec(
                    suite,
                    "relate-one-param-gp",
                    &ps,
                    jside::j_family2(ctx, m, n, a),
                    jside::j_family1(ctx, n, m, ctx.inv(a).unwrap()).conj(),
                    tol,
                ));
                // invariance of the one-parameter metaplectic integral under a ↦ ρa
                out.push(rec(
                    suite,
                    "rho-invariance-j1",
                    &ps,
                    jside::j_family1(ctx, m, n, ctx.mul(ctx.rho_pow(1), a)),
                    jside::j_family1(ctx, m, n, a),
                    tol,
                ));
            }
        }
    }
    out
}

/// Assembly ≡ consolidation plus the case-guard exclusivity audits.
pub fn assembly_suite(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let suite = "assembly";
    let pstr = ctx.p.to_string();
    // per-(m,n) windows around the nonzero region: α, β range over
    // [-6, 2], which reaches every row of both tables plus zero margins
    // on each side without wandering into gigantic far-zone sums
    let grid: Vec<(i64, i64, i64, i64)> = (0..=cfg.max_mn)
        .flat_map(|m| (0..=(cfg.max_mn - m)).map(move |n| (m, n)))
        .filter(|&(m, n)| m + n >= 1)
        .flat_map(|(m, n)| {
            let ca = -(n + 2 * m);
            let cb = -(m + 2 * n);
            let mut pts = Vec::new();
            for va in (ca - 2)..=(ca + 6) {
                for vb in (cb - 2)..=(cb + 6) {
                    pts.push((m, n, va, vb));
                }
            }
            pts
        })
        .collect();
    let mut out: Vec<CheckRecord> = grid
        .par_iter()
        .flat_map(|&(m, n, va, vb)| {
            let a = ctx.elem(va, 2);
            let b = ctx.elem(vb, 3 % ctx.p as i64);
            let ps = [
                ("p", pstr.clone()),
                ("m", m.to_string()),
                ("n", n.to_string()),
                ("va", va.to_string()),
                ("vb", vb.to_string()),
            ];
            let mut v = Vec::new();
            v.push(rec(
                suite,
                "assemble-i-vs-table",
                &ps,
                iside::assemble_i(ctx, m, n, OrbitG::Generic(a, b)),
                iside::i_generic_closed(ctx, m, n, a, b),
                tol,
            ));
            // the J assembly needs |b_j| ≤ q|a_i| on each cell, which is
            // implied by the consolidated hypothesis
            if vb + m + 2 * n >= va + n + 2 * m {
                if let Ok(asm) = jside::assemble_j(ctx, m, n, OrbitGp::Generic(a, b)) {
                    v.push(rec(
                        suite,
                        "assemble-j-vs-table",
                        &ps,
                        asm,
                        jside::j_generic_closed(ctx, m, n, a, b),
                        tol,
                    ));
                }
            }
            v
        })
        .collect();

    // guard exclusivity: at most one row fires anywhere on the scan window
    let mut i_overlaps = 0u64;
    let mut j_overlaps = 0u64;
    let mut jl_overlaps = 0u64;
    for m in 0..=cfg.max_mn {
        for n in 0..=(cfg.max_mn - m) {
            for alpha in -8i64..=4 {
                for beta in -8i64..=alpha {
                    if iside::i_mn_matching_rows(m, n, alpha, beta).len() > 1 {
                        i_overlaps += 1;
                    }
                    if jside::j_mn_matching_rows(m, n, alpha, beta).len() > 1 {
                        j_overlaps += 1;
                    }
                }
            }
        }
    }
    for i in 0..=6i64 {
        for j in 0..=6i64 {
            for alpha in -8i64..=4 {
                for beta in -8i64..=(alpha + 1) {
                    if jside::jl_matching_rows(i, j, alpha, beta).len() > 1 {
                        jl_overlaps += 1;
                    }
                }
            }
        }
    }
    for (name, count) in [
        ("i-mn-guards-exclusive", i_overlaps),
        ("j-mn-guards-exclusive", j_overlaps),
        ("jl-guards-exclusive", jl_overlaps),
    ] {
        out.push(rec(
            suite,
            name,
            &[("p", pstr.clone())],
            complex::re(count as f64),
            complex::zero(),
            0.0,
        ));
    }
    out
}
