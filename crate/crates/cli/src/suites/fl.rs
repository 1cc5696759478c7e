//! The Fundamental Lemma comparison over the closed-form grid, for each
//! μ₃-identification.

use crate::config::RunConfig;
use fl_core::report::CheckRecord;
use fl_core::transfer;
use fl_core::{Ctx, Mu3Ident};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn ident_name(i: Mu3Ident) -> &'static str {
    match i {
        Mu3Ident::Rho => "rho",
        Mu3Ident::Rho2 => "rho2",
    }
}

pub fn fl_suite(cfg: &RunConfig, ctx: &Ctx) -> Vec<CheckRecord> {
    let tol = cfg.closed_tol();
    let pstr = ctx.p.to_string();
    let ident = ident_name(ctx.ident);
    let units = cfg.unit_reps(ctx);
    let mn_pairs: Vec<(i64, i64)> = (0..=cfg.max_mn)
        .flat_map(|m| (0..=(cfg.max_mn - m)).map(move |n| (m, n)))
        .collect();

    let mut out = Vec::new();

    // part (1): generic orbits
    let mut jobs: Vec<(i64, i64, i64, i64, i64, i64)> = Vec::new();
    for &(m, n) in &mn_pairs {
        for va in cfg.val_lo..=cfg.val_hi {
            for vb in cfg.val_lo..=cfg.val_hi {
                for &ua in &units[..2] {
                    for &ub in &units[..2] {
                        jobs.push((m, n, va, vb, ua, ub));
                    }
                }
            }
        }
    }
    out.par_extend(jobs.par_iter().map(|&(m, n, va, vb, ua, ub)| {
        let a = ctx.elem(va, ua);
        let b = ctx.elem(vb, ub);
        let pair = transfer::match_generic(ctx, a, b);
        let (lhs, rhs) = transfer::fl_check(ctx, &pair, m, n);
        CheckRecord::new(
            "fl",
            "part1-generic",
            params(&[
                ("p", pstr.clone()),
                ("ident", ident.to_string()),
                ("m", m.to_string()),
                ("n", n.to_string()),
                ("va", va.to_string()),
                ("vb", vb.to_string()),
                ("ua", ua.to_string()),
                ("ub", ub.to_string()),
            ]),
            lhs,
            rhs,
            0,
            tol,
        )
    }));

    // part (2): the two one-parameter families
    let mut jobs2: Vec<(u8, i64, i64, i64, i64)> = Vec::new();
    for which in [1u8, 2] {
        for &(m, n) in &mn_pairs {
            for va in cfg.val_lo..=cfg.val_hi {
                for &ua in &units {
                    jobs2.push((which, m, n, va, ua));
                }
            }
        }
    }
    out.par_extend(jobs2.par_iter().map(|&(which, m, n, va, ua)| {
        let a = ctx.elem(va, ua);
        let pair = transfer::match_family(ctx, which, a);
        let (lhs, rhs) = transfer::fl_check(ctx, &pair, m, n);
        CheckRecord::new(
            "fl",
            if which == 1 { "part2-family1" } else { "part2-family2" },
            params(&[
                ("p", pstr.clone()),
                ("ident", ident.to_string()),
                ("m", m.to_string()),
                ("n", n.to_string()),
                ("va", va.to_string()),
                ("ua", ua.to_string()),
            ]),
            lhs,
            rhs,
            0,
            tol,
        )
    }));

    // part (3): isolated orbits
    for ell in 1..=3u8 {
        for &(m, n) in &mn_pairs {
            let pair = transfer::match_isolated(ell);
            let (lhs, rhs) = transfer::fl_check(ctx, &pair, m, n);
            out.push(CheckRecord::new(
                "fl",
                "part3-isolated",
                params(&[
                    ("p", pstr.clone()),
                    ("ident", ident.to_string()),
                    ("ell", ell.to_string()),
                    ("m", m.to_string()),
                    ("n", n.to_string()),
                ]),
                lhs,
                rhs,
                0,
                tol,
            ));
        }
    }
    out
}
