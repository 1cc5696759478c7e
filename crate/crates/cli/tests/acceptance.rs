//! Acceptance suite: one test per criterion, each printing a single
//! CRITERION line. Run with `cargo test -p fl-lab --test acceptance`
//! (add `-- --nocapture` to see the lines as they complete).

use fl_core::report::CheckRecord;
use fl_core::{iside, jside, Ctx, Mu3Ident};
use fl_lab::config::RunConfig;
use fl_lab::suites::{fl, oracle, props};
use std::collections::BTreeSet;

fn cfg(p: u64) -> RunConfig {
    RunConfig {
        p,
        ..RunConfig::default()
    }
}

struct Verdict {
    pass: usize,
    fail: usize,
    skip: usize,
    worst: f64,
}

fn tally(records: &[CheckRecord]) -> Verdict {
    let mut v = Verdict {
        pass: 0,
        fail: 0,
        skip: 0,
        worst: 0.0,
    };
    for r in records {
        match r.pass {
            Some(true) => v.pass += 1,
            Some(false) => {
                v.fail += 1;
                eprintln!(
                    "  FAIL {} {} {:?}: lhs={}+{}i rhs={}+{}i err={:.3e}",
                    r.suite, r.identity, r.params, r.lhs_re, r.lhs_im, r.rhs_re, r.rhs_im, r.abs_err
                );
            }
            None => v.skip += 1,
        }
        if r.abs_err > v.worst {
            v.worst = r.abs_err;
        }
    }
    v
}

fn report(k: u32, label: &str, v: &Verdict, extra: &str) {
    let verdict = if v.fail == 0 { "PASS" } else { "FAIL" };
    println!(
        "CRITERION {k} [{label}]: {verdict} ({} passed, {} failed, {} skipped, worst err {:.3e}{})",
        v.pass, v.fail, v.skip, v.worst, extra
    );
    assert_eq!(v.fail, 0, "criterion {k} failed");
}

#[test]
fn criterion_01_charsum_identities() {
    let mut records = Vec::new();
    for p in [7u64, 13] {
        let c = cfg(p);
        let ctx = c.ctx(Mu3Ident::Rho).unwrap();
        records.extend(props::charsum_suite(&c, &ctx));
    }
    let v = tally(&records);
    assert!(v.pass > 1000, "suite unexpectedly small");
    report(1, "section-4 identity suite, p in {7,13}", &v, "");
}

#[test]
fn criterion_02_duke_iwaniec() {
    let c = cfg(7);
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records: Vec<CheckRecord> = props::charsum_suite(&c, &ctx)
        .into_iter()
        .filter(|r| r.suite == "duke-iwaniec")
        .collect();
    let v = tally(&records);
    assert!(v.pass >= 100, "expected full val(t)-class × unit coverage");
    report(2, "Duke-Iwaniec relation, both cases", &v, "");
}

#[test]
fn criterion_03_psi_g_oracle() {
    let mut c = cfg(7);
    c.max_mn = 3;
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records: Vec<CheckRecord> = oracle::whittaker_oracle_suite(&c, &ctx)
        .into_iter()
        .filter(|r| r.identity == "psi-g")
        .collect();
    // exact integer agreement after rounding
    let mut off_table = 0;
    for r in &records {
        if r.pass == Some(true) {
            assert!(
                (r.lhs_re - r.lhs_re.round()).abs() < 1e-6 && r.lhs_im.abs() < 1e-6,
                "oracle value not integral: {}+{}i",
                r.lhs_re,
                r.lhs_im
            );
            assert_eq!(r.lhs_re.round(), r.rhs_re.round());
            if r.rhs_re == 0.0 && r.rhs_im == 0.0 {
                off_table += 1;
            }
        }
    }
    assert!(off_table >= 20, "need ≥ 20 off-table zeros, got {off_table}");
    let v = tally(&records);
    assert_eq!(v.skip, 0, "psi-g oracle should not refuse on this window");
    report(3, "Whittaker coefficients on PGL3 vs oracle", &v, "");
}

#[test]
fn criterion_04_psi_gp_oracle() {
    let mut c = cfg(7);
    c.max_mn = 3;
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records: Vec<CheckRecord> = oracle::whittaker_oracle_suite(&c, &ctx)
        .into_iter()
        .filter(|r| r.identity == "psi-gp" || r.identity == "gamma-cells")
        .collect();
    // the six nonzero cases must all be seen
    let nonzero = records
        .iter()
        .filter(|r| {
            r.identity == "psi-gp"
                && r.pass == Some(true)
                && (r.rhs_re.abs() + r.rhs_im.abs() > 1e-9)
        })
        .count();
    assert!(nonzero >= 6 * 4, "nonzero-case coverage too small: {nonzero}");
    // skips are exactly the uncovered deep-corner family
    for r in &records {
        if r.pass.is_none() {
            assert!(
                r.params.contains_key("uncovered"),
                "unexpected skip: {:?}",
                r.params
            );
        }
    }
    let v = tally(&records);
    report(
        4,
        "metaplectic Whittaker coefficients vs oracle",
        &v,
        &format!(", {} uncovered deep-corner cells", v.skip),
    );
}

#[test]
fn criterion_05_i_ij_oracle() {
    let mut c = cfg(7);
    c.val_lo = -4;
    c.val_hi = 4;
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records: Vec<CheckRecord> = oracle::orbit_oracle_suite(&c, &ctx)
        .into_iter()
        .filter(|r| r.identity == "i-ij")
        .collect();
    // every branch of the case formula must be hit by a checked point
    let mut branches = BTreeSet::new();
    for r in &records {
        if r.pass == Some(true) {
            let g = |k: &str| r.params[k].parse::<i64>().unwrap();
            branches.insert(iside::i_ij_branch(g("va"), g("vb"), g("i"), g("j")));
        }
    }
    for b in 0..=4u32 {
        assert!(branches.contains(&b), "branch {b} never hit");
    }
    let checked = records.iter().filter(|r| r.pass.is_some()).count();
    assert!(checked * 2 >= records.len(), "too many refusals");
    let v = tally(&records);
    report(
        5,
        "generic I(a,b;i,j) vs oracle",
        &v,
        ", all case-formula branches hit",
    );
}

#[test]
fn criterion_06_j_ij_oracle() {
    let mut c = cfg(7);
    c.val_lo = -4;
    c.val_hi = 4;
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records: Vec<CheckRecord> = oracle::orbit_oracle_suite(&c, &ctx)
        .into_iter()
        .filter(|r| r.identity == "jl-ij")
        .collect();
    let mut rows = BTreeSet::new();
    for r in &records {
        if r.pass == Some(true) {
            let g = |k: &str| r.params[k].parse::<i64>().unwrap();
            let (i, j, va, vb) = (g("i"), g("j"), g("va"), g("vb"));
            let alpha = -(va + i);
            let beta = -(vb + j);
            if beta >= alpha - 1 {
                let m = jside::jl_matching_rows(i, j, alpha, beta);
                rows.insert(m.first().copied().unwrap_or(0));
            }
        }
    }
    let missing: Vec<u32> = (0..=17u32).filter(|r| !rows.contains(r)).collect();
    assert!(
        missing.is_empty(),
        "J^l rows never hit by a checked point: {missing:?}"
    );
    let v = tally(&records);
    report(6, "metaplectic J^l(a,b;i,j) vs oracle", &v, ", all 17 rows hit");
}

#[test]
fn criterion_07_small_orbits_and_recursion() {
    let c = cfg(7);
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let mut records = oracle::small_orbit_oracle_suite(&c, &ctx);
    // closed-side recursion R(a;i,j) = I(a;0,2i+j) over i,j ≤ 4, val ∈ [-6,4]
    for i in 0..=4i64 {
        for j in 0..=4i64 {
            for va in -6i64..=4 {
                for u in [1i64, 3] {
                    let a = ctx.elem(va, u);
                    let lhs = iside::r_one_param(&ctx, a, i, j);
                    let rhs = iside::i_one_param(&ctx, a, 0, 2 * i + j);
                    records.push(CheckRecord::new(
                        "recursion",
                        "one-param-recursion",
                        [
                            ("i".to_string(), i.to_string()),
                            ("j".to_string(), j.to_string()),
                            ("va".to_string(), va.to_string()),
                        ]
                        .into(),
                        lhs,
                        rhs,
                        0,
                        1e-9,
                    ));
                }
            }
        }
    }
    let v = tally(&records);
    report(
        7,
        "one-parameter and isolated orbits vs oracles; recursion",
        &v,
        "",
    );
}

#[test]
fn criterion_08_assembly_vs_consolidation() {
    let mut records = Vec::new();
    let mut i_rows = BTreeSet::new();
    let mut j_rows = BTreeSet::new();
    for p in [7u64] {
        let c = cfg(p);
        let ctx = c.ctx(Mu3Ident::Rho).unwrap();
        let recs = props::assembly_suite(&c, &ctx);
        for r in &recs {
            if r.pass != Some(true) || !r.params.contains_key("m") {
                continue;
            }
            let g = |k: &str| r.params[k].parse::<i64>().unwrap();
            let (m, n, va, vb) = (g("m"), g("n"), g("va"), g("vb"));
            // row reached after the symmetry routing
            let (m2, n2, x, y) = if vb + m + 2 * n >= va + n + 2 * m {
                (m, n, va, vb)
            } else {
                (n, m, vb, va)
            };
            let alpha = -(x + n2 + 2 * m2);
            let beta = -(y + m2 + 2 * n2);
            if beta <= alpha {
                if r.identity == "assemble-i-vs-table" {
                    i_rows.insert(
                        iside::i_mn_matching_rows(m2, n2, alpha, beta)
                            .first()
                            .copied()
                            .unwrap_or(0),
                    );
                } else {
                    j_rows.insert(
                        jside::j_mn_matching_rows(m2, n2, alpha, beta)
                            .first()
                            .copied()
                            .unwrap_or(0),
                    );
                }
            }
        }
        records.extend(recs);
    }
    let miss_i: Vec<u32> = (0..=23u32).filter(|r| !i_rows.contains(r)).collect();
    let miss_j: Vec<u32> = (0..=24u32).filter(|r| !j_rows.contains(r)).collect();
    assert!(miss_i.is_empty(), "I table rows not covered: {miss_i:?}");
    assert!(miss_j.is_empty(), "J table rows not covered: {miss_j:?}");
    let v = tally(&records);
    report(
        8,
        "expansion assembly reproduces the consolidated tables",
        &v,
        ", every row of both tables covered",
    );
}

#[test]
fn criterion_09_fundamental_lemma() {
    // closed-form grid at p ∈ {7, 13}, both identifications
    let mut records = Vec::new();
    for p in [7u64, 13] {
        let mut c = cfg(p);
        c.idents = vec![Mu3Ident::Rho, Mu3Ident::Rho2];
        for &ident in &c.idents.clone() {
            let ctx = c.ctx(ident).unwrap();
            records.extend(fl::fl_suite(&c, &ctx));
        }
    }
    let v = tally(&records);
    assert!(v.pass > 50_000, "grid unexpectedly small: {}", v.pass);

    // part (1) against oracle values on the tiny grid at p = 7
    let mut c7 = cfg(7);
    c7.tol = Some(1e-5);
    let ctx = c7.ctx(Mu3Ident::Rho).unwrap();
    let oracle_recs = oracle::fl_oracle_suite(&c7, &ctx);
    let checked = oracle_recs.iter().filter(|r| r.pass.is_some()).count();
    assert!(
        checked * 2 >= oracle_recs.len(),
        "too many oracle refusals on the tiny grid"
    );
    let vo = tally(&oracle_recs);
    report(
        9,
        "Fundamental Lemma parts 1-3",
        &v,
        &format!(
            "; oracle cross-check: {} passed, {} failed, {} skipped",
            vo.pass, vo.fail, vo.skip
        ),
    );
    assert_eq!(vo.fail, 0, "oracle cross-check failed");
}

#[test]
fn criterion_10_symmetry_suite() {
    let c = cfg(7);
    let ctx = c.ctx(Mu3Ident::Rho).unwrap();
    let records = props::symmetry_suite(&c, &ctx);
    let v = tally(&records);
    report(10, "symmetry suite", &v, "");
}
