//! Suite runners behind the fl-lab command line, exposed as a library so the
//! acceptance tests drive the same code paths.

pub mod config;
pub mod output;
pub mod suites {
    pub mod fl;
    pub mod oracle;
    pub mod props;
}

use config::RunConfig;
use fl_core::report::CheckRecord;
use fl_core::Ctx;

/// All closed-form identity suites.
pub fn run_props(cfg: &RunConfig) -> Result<Vec<CheckRecord>, fl_core::PadicError> {
    let mut out = Vec::new();
    for &ident in &cfg.idents {
        let ctx = cfg.ctx(ident)?;
        out.extend(suites::props::charsum_suite(cfg, &ctx));
        out.extend(suites::props::symmetry_suite(cfg, &ctx));
        out.extend(suites::props::assembly_suite(cfg, &ctx));
    }
    output::sort_records(&mut out);
    Ok(out)
}

/// All oracle-vs-closed-form sweeps.
pub fn run_oracle(cfg: &RunConfig) -> Result<Vec<CheckRecord>, fl_core::PadicError> {
    let mut out = Vec::new();
    for &ident in &cfg.idents {
        let ctx = cfg.ctx(ident)?;
        out.extend(suites::oracle::whittaker_oracle_suite(cfg, &ctx));
        out.extend(suites::oracle::orbit_oracle_suite(cfg, &ctx));
        out.extend(suites::oracle::small_orbit_oracle_suite(cfg, &ctx));
        out.extend(suites::oracle::fl_oracle_suite(cfg, &ctx));
    }
    output::sort_records(&mut out);
    Ok(out)
}

/// The Fundamental Lemma suite.
pub fn run_fl(cfg: &RunConfig) -> Result<Vec<CheckRecord>, fl_core::PadicError> {
    let mut out = Vec::new();
    for &ident in &cfg.idents {
        let ctx = cfg.ctx(ident)?;
        out.extend(suites::fl::fl_suite(cfg, &ctx));
    }
    output::sort_records(&mut out);
    Ok(out)
}

/// Ad-hoc single-value evaluation for exploration.
pub struct SumRequest {
    pub kind: String,
    pub val_a: i64,
    pub unit_a: i64,
    pub val_b: i64,
    pub unit_b: i64,
    pub val_t: i64,
    pub unit_t: i64,
    pub k: i64,
    pub i: i64,
    pub j: i64,
    pub m: i64,
    pub n: i64,
}

pub fn run_sum(cfg: &RunConfig, req: &SumRequest) -> Result<(f64, f64, u64), String> {
    let ctx: Ctx = cfg.ctx(cfg.idents[0]).map_err(|e| e.to_string())?;
    let a = ctx.elem(req.val_a, req.unit_a);
    let b = ctx.elem(req.val_b, req.unit_b);
    let t = ctx.elem(req.val_t, req.unit_t);
    let (v, terms) = match req.kind.as_str() {
        "gauss" => (fl_core::charsums::gauss(&ctx, a), ctx.p - 1),
        "jacobi" => (
            fl_core::charsums::jacobi_integral(&ctx, a).map_err(|e| e.to_string())?,
            fl_core::charsums::jacobi_term_count(&ctx),
        ),
        "kloosterman" => {
            let depth = fl_core::charsums::kloosterman_depth(a, b);
            let v = fl_core::charsums::kloosterman(&ctx, t, a, b).map_err(|e| e.to_string())?;
            (v, ctx.ppow[depth as usize] - ctx.ppow[depth as usize] / ctx.p)
        }
        "cubic" => {
            let (v, n) =
                fl_core::charsums::cubic_with_count(&ctx, a, b, req.k).map_err(|e| e.to_string())?;
            (v, n)
        }
        "cubic-shell" => {
            let (v, n) = fl_core::charsums::cubic_shell_with_count(&ctx, a, b, req.k)
                .map_err(|e| e.to_string())?;
            (v, n)
        }
        "sum-cubes" => (
            fl_core::charsums::sum_of_cubes(&ctx, a).map_err(|e| e.to_string())?,
            ctx.p,
        ),
        "hilbert" => (ctx.hilbert_c(a, b), 1),
        "psi" => (ctx.try_psi(a).map_err(|e| e.to_string())?, 1),
        "i-ij" => (fl_core::iside::i_ij_closed(&ctx, a, b, req.i, req.j), 0),
        "r-ij" => (fl_core::iside::r_closed(&ctx, a, b, req.i, req.j), 0),
        "jl-ij" => (
            fl_core::jside::jl_closed(&ctx, a, b, req.i, req.j).map_err(|e| e.to_string())?,
            0,
        ),
        "i-mn" => (
            fl_core::iside::i_generic_closed(&ctx, req.m, req.n, a, b),
            0,
        ),
        "j-mn" => (
            fl_core::jside::j_generic_closed(&ctx, req.m, req.n, a, b),
            0,
        ),
        "i-one-param" => (fl_core::iside::i_one_param(&ctx, a, req.i, req.j), 0),
        other => return Err(format!("unknown sum kind `{other}`")),
    };
    Ok((v.re, v.im, terms))
}
