use clap::{Parser, Subcommand, ValueEnum};
use fl_core::Mu3Ident;
use fl_lab::config::RunConfig;
use fl_lab::output::{self, Format};
use fl_lab::{run_fl, run_oracle, run_props, run_sum, SumRequest};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fl-lab")]
#[command(about = "Verification workbench for the cubic-cover orbital-integral identities")]
#[command(version)]
struct Cli {
    /// Prime p ≡ 1 mod 6, p ≥ 7
    #[arg(long, global = true, default_value_t = 7)]
    p: u64,

    /// Working precision N (residues live in Z/p^N)
    #[arg(long, global = true, default_value_t = 12)]
    precision: u32,

    /// Override the per-suite base tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Enumeration budget per oracle point (cells)
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,

    /// Cap on m+n for the Hecke-index grids
    #[arg(long, global = true, default_value_t = 4)]
    max_mn: i64,

    /// Valuation range lo:hi for grid parameters
    #[arg(long, global = true, default_value = "-6:6")]
    val_range: String,

    /// μ₃(F) ≅ μ₃(C) identification (default: both)
    #[arg(long, global = true, value_enum)]
    ident: Option<IdentArg>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Worker threads (0 = all cores; FL_LAB_THREADS is the fallback)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Exit 3 when any oracle refused on budget
    #[arg(long, global = true)]
    strict: bool,

    /// Report output path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Fail when a closed-form branch was never exercised by the run
    #[arg(long, global = true)]
    coverage: bool,

    /// Record wall-clock times in the report (off keeps reports byte-stable)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentArg {
    Rho,
    Rho2,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Commands {
    /// Closed-form identity suites (character sums, symmetries, assembly)
    Props,
    /// Oracle-vs-closed-form sweeps
    Oracle,
    /// The Fundamental Lemma comparison over the closed-form grid
    Fl,
    /// Evaluate a single sum or closed form
    Sum {
        /// gauss|jacobi|kloosterman|cubic|cubic-shell|sum-cubes|hilbert|psi|
        /// i-ij|r-ij|jl-ij|i-mn|j-mn|i-one-param
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        val_a: i64,
        #[arg(long, default_value_t = 1)]
        unit_a: i64,
        #[arg(long, default_value_t = 0)]
        val_b: i64,
        #[arg(long, default_value_t = 1)]
        unit_b: i64,
        #[arg(long, default_value_t = 0)]
        val_t: i64,
        #[arg(long, default_value_t = 1)]
        unit_t: i64,
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        i: i64,
        #[arg(long, default_value_t = 0)]
        j: i64,
        #[arg(long, default_value_t = 0)]
        m: i64,
        #[arg(long, default_value_t = 0)]
        n: i64,
    },
}

fn parse_val_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("--val-range expects lo:hi, got `{s}`"))?;
    let lo: i64 = lo.parse().map_err(|_| format!("bad lo in `{s}`"))?;
    let hi: i64 = hi.parse().map_err(|_| format!("bad hi in `{s}`"))?;
    if lo > hi {
        return Err(format!("empty valuation range `{s}`"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let (val_lo, val_hi) = match parse_val_range(&cli.val_range) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    let idents = match cli.ident {
        Some(IdentArg::Rho) => vec![Mu3Ident::Rho],
        Some(IdentArg::Rho2) => vec![Mu3Ident::Rho2],
        None => vec![Mu3Ident::Rho, Mu3Ident::Rho2],
    };
    let threads = if cli.threads > 0 {
        cli.threads
    } else {
        std::env::var("FL_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    };
    let cfg = RunConfig {
        p: cli.p,
        precision: cli.precision,
        tol: cli.tol,
        budget: cli.budget,
        max_mn: cli.max_mn,
        val_lo,
        val_hi,
        idents,
        threads,
        strict: cli.strict,
    };
    // validate the field before any heavy work
    if let Err(e) = cfg.ctx(cfg.idents[0]) {
        eprintln!("config error: {e}");
        return ExitCode::from(2);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");

    if !matches!(cli.command, Commands::Sum { .. }) {
        fl_core::coverage::reset();
    }

    let started = std::time::Instant::now();
    let result = pool.install(|| match &cli.command {
        Commands::Props => run_props(&cfg).map(Some),
        Commands::Oracle => run_oracle(&cfg).map(Some),
        Commands::Fl => run_fl(&cfg).map(Some),
        Commands::Sum {
            kind,
            val_a,
            unit_a,
            val_b,
            unit_b,
            val_t,
            unit_t,
            k,
            i,
            j,
            m,
            n,
        } => {
            let req = SumRequest {
                kind: kind.clone(),
                val_a: *val_a,
                unit_a: *unit_a,
                val_b: *val_b,
                unit_b: *unit_b,
                val_t: *val_t,
                unit_t: *unit_t,
                k: *k,
                i: *i,
                j: *j,
                m: *m,
                n: *n,
            };
            match run_sum(&cfg, &req) {
                Ok((re, im, terms)) => {
                    println!(
                        "{{\"im\":{im},\"kind\":\"{}\",\"re\":{re},\"terms\":{terms}}}",
                        req.kind
                    );
                    Ok(None)
                }
                Err(e) => {
                    eprintln!("config error: {e}");
                    std::process::exit(2);
                }
            }
        }
    });

    let mut records = match result {
        Ok(Some(r)) => r,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.timing {
        let total = started.elapsed().as_millis() as u64;
        for r in &mut records {
            r.elapsed_ms = total;
        }
    }
    if cli.coverage {
        records.extend(fl_lab::suites::oracle::coverage_records());
        output::sort_records(&mut records);
    }

    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Md => Format::Md,
    };
    let rendered = output::render(&records, format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("config error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    let pass = records.iter().filter(|r| r.pass == Some(true)).count();
    let fail = records.iter().filter(|r| r.pass == Some(false)).count();
    let skip = records.iter().filter(|r| r.pass.is_none()).count();
    eprintln!("checks: {pass} passed, {fail} failed, {skip} skipped");
    ExitCode::from(output::exit_code(&records, cfg.strict) as u8)
}
