//! Report serialization: canonical JSON, CSV, and Markdown summaries.

use fl_core::report::CheckRecord;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

pub fn render(records: &[CheckRecord], format: Format) -> String {
    match format {
        Format::Json => render_json(records),
        Format::Csv => render_csv(records),
        Format::Md => render_md(records),
    }
}

fn render_json(records: &[CheckRecord]) -> String {
    let mut s = String::from("[");
    for (k, r) in records.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push('\n');
        s.push_str(&serde_json::to_string(r).expect("record serialization"));
    }
    s.push_str("\n]\n");
    s
}

fn esc_csv(v: &str) -> String {
    if v.contains(',') || v.contains('"') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn render_csv(records: &[CheckRecord]) -> String {
    let mut s =
        String::from("suite,identity,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,terms,pass,elapsed_ms\n");
    for r in records {
        let ps = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let pass = match r.pass {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "skip",
        };
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            esc_csv(&r.suite),
            esc_csv(&r.identity),
            esc_csv(&ps),
            r.lhs_re,
            r.lhs_im,
            r.rhs_re,
            r.rhs_im,
            r.abs_err,
            r.terms,
            pass,
            r.elapsed_ms
        ));
    }
    s
}

fn render_md(records: &[CheckRecord]) -> String {
    let mut groups: BTreeMap<(String, String), (u64, u64, u64, f64)> = BTreeMap::new();
    for r in records {
        let e = groups
            .entry((r.suite.clone(), r.identity.clone()))
            .or_insert((0, 0, 0, 0.0));
        match r.pass {
            Some(true) => e.0 += 1,
            Some(false) => e.1 += 1,
            None => e.2 += 1,
        }
        if r.abs_err > e.3 {
            e.3 = r.abs_err;
        }
    }
    let mut s = String::from("| suite | identity | pass | fail | skip | max abs err |\n");
    s.push_str("|---|---|---|---|---|---|\n");
    for ((suite, identity), (p, f, k, err)) in groups {
        s.push_str(&format!(
            "| {suite} | {identity} | {p} | {f} | {k} | {err:.3e} |\n"
        ));
    }
    s
}

/// Exit code per the contract: 0 all pass, 1 any fail, 3 refusals with
/// --strict (config errors exit 2 before reaching here).
pub fn exit_code(records: &[CheckRecord], strict: bool) -> i32 {
    if records.iter().any(|r| r.pass == Some(false)) {
        1
    } else if strict && records.iter().any(|r| r.pass.is_none()) {
        3
    } else {
        0
    }
}

/// Deterministic report order.
pub fn sort_records(records: &mut [CheckRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}
