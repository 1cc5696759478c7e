//! Branch-coverage counters for the closed-form case tables, so sweeps can
//! audit that every row of every table was exercised at least once.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::sync::OnceLock;

fn registry() -> &'static Mutex<BTreeMap<(&'static str, u32), u64>> {
    static REG: OnceLock<Mutex<BTreeMap<(&'static str, u32), u64>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(BTreeMap::new()))
}

pub fn hit(table: &'static str, row: u32) {
    let mut m = registry().lock().unwrap();
    *m.entry((table, row)).or_insert(0) += 1;
}

pub fn snapshot() -> BTreeMap<(&'static str, u32), u64> {
    registry().lock().unwrap().clone()
}

pub fn reset() {
    registry().lock().unwrap().clear();
}

/// Every (table, row) a full sweep is expected to reach. Rows are 1-based and
/// follow each table's listing order; row 0 is the table's zero/default case.
pub fn expected_rows() -> Vec<(&'static str, u32)> {
    let mut v = Vec::new();
    let tables: &[(&str, u32, bool)] = &[
        // (name, number of listed rows, include row 0)
        ("psi_g", 7, true),
        ("psi_gp", 6, true),
        ("script_i", 4, true),
        ("script_r", 3, true),
        ("i_mn", 24, true),
        ("jl", 17, true),
        ("j_mn", 25, true),
        ("i_one_param", 7, true),
        ("jl_one_param", 4, true),
        ("j_one_param", 7, true),
    ];
    for &(name, rows, with_zero) in tables {
        if with_zero {
            v.push((name, 0));
        }
        for r in 1..=rows {
            v.push((name, r));
        }
    }
    v
}

/// Rows from `expected_rows` that have not been hit.
pub fn missing() -> Vec<(&'static str, u32)> {
    let snap = snapshot();
    expected_rows()
        .into_iter()
        .filter(|k| !snap.contains_key(k))
        .collect()
}
