//! Complex carrier for character-valued sums.

pub type CVal = num_complex::Complex64;

/// e^{2πi·num/den}. Built from the shared table-free path; exactness to the
/// last ulp is not required (all comparisons are tolerance-based).
pub fn unit_root(num: u64, den: u64) -> CVal {
    let t = 2.0 * std::f64::consts::PI * (num % den) as f64 / den as f64;
    CVal::new(t.cos(), t.sin())
}

pub fn zero() -> CVal {
    CVal::new(0.0, 0.0)
}

pub fn one() -> CVal {
    CVal::new(1.0, 0.0)
}

pub fn re(x: f64) -> CVal {
    CVal::new(x, 0.0)
}

/// Table of the den-th roots of unity: index k ↦ e^{2πik/den}.
pub fn root_table(den: u64) -> Vec<CVal> {
    (0..den).map(|k| unit_root(k, den)).collect()
}
