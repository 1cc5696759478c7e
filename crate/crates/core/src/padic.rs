//! Exact arithmetic in Q_p at fixed finite precision, the tame cubic Hilbert
//! symbol and the additive character of conductor O.
//!
//! Elements are stored as (valuation, unit residue mod p^prec). Zero uses an
//! infinite-valuation sentinel with unit 1, so equality is structural. All
//! operations are pure; `Ctx` is freely shareable across threads.

use crate::complex::CVal;
use thiserror::Error;

/// Sentinel valuation for the zero element.
pub const VAL_INF: i64 = i64::MAX / 4;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PadicError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} must be ≡ 1 mod 6 and ≥ 7")]
    BadResidue(u64),
    #[error("precision N = {0} out of range")]
    BadPrecision(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unit precision exhausted (cancellation beyond p^{0})")]
    PrecisionLoss(u32),
    #[error("insufficient precision: need valuation ≥ -{0}")]
    InsufficientPrecision(u32),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("{0}")]
    Invalid(String),
}

/// Choice of identification μ₃(F) ≅ μ₃(C): where the fixed p-adic ρ lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mu3Ident {
    /// ρ ↦ e^{2πi/3}
    Rho,
    /// ρ ↦ e^{-2πi/3}
    Rho2,
}

/// A cube root of unity as an exponent of the fixed ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mu3 {
    pub k: u8,
}

impl Mu3 {
    pub const ONE: Mu3 = Mu3 { k: 0 };

    pub fn new(k: i64) -> Mu3 {
        Mu3 {
            k: (k.rem_euclid(3)) as u8,
        }
    }

    pub fn mul(self, other: Mu3) -> Mu3 {
        Mu3::new(self.k as i64 + other.k as i64)
    }

    pub fn conj(self) -> Mu3 {
        Mu3::new(-(self.k as i64))
    }

    pub fn inv(self) -> Mu3 {
        self.conj()
    }

    pub fn pow(self, e: i64) -> Mu3 {
        Mu3::new(self.k as i64 * e.rem_euclid(3))
    }

    pub fn is_one(self) -> bool {
        self.k == 0
    }
}

/// Field element: x = unit · p^val, with unit known mod p^prec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAdic {
    pub val: i64,
    pub unit: u64,
    pub prec: u32,
}

impl PAdic {
    pub const ZERO: PAdic = PAdic {
        val: VAL_INF,
        unit: 1,
        prec: u32::MAX,
    };

    pub fn is_zero(&self) -> bool {
        self.val >= VAL_INF
    }

    /// |x| = q^{-val}; callers must handle zero separately where it matters.
    pub fn abs_exp(&self) -> i64 {
        -self.val
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, m: u64) -> u64 {
    // m is a prime power p^k with gcd(a, p) = 1
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "invmod of non-unit");
    (t.rem_euclid(m as i128)) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The ambient field Q_p with p ≡ 1 mod 6: uniformizer p, precision N,
/// a fixed primitive cube root of unity ρ, and the μ₃(F) ≅ μ₃(C) choice.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub p: u64,
    pub n_prec: u32,
    /// p^n_prec
    pub pn: u64,
    /// Hensel lift of g^{(p-1)/3} mod p^N, g the least primitive root mod p.
    pub rho: u64,
    /// ρ mod p
    pub rho_mod_p: u64,
    /// least primitive root mod p
    pub prim_root: u64,
    pub ident: Mu3Ident,
    /// p^k for k = 0..=n_prec
    pub ppow: Vec<u64>,
    /// cached e^{2πi·u/p^m} tables for small m
    psi_tables: std::sync::Arc<std::sync::OnceLock<Vec<Vec<CVal>>>>,
}

/// Depth up to which the character values are tabulated.
const PSI_TABLE_MAX: u32 = 4;

impl Ctx {
    pub fn new(p: u64, n_prec: u32) -> Result<Ctx, PadicError> {
        Self::with_ident(p, n_prec, Mu3Ident::Rho)
    }

    pub fn with_ident(p: u64, n_prec: u32, ident: Mu3Ident) -> Result<Ctx, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if p % 6 != 1 || p < 7 {
            return Err(PadicError::BadResidue(p));
        }
        if n_prec < 1 || (p as f64).powi(n_prec as i32) > 2f64.powi(62) {
            return Err(PadicError::BadPrecision(n_prec));
        }
        let mut ppow = Vec::with_capacity(n_prec as usize + 1);
        let mut acc = 1u64;
        for _ in 0..=n_prec {
            ppow.push(acc);
            acc = acc.saturating_mul(p);
        }
        let pn = ppow[n_prec as usize];
        let prim_root = least_primitive_root(p);
        let rho_mod_p = powmod(prim_root, (p - 1) / 3, p);
        let rho = hensel_lift_mu3(rho_mod_p, p, n_prec, &ppow);
        Ok(Ctx {
            p,
            n_prec,
            pn,
            rho,
            rho_mod_p,
            prim_root,
            ident,
            ppow,
            psi_tables: std::sync::Arc::new(std::sync::OnceLock::new()),
        })
    }

    pub fn conj_ident(&self) -> Ctx {
        let mut c = self.clone();
        c.ident = match self.ident {
            Mu3Ident::Rho => Mu3Ident::Rho2,
            Mu3Ident::Rho2 => Mu3Ident::Rho,
        };
        c
    }

    /// Construct unit·p^val from an integer unit representative (any integer
    /// coprime to p; sign handled).
    pub fn elem(&self, val: i64, unit: i64) -> PAdic {
        let u = unit.rem_euclid(self.pn as i64) as u64;
        assert!(u % self.p != 0, "unit representative divisible by p");
        PAdic {
            val,
            unit: u,
            prec: self.n_prec,
        }
    }

    /// Embed an integer (factoring out powers of p).
    pub fn int(&self, k: i64) -> PAdic {
        if k == 0 {
            return PAdic::ZERO;
        }
        let mut v = 0i64;
        let mut a = k;
        while a % self.p as i64 == 0 {
            a /= self.p as i64;
            v += 1;
        }
        self.elem(v, a)
    }

    /// num/den as an element of Q_p.
    pub fn rat(&self, num: i64, den: i64) -> PAdic {
        self.mul(self.int(num), self.inv(self.int(den)).expect("den = 0"))
    }

    pub fn one(&self) -> PAdic {
        self.elem(0, 1)
    }

    /// The uniformizer ϖ = p.
    pub fn pi(&self) -> PAdic {
        self.elem(1, 1)
    }

    /// ρ as a field element.
    pub fn rho_elem(&self) -> PAdic {
        PAdic {
            val: 0,
            unit: self.rho,
            prec: self.n_prec,
        }
    }

    /// ρ^k for k mod 3.
    pub fn rho_pow(&self, k: i64) -> PAdic {
        match k.rem_euclid(3) {
            0 => self.one(),
            1 => self.rho_elem(),
            _ => self.mul(self.rho_elem(), self.rho_elem()),
        }
    }

    pub fn neg(&self, a: PAdic) -> PAdic {
        if a.is_zero() {
            return a;
        }
        let m = self.ppow[a.prec.min(self.n_prec) as usize];
        PAdic {
            val: a.val,
            unit: (m - a.unit % m) % m,
            prec: a.prec,
        }
    }

    pub fn mul(&self, a: PAdic, b: PAdic) -> PAdic {
        if a.is_zero() || b.is_zero() {
            return PAdic::ZERO;
        }
        let prec = a.prec.min(b.prec).min(self.n_prec);
        let m = self.ppow[prec as usize];
        PAdic {
            val: a.val + b.val,
            unit: mulmod(a.unit % m, b.unit % m, m),
            prec,
        }
    }

    pub fn inv(&self, a: PAdic) -> Result<PAdic, PadicError> {
        if a.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let prec = a.prec.min(self.n_prec);
        let m = self.ppow[prec as usize];
        Ok(PAdic {
            val: -a.val,
            unit: invmod(a.unit % m, m),
            prec,
        })
    }

    pub fn div(&self, a: PAdic, b: PAdic) -> PAdic {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    /// a_n := ϖ^n a.
    pub fn shift(&self, a: PAdic, n: i64) -> PAdic {
        if a.is_zero() {
            return a;
        }
        PAdic {
            val: a.val + n,
            ..a
        }
    }

    pub fn add(&self, a: PAdic, b: PAdic) -> PAdic {
        self.try_add(a, b)
            .unwrap_or_else(|e| panic!("p-adic addition lost all precision: {e}"))
    }

    pub fn sub(&self, a: PAdic, b: PAdic) -> PAdic {
        self.add(a, self.neg(b))
    }

    /// Addition with explicit precision-loss reporting. The result's unit
    /// precision shrinks by the number of leading digits cancelled.
    pub fn try_add(&self, a: PAdic, b: PAdic) -> Result<PAdic, PadicError> {
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let (lo, hi) = if a.val <= b.val { (a, b) } else { (b, a) };
        let d = (hi.val - lo.val) as u32;
        // lo.unit + p^d hi.unit, known mod p^P
        let cap = lo
            .prec
            .min(hi.prec.saturating_add(d))
            .min(self.n_prec);
        if d >= cap {
            // hi is invisible at the working precision of lo
            return Ok(PAdic {
                val: lo.val,
                unit: lo.unit % self.ppow[cap as usize],
                prec: cap,
            });
        }
        let m = self.ppow[cap as usize];
        let s = (lo.unit % m + mulmod(self.ppow[d as usize], hi.unit % m, m)) % m;
        if s == 0 {
            // cancellation beyond all known digits: valuation indeterminate
            return Err(PadicError::PrecisionLoss(cap));
        }
        let mut k = 0u32;
        let mut u = s;
        while u % self.p == 0 {
            u /= self.p;
            k += 1;
        }
        Ok(PAdic {
            val: lo.val + k as i64,
            unit: u,
            prec: cap - k,
        })
    }

    /// The cubic residue class of a unit u: u^{(p-1)/3} mod p as a power of ρ.
    pub fn cubic_class(&self, u: u64) -> Mu3 {
        let t = powmod(u % self.p, (self.p - 1) / 3, self.p);
        if t == 1 {
            Mu3::ONE
        } else if t == self.rho_mod_p {
            Mu3 { k: 1 }
        } else {
            debug_assert_eq!(t, mulmod(self.rho_mod_p, self.rho_mod_p, self.p));
            Mu3 { k: 2 }
        }
    }

    /// The tame cubic Hilbert symbol (x, y): the cube root of unity congruent
    /// mod p to ((-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)})^{(p-1)/3}.
    pub fn hilbert(&self, x: PAdic, y: PAdic) -> Mu3 {
        assert!(!x.is_zero() && !y.is_zero(), "hilbert symbol needs nonzero arguments");
        let p = self.p;
        let vx = x.val.rem_euclid((p - 1) as i64 * 3) as u64; // exponent arithmetic mod p-1 is safe
        let vy = y.val.rem_euclid((p - 1) as i64 * 3) as u64;
        // (-1)^{v(x)v(y)}
        let sign = if (x.val & 1) == 1 && (y.val & 1) == 1 {
            p - 1
        } else {
            1
        };
        let xu = x.unit % p;
        let yu = y.unit % p;
        let xp = powmod(xu, vy % (p - 1), p);
        let yp = powmod(invmod(yu, p), vx % (p - 1), p);
        let e = mulmod(sign, mulmod(xp, yp, p), p);
        self.cubic_class(e)
    }

    /// Complex image of a μ₃ value under the fixed identification.
    pub fn mu3_c(&self, z: Mu3) -> CVal {
        let k = match self.ident {
            Mu3Ident::Rho => z.k as i64,
            Mu3Ident::Rho2 => -(z.k as i64),
        };
        crate::complex::unit_root(k.rem_euclid(3) as u64, 3)
    }

    pub fn hilbert_c(&self, x: PAdic, y: PAdic) -> CVal {
        self.mu3_c(self.hilbert(x, y))
    }

    /// The p-adic fractional part of x as (numerator, p^m): the unique
    /// u/p^m ∈ [0,1) with x - u/p^m ∈ O (zero if val ≥ 0).
    pub fn frac(&self, x: PAdic) -> Result<(u64, u64), PadicError> {
        if x.is_zero() || x.val >= 0 {
            return Ok((0, 1));
        }
        let m = (-x.val) as u32;
        if m > self.n_prec || m > x.prec {
            return Err(PadicError::InsufficientPrecision(m));
        }
        let pm = self.ppow[m as usize];
        Ok((x.unit % pm, pm))
    }

    /// ψ(x) = exp(2πi·frac_p(x)): the additive character of conductor O.
    pub fn try_psi(&self, x: PAdic) -> Result<CVal, PadicError> {
        let (num, den) = self.frac(x)?;
        Ok(self.root(num, den))
    }

    /// e^{2πi·num/den} with den = p^m, via the cached tables.
    pub fn root(&self, num: u64, den: u64) -> CVal {
        if den == 1 {
            return crate::complex::one();
        }
        let tables = self.psi_tables.get_or_init(|| {
            let mmax = PSI_TABLE_MAX.min(self.n_prec);
            (0..=mmax)
                .map(|m| crate::complex::root_table(self.ppow[m as usize]))
                .collect()
        });
        let mut m = 0u32;
        while self.ppow[m as usize] != den {
            m += 1;
        }
        if (m as usize) < tables.len() {
            tables[m as usize][num as usize]
        } else {
            // split num/p^m = hi/p^{m-T} + lo/p^m with the hi part tabulated
            let t = PSI_TABLE_MAX.min(self.n_prec);
            let pt = self.ppow[t as usize];
            let hi = num / pt;
            let lo = num % pt;
            self.root(hi, den / pt) * crate::complex::unit_root(lo, den)
        }
    }

    pub fn psi(&self, x: PAdic) -> CVal {
        self.try_psi(x).expect("psi: insufficient precision")
    }

    /// All p^k residues r mod p^k (0 ≤ r < p^k) [small k].
    pub fn residues(&self, k: u32) -> std::ops::Range<u64> {
        0..self.ppow[k as usize]
    }

    /// q^e as a float (q = p).
    pub fn qf(&self, e: i64) -> f64 {
        (self.p as f64).powi(e as i32)
    }

    /// x - y, treating cancellation beyond working precision as exact zero.
    /// Safe wherever the consumer is insensitive to valuations ≥ N, which
    /// holds for every coefficient fed to the character sums at our window
    /// sizes.
    pub fn sub_or_zero(&self, x: PAdic, y: PAdic) -> PAdic {
        match self.try_add(x, self.neg(y)) {
            Ok(v) => v,
            Err(PadicError::PrecisionLoss(_)) => PAdic::ZERO,
            Err(e) => panic!("unexpected p-adic error: {e}"),
        }
    }

    /// x + y with the same convention as `sub_or_zero`.
    pub fn add_or_zero(&self, x: PAdic, y: PAdic) -> PAdic {
        match self.try_add(x, y) {
            Ok(v) => v,
            Err(PadicError::PrecisionLoss(_)) => PAdic::ZERO,
            Err(e) => panic!("unexpected p-adic error: {e}"),
        }
    }
}

fn least_primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for g in 2..p {
        for &f in &factors {
            if powmod(g, (p - 1) / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found")
}

/// Lift a root of x² + x + 1 mod p to mod p^n (f'(ρ) = 2ρ+1 is a unit).
fn hensel_lift_mu3(r0: u64, _p: u64, n: u32, ppow: &[u64]) -> u64 {
    let mut r = r0 as u128;
    for k in 2..=n {
        let m = ppow[k as usize] as u128;
        let f = (r * r + r + 1) % m;
        let fp = (2 * r + 1) % m;
        let fp_inv = invmod(fp as u64, ppow[k as usize]) as u128;
        r = (r + m - (f * fp_inv) % m) % m;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ctx_examples() {
        let c = Ctx::new(7, 4).unwrap();
        assert_eq!(c.rho % 7, 2, "3^2 = 2 is the cube root picked at p=7");
        assert_eq!(c.prim_root, 3);
        let r = c.rho as u128;
        assert_eq!((r * r + r + 1) % c.pn as u128, 0);

        let c = Ctx::new(13, 3).unwrap();
        assert_eq!(c.rho % 13, 3);
        assert_eq!(c.prim_root, 2);
        assert_eq!(powmod(c.rho, 3, c.pn), 1, "rho^3 = 1 mod p^N");

        assert_eq!(Ctx::new(5, 2).err(), Some(PadicError::BadResidue(5)));
        assert_eq!(Ctx::new(9, 2).err(), Some(PadicError::NotPrime(9)));
        assert!(Ctx::new(7, 0).is_err());
    }

    #[test]
    fn arithmetic_basics() {
        let c = Ctx::new(7, 12).unwrap();
        let a = c.elem(2, 3);
        assert_eq!(c.shift(a, 0), a);
        let prod = c.mul(a, c.inv(a).unwrap());
        assert_eq!(prod, c.one());
        // val(add(ϖ, ϖ²)) = 1
        let s = c.add(c.pi(), c.shift(c.pi(), 1));
        assert_eq!(s.val, 1);
        assert_eq!(s.unit, 8);
        assert_eq!(c.inv(PAdic::ZERO), Err(PadicError::DivisionByZero));
    }

    #[test]
    fn add_cancellation_tracks_precision() {
        let c = Ctx::new(7, 6).unwrap();
        // 1 + (7^2 - 1): units cancel two digits
        let a = c.one();
        let b = c.elem(0, 7 * 7 - 1);
        let s = c.try_add(a, b).unwrap();
        assert_eq!(s.val, 2);
        assert_eq!(s.prec, 4);
        // full cancellation is an error, not a silent zero
        let r = c.try_add(a, c.neg(a));
        assert_eq!(r, Err(PadicError::PrecisionLoss(6)));
    }

    #[test]
    fn psi_conductor_and_values() {
        let c = Ctx::new(7, 6).unwrap();
        assert_eq!(c.psi(c.one()), CVal::new(1.0, 0.0));
        assert_eq!(c.psi(c.int(49)), CVal::new(1.0, 0.0));
        // psi(1/7) = e^{2πi/7}
        let z = c.psi(c.rat(1, 7));
        let w = crate::complex::unit_root(1, 7);
        assert!((z - w).norm() < 1e-15);
        // full character sum over u/p vanishes
        let mut s = CVal::new(0.0, 0.0);
        for u in 1..7 {
            s += c.psi(c.elem(-1, u));
        }
        s += CVal::new(1.0, 0.0); // u = 0 term
        assert!(s.norm() < 1e-14);
        // precision rejection
        let deep = c.elem(-7, 1);
        assert!(c.try_psi(deep).is_err());
    }

    #[test]
    fn hilbert_spec_values() {
        let c = Ctx::new(7, 8).unwrap();
        // (x, x) = 1
        for v in -3i64..=3 {
            for u in 1..7 {
                let x = c.elem(v, u);
                assert!(c.hilbert(x, x).is_one());
            }
        }
        // (x, u) = 1 for all units u iff 3 | val(x)
        for u in 1..7u64 {
            let x = c.elem(3, 2);
            assert!(c.hilbert(x, c.elem(0, u as i64)).is_one());
        }
        // (7, u) for u a non-cube mod 7 is a primitive cube root
        // cubes mod 7: {1, 6}; 2 is a non-cube
        let z = c.hilbert(c.pi(), c.elem(0, 2));
        assert!(!z.is_one());
        // brute-force cubic residue check: (p, u) class = class of u^{-1}
        for u in 1..7u64 {
            let lhs = c.hilbert(c.pi(), c.elem(0, u as i64));
            let rhs = c.cubic_class(invmod(u, 7));
            assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn hilbert_relations(p in prop::sample::select(vec![7u64, 13]),
                             vx in -4i64..=4, ux in 1i64..6,
                             vy in -4i64..=4, uy in 1i64..6,
                             vz in -4i64..=4, uz in 1i64..6) {
            let c = Ctx::new(p, 10).unwrap();
            let x = c.elem(vx, ux);
            let y = c.elem(vy, uy);
            let z = c.elem(vz, uz);
            // (y,x) = conj (x,y)
            prop_assert_eq!(c.hilbert(y, x), c.hilbert(x, y).conj());
            // bilinearity
            prop_assert_eq!(
                c.hilbert(c.mul(x, y), z),
                c.hilbert(x, z).mul(c.hilbert(y, z))
            );
            // (x, 1-x) = 1 for x ≠ 1
            let one_minus = c.try_add(c.one(), c.neg(x));
            if let Ok(om) = one_minus {
                if !om.is_zero() {
                    prop_assert!(c.hilbert(x, om).is_one());
                }
            }
            // (x+y, z) = (x, z) when |y| < |x|
            if vy > vx {
                let s = c.add(x, y);
                prop_assert_eq!(c.hilbert(s, z), c.hilbert(x, z));
            }
        }

        #[test]
        fn psi_additive(p in prop::sample::select(vec![7u64, 13]),
                        vx in -6i64..=3, ux in 1i64..6,
                        vy in -6i64..=3, uy in 1i64..6) {
            let c = Ctx::new(p, 10).unwrap();
            let x = c.elem(vx, ux);
            let y = c.elem(vy, uy);
            if let Ok(s) = c.try_add(x, y) {
                let lhs = c.psi(s);
                let rhs = c.psi(x) * c.psi(y);
                prop_assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }
}
