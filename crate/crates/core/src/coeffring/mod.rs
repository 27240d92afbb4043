//! Exact arithmetic in truncated discrete valuation rings `R_N = O_K / pi^N`.
//!
//! Two families of `O_K` are supported:
//!
//! * unramified extensions of `Z_p`, modelled as `(Z/p^N)[u] / (h(u))` for a
//!   monic lift `h` of an irreducible polynomial of degree `f` over `F_p`
//!   (uniformiser `pi = p`);
//! * equal characteristic `F_p[[t]]`, modelled as `F_p[t] / (t^N)`
//!   (uniformiser `pi = t`, `f = 1`).
//!
//! Elements carry a handle to their ring. Operator impls panic when the rings
//! differ; [`ring_arith`] is the checked entry point.

mod fp_poly;
mod quadratic;

pub use fp_poly::{default_modulus, is_irreducible};
pub use quadratic::{hensel_quadratic, roots_mod, MonicQuadratic, QuadFactorization};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    UnramifiedPAdic,
    LaurentSeries,
}

/// Serialized as `{kind, p, f, precision, poly?}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub kind: RingKind,
    pub p: u64,
    #[serde(default = "one_u32")]
    pub f: u32,
    pub precision: u32,
    /// Coefficients `h_0, ..., h_f` of the defining polynomial, low to high.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
}

fn one_u32() -> u32 {
    1
}

impl RingSpec {
    pub fn padic(p: u64, precision: u32) -> Self {
        RingSpec {
            kind: RingKind::UnramifiedPAdic,
            p,
            f: 1,
            precision,
            poly: None,
        }
    }

    pub fn unramified(p: u64, f: u32, precision: u32) -> Self {
        RingSpec {
            kind: RingKind::UnramifiedPAdic,
            p,
            f,
            precision,
            poly: None,
        }
    }

    pub fn laurent(p: u64, precision: u32) -> Self {
        RingSpec {
            kind: RingKind::LaurentSeries,
            p,
            f: 1,
            precision,
            poly: None,
        }
    }
}

const WIDE_LAURENT: u32 = 40;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug)]
struct RingData {
    spec: RingSpec,
    /// `p^N` for the unramified kind, `p` for Laurent series.
    modulus: u64,
    /// Non-leading coefficients of `h`, each in `0..p`.
    h: Vec<u64>,
    /// `p^k` for `k = 0..=N` (unramified kind only).
    pows: Vec<u64>,
    wide: OnceLock<Ring>,
}

/// Shared handle to a truncated DVR.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.0.spec;
        match s.kind {
            RingKind::UnramifiedPAdic => write!(f, "Z_{}[f={}]/p^{}", s.p, s.f, s.precision),
            RingKind::LaurentSeries => write!(f, "F_{}[[t]]/t^{}", s.p, s.precision),
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        let mut spec = spec;
        if !is_prime(spec.p) || spec.p == 2 {
            return Err(Error::Config(format!(
                "p = {} must be an odd prime",
                spec.p
            )));
        }
        if spec.precision == 0 {
            return Err(Error::Config("precision must be at least 1".into()));
        }
        if spec.f == 0 {
            return Err(Error::Config("residue degree must be at least 1".into()));
        }
        let p = spec.p;
        match spec.kind {
            RingKind::LaurentSeries => {
                if spec.f != 1 {
                    return Err(Error::Config("Laurent series rings have f = 1".into()));
                }
                spec.poly = None;
                Ok(Ring(Arc::new(RingData {
                    spec,
                    modulus: p,
                    h: vec![0],
                    pows: vec![],
                    wide: OnceLock::new(),
                })))
            }
            RingKind::UnramifiedPAdic => {
                let fits = (p as f64).ln() * spec.precision as f64 <= (2f64.powi(62)).ln();
                if !fits {
                    return Err(Error::Config(format!(
                        "p^N = {}^{} does not fit the 62-bit coefficient budget",
                        p, spec.precision
                    )));
                }
                let h = match &spec.poly {
                    Some(h) => {
                        if h.len() != spec.f as usize + 1 || h[spec.f as usize] % p != 1 {
                            return Err(Error::Config(format!(
                                "defining polynomial must be monic of degree {}",
                                spec.f
                            )));
                        }
                        let h: Vec<u64> = h.iter().map(|c| c % p).collect();
                        if !is_irreducible(&h, p) {
                            return Err(Error::Config(format!(
                                "defining polynomial {:?} is reducible mod {}",
                                h, p
                            )));
                        }
                        h
                    }
                    None => default_modulus(p, spec.f),
                };
                if spec.f == 1 {
                    spec.poly = None;
                } else {
                    spec.poly = Some(h.clone());
                }
                let pows: Vec<u64> = (0..=spec.precision).map(|k| p.pow(k)).collect();
                let modulus = pows[spec.precision as usize];
                let h_low = h[..spec.f as usize].to_vec();
                Ok(Ring(Arc::new(RingData {
                    spec,
                    modulus,
                    h: h_low,
                    pows,
                    wide: OnceLock::new(),
                })))
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }
    pub fn kind(&self) -> RingKind {
        self.0.spec.kind
    }
    pub fn p(&self) -> u64 {
        self.0.spec.p
    }
    pub fn f(&self) -> u32 {
        self.0.spec.f
    }
    pub fn precision(&self) -> u32 {
        self.0.spec.precision
    }
    /// Size of the residue field.
    pub fn q(&self) -> u64 {
        self.p().pow(self.f())
    }

    fn width(&self) -> usize {
        match self.kind() {
            RingKind::UnramifiedPAdic => self.f() as usize,
            RingKind::LaurentSeries => self.precision() as usize,
        }
    }

    /// Same field, different truncation.
    pub fn with_precision(&self, precision: u32) -> Result<Ring> {
        if precision == self.precision() {
            return Ok(self.clone());
        }
        let mut spec = self.spec().clone();
        spec.precision = precision;
        Ring::new(spec)
    }

    /// Largest precision this field supports; used for exact lattice geometry,
    /// whose data (powers of pi and residues) does not depend on the working
    /// precision of a representation.
    pub fn wide_precision(&self) -> u32 {
        match self.kind() {
            RingKind::UnramifiedPAdic => {
                let p = self.p() as u128;
                let mut k = 0;
                let mut acc = 1u128;
                while acc * p < (1u128 << 62) {
                    acc *= p;
                    k += 1;
                }
                k
            }
            RingKind::LaurentSeries => self.precision().max(WIDE_LAURENT),
        }
    }

    /// The same field at [`Ring::wide_precision`].
    pub fn wide(&self) -> Ring {
        self.0
            .wide
            .get_or_init(|| {
                let w = self.wide_precision();
                if w == self.precision() {
                    self.clone()
                } else {
                    let mut spec = self.spec().clone();
                    spec.precision = w;
                    Ring::new(spec).expect("wide precision is always admissible")
                }
            })
            .clone()
    }

    fn raw(&self, c: Vec<u64>) -> Elem {
        debug_assert_eq!(c.len(), self.width());
        Elem {
            ring: self.clone(),
            c,
        }
    }

    pub fn zero(&self) -> Elem {
        self.raw(vec![0; self.width()])
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        let mut c = vec![0; self.width()];
        let m = self.0.modulus as i128;
        c[0] = (v as i128).rem_euclid(m) as u64;
        self.raw(c)
    }

    /// The uniformiser.
    pub fn pi(&self) -> Elem {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, k: u32) -> Elem {
        self.one().mul_pi_pow(k)
    }

    /// The generator `u` of the residue extension (`f > 1`), or zero when `f = 1`.
    pub fn u(&self) -> Elem {
        let mut c = vec![0; self.width()];
        if self.kind() == RingKind::UnramifiedPAdic && self.f() > 1 {
            c[1] = 1;
        }
        self.raw(c)
    }

    /// Element from coefficients (`u`-basis for unramified rings, `t`-powers for
    /// Laurent series); values are reduced.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.width() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given, ring takes at most {}",
                coeffs.len(),
                self.width()
            )));
        }
        let m = self.0.modulus as i128;
        let mut c = vec![0; self.width()];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = (v as i128).rem_euclid(m) as u64;
        }
        Ok(self.raw(c))
    }

    /// Inverse of [`Elem::digits`]: little-endian base-p digits, `N * f` of them,
    /// grouped by power of the uniformiser.
    pub fn from_digits(&self, digits: &[u64]) -> Result<Elem> {
        let p = self.p();
        let n = self.precision() as usize;
        let f = self.f() as usize;
        if digits.len() > n * f {
            return Err(Error::InvalidInput(format!(
                "{} digits given, ring holds {}",
                digits.len(),
                n * f
            )));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::InvalidInput(format!(
                "digit {} is not below p = {}",
                d, p
            )));
        }
        let mut c = vec![0u64; self.width()];
        match self.kind() {
            RingKind::UnramifiedPAdic => {
                for (idx, &d) in digits.iter().enumerate() {
                    let (level, j) = (idx / f, idx % f);
                    c[j] += d * self.0.pows[level];
                }
            }
            RingKind::LaurentSeries => c[..digits.len()].copy_from_slice(digits),
        }
        Ok(self.raw(c))
    }

    /// The `q` residue representatives with digits in `0..p`, in increasing
    /// order of their base-p index.
    pub fn residue_reps(&self) -> Vec<Elem> {
        let p = self.p();
        (0..self.q())
            .map(|idx| {
                let mut c = vec![0u64; self.width()];
                match self.kind() {
                    RingKind::UnramifiedPAdic => {
                        let mut k = idx;
                        for slot in c.iter_mut() {
                            *slot = k % p;
                            k /= p;
                        }
                    }
                    RingKind::LaurentSeries => c[0] = idx,
                }
                self.raw(c)
            })
            .collect()
    }
}

/// An element of `R_N` in canonical form.
#[derive(Clone)]
pub struct Elem {
    ring: Ring,
    c: Vec<u64>,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.ring == other.ring
    }
}
impl Eq for Elem {}

impl Hash for Elem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.digits().cmp(&other.digits())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation: fails with a configuration error if the operands
/// live in different rings.
pub fn ring_arith(x: &Elem, y: &Elem, op: ArithOp) -> Result<Elem> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch(format!("{:?} vs {:?}", x.ring, y.ring)));
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
    })
}

fn vp_u64(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    k
}

impl Elem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Truncated valuation in `0..=N`; `N` exactly for zero.
    pub fn valuation(&self) -> u32 {
        let n = self.ring.precision();
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => self
                .c
                .iter()
                .filter(|&&x| x != 0)
                .map(|&x| vp_u64(x, self.ring.p()))
                .min()
                .unwrap_or(n),
            RingKind::LaurentSeries => self
                .c
                .iter()
                .position(|&x| x != 0)
                .map(|i| i as u32)
                .unwrap_or(n),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    fn assert_same(&self, other: &Elem) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    fn add_impl(&self, other: &Elem) -> Elem {
        self.assert_same(other);
        let m = self.ring.0.modulus;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + b) % m)
            .collect();
        self.ring.raw(c)
    }

    fn sub_impl(&self, other: &Elem) -> Elem {
        self.assert_same(other);
        let m = self.ring.0.modulus;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + m - b) % m)
            .collect();
        self.ring.raw(c)
    }

    fn neg_impl(&self) -> Elem {
        let m = self.ring.0.modulus;
        let c = self.c.iter().map(|&a| (m - a) % m).collect();
        self.ring.raw(c)
    }

    fn mul_impl(&self, other: &Elem) -> Elem {
        self.assert_same(other);
        let m = self.ring.0.modulus as u128;
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => {
                let f = self.c.len();
                if f == 1 {
                    let v = (self.c[0] as u128 * other.c[0] as u128 % m) as u64;
                    return self.ring.raw(vec![v]);
                }
                let mut prod = vec![0u128; 2 * f - 1];
                for (i, &a) in self.c.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, &b) in other.c.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a as u128 * b as u128) % m;
                    }
                }
                // u^f = -(h_0 + h_1 u + ... + h_{f-1} u^{f-1})
                for k in (f..2 * f - 1).rev() {
                    let top = prod[k];
                    if top == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &hi) in self.ring.0.h.iter().enumerate() {
                        let sub = top * hi as u128 % m;
                        prod[k - f + i] = (prod[k - f + i] + m - sub) % m;
                    }
                }
                self.ring.raw(prod[..f].iter().map(|&x| x as u64).collect())
            }
            RingKind::LaurentSeries => {
                let n = self.c.len();
                let p = self.ring.p();
                let mut out = vec![0u64; n];
                for (i, &a) in self.c.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, &b) in other.c[..n - i].iter().enumerate() {
                        out[i + j] = (out[i + j] + a * b) % p;
                    }
                }
                self.ring.raw(out)
            }
        }
    }

    pub fn pow(&self, mut exp: u64) -> Elem {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Elem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let one = self.ring.one();
        let two = self.ring.from_int(2);
        // a^(q-2) inverts modulo pi; Newton doubles the precision each step.
        let mut x = self.pow(self.ring.q() - 2);
        for _ in 0..64 {
            let ax = self * &x;
            if ax == one {
                return Ok(x);
            }
            x = &x * &(&two - &ax);
        }
        unreachable!("Newton inversion converges in log2(N) steps")
    }

    pub fn mul_pi_pow(&self, k: u32) -> Elem {
        let n = self.ring.precision();
        if k >= n {
            return self.ring.zero();
        }
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => {
                let m = self.ring.0.modulus as u128;
                let pk = self.ring.0.pows[k as usize] as u128;
                let c = self
                    .c
                    .iter()
                    .map(|&a| (a as u128 * pk % m) as u64)
                    .collect();
                self.ring.raw(c)
            }
            RingKind::LaurentSeries => {
                let k = k as usize;
                let mut c = vec![0u64; self.c.len()];
                c[k..].copy_from_slice(&self.c[..self.c.len() - k]);
                self.ring.raw(c)
            }
        }
    }

    /// Exact division by `pi^k`; requires `valuation >= k`. The quotient is
    /// only determined modulo `pi^(N-k)` and is returned as its canonical lift.
    pub fn div_pi_pow(&self, k: u32) -> Result<Elem> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.valuation() < k {
            return Err(Error::InvalidInput(format!(
                "{} is not divisible by pi^{}",
                self, k
            )));
        }
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => {
                let pk = self.ring.0.pows[k as usize];
                Ok(self.ring.raw(self.c.iter().map(|&a| a / pk).collect()))
            }
            RingKind::LaurentSeries => {
                let k = k as usize;
                let mut c = vec![0u64; self.c.len()];
                c[..self.c.len() - k].copy_from_slice(&self.c[k..]);
                Ok(self.ring.raw(c))
            }
        }
    }

    /// Canonical residue modulo `pi^k`, as an element of the same ring.
    pub fn residue_mod(&self, k: u32) -> Elem {
        if k >= self.ring.precision() {
            return self.clone();
        }
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => {
                let pk = self.ring.0.pows[k as usize];
                self.ring.raw(self.c.iter().map(|&a| a % pk).collect())
            }
            RingKind::LaurentSeries => {
                let mut c = self.c.clone();
                for x in c.iter_mut().skip(k as usize) {
                    *x = 0;
                }
                self.ring.raw(c)
            }
        }
    }

    /// `self ≡ other (mod pi^k)`.
    pub fn congruent(&self, other: &Elem, k: u32) -> bool {
        (self - other).valuation() >= k.min(self.ring.precision())
    }

    /// Moves the element to a ring of the same field with another precision:
    /// reduction when the target is coarser, canonical lift when it is finer.
    pub fn to_ring(&self, target: &Ring) -> Result<Elem> {
        let (a, b) = (self.ring.spec(), target.spec());
        if a.kind != b.kind || a.p != b.p || a.f != b.f || a.poly != b.poly {
            return Err(Error::RingMismatch(format!(
                "{:?} -> {:?}",
                self.ring, target
            )));
        }
        let reduced = self.residue_mod(target.precision());
        let c = match target.kind() {
            RingKind::UnramifiedPAdic => reduced.c,
            RingKind::LaurentSeries => {
                let mut c = vec![0u64; target.precision() as usize];
                let k = c.len().min(reduced.c.len());
                c[..k].copy_from_slice(&reduced.c[..k]);
                c
            }
        };
        Ok(target.raw(c))
    }

    /// Little-endian base-p digits, `N * f` of them; digit `i * f + j` is the
    /// `i`-th digit of the `u^j` coefficient.
    pub fn digits(&self) -> Vec<u64> {
        let p = self.ring.p();
        match self.ring.kind() {
            RingKind::UnramifiedPAdic => {
                let n = self.ring.precision() as usize;
                let f = self.c.len();
                let mut out = vec![0u64; n * f];
                for (j, &coef) in self.c.iter().enumerate() {
                    let mut x = coef;
                    for level in 0..n {
                        out[level * f + j] = x % p;
                        x /= p;
                    }
                }
                out
            }
            RingKind::LaurentSeries => self.c.clone(),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring.kind() {
            RingKind::UnramifiedPAdic if self.c.len() == 1 => write!(f, "{}", self.c[0]),
            RingKind::UnramifiedPAdic => {
                let terms: Vec<String> = self
                    .c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| match j {
                        0 => x.to_string(),
                        1 => format!("{}u", x),
                        _ => format!("{}u^{}", x, j),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "({})", terms.join("+"))
                }
            }
            RingKind::LaurentSeries => {
                let terms: Vec<String> = self
                    .c
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| match j {
                        0 => x.to_string(),
                        1 => format!("{}t", x),
                        _ => format!("{}t^{}", x, j),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "({})", terms.join("+"))
                }
            }
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl<'a> $tr<&'a Elem> for &'a Elem {
            type Output = Elem;
            fn $method(self, rhs: &'a Elem) -> Elem {
                self.$imp(rhs)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &'a Elem) -> Elem {
                (&self).$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}
impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

/// JSON form of an element: its digit array.
impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(p: u64, n: u32) -> Ring {
        Ring::new(RingSpec::padic(p, n)).unwrap()
    }

    #[test]
    fn modular_arithmetic_examples() {
        let r = zp(3, 5);
        assert_eq!(&r.from_int(18) * &r.from_int(18), r.from_int(81));
        assert_eq!(&r.from_int(242) + &r.from_int(1), r.zero());

        let r2 = Ring::new(RingSpec {
            poly: Some(vec![1, 0, 1]),
            ..RingSpec::unramified(3, 2, 2)
        })
        .unwrap();
        let u = r2.u();
        let uu = &u * &u;
        assert_eq!(uu, r2.from_int(8));
        assert_eq!(uu.coeffs(), &[8, 0]);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = zp(3, 5).one();
        let b = zp(3, 4).one();
        assert!(matches!(
            ring_arith(&a, &b, ArithOp::Add),
            Err(Error::RingMismatch(_))
        ));
        assert!(ring_arith(&a, &a, ArithOp::Mul).is_ok());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(zp(3, 5).from_int(18).valuation(), 2);
        assert_eq!(zp(3, 5).zero().valuation(), 5);
        assert_eq!(zp(5, 4).from_int(35).valuation(), 1);
        let l = Ring::new(RingSpec::laurent(3, 6)).unwrap();
        let x = l.from_coeffs(&[0, 0, 2, 1]).unwrap();
        assert_eq!(x.valuation(), 2);
    }

    #[test]
    fn inverse_examples() {
        let r = zp(3, 5);
        assert_eq!(r.from_int(2).inverse().unwrap(), r.from_int(122));
        let r5 = zp(5, 2);
        assert_eq!(r5.from_int(6).inverse().unwrap(), r5.from_int(21));
        assert!(matches!(r.from_int(6).inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn inverse_in_extension_and_laurent() {
        let r = Ring::new(RingSpec::unramified(3, 2, 6)).unwrap();
        let x = r.from_coeffs(&[2, 5]).unwrap();
        assert_eq!(&x * &x.inverse().unwrap(), r.one());
        let l = Ring::new(RingSpec::laurent(5, 7)).unwrap();
        let y = l.from_coeffs(&[3, 1, 4, 0, 2]).unwrap();
        assert_eq!(&y * &y.inverse().unwrap(), l.one());
    }

    #[test]
    fn digits_roundtrip_and_layout() {
        let r = Ring::new(RingSpec::unramified(3, 2, 3)).unwrap();
        let x = r.from_coeffs(&[5, 19]).unwrap(); // 5 = 12_3, 19 = 201_3
        assert_eq!(x.digits(), vec![2, 1, 1, 0, 0, 2]);
        assert_eq!(r.from_digits(&x.digits()).unwrap(), x);
        assert!(r.from_digits(&[3]).is_err());
    }

    #[test]
    fn residue_reps_are_distinct_mod_pi() {
        let r = Ring::new(RingSpec::unramified(3, 2, 4)).unwrap();
        let reps = r.residue_reps();
        assert_eq!(reps.len(), 9);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert_eq!((a - b).valuation(), 0);
            }
        }
    }

    #[test]
    fn precision_changes() {
        let r = zp(5, 6);
        let x = r.from_int(1234);
        let small = r.with_precision(2).unwrap();
        assert_eq!(x.to_ring(&small).unwrap(), small.from_int(1234 % 25));
        let back = x.to_ring(&small).unwrap().to_ring(&r).unwrap();
        assert_eq!(back, r.from_int(1234 % 25));
        assert_eq!(x.residue_mod(3), r.from_int(1234 % 125));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Ring::new(RingSpec::padic(2, 4)).is_err());
        assert!(Ring::new(RingSpec::padic(9, 4)).is_err());
        assert!(Ring::new(RingSpec {
            poly: Some(vec![1, 0, 1]),
            ..RingSpec::unramified(5, 2, 3)
        })
        .is_err());
    }
}
