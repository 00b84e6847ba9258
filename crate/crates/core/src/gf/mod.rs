//! Exact arithmetic in finite fields `F_{p^m}`.
//!
//! Elements are stored as [`Fel`], the base-`p` integer `Σ c_i p^i` of their
//! coefficient vector in the power basis `1, w, …, w^{m-1}`, where `w` is a
//! root of the field's stored irreducible modulus. Comparing encodings
//! compares coefficient vectors lexicographically from the top coefficient
//! down. Small extension fields carry log/Zech tables; larger ones fall back
//! to polynomial arithmetic.

mod factor;
mod poly;

pub use factor::{poly_factor, poly_is_irreducible};
pub use poly::Poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which log/Zech tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

/// An element of a finite field, meaningful only together with its [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fel(pub u32);

impl Fel {
    pub const ZERO: Fel = Fel(0);
    pub const ONE: Fel = Fel(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, or `NO_LOG` when `1 + g^i = 0`.
    zech: Vec<u32>,
    /// `log(-1)`.
    neg_one: u32,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    irr: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field `F_{p^m}` fixed by its prime, degree and monic irreducible
/// modulus. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.irr == other.inner.irr)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[irr={:?}]", self.p(), self.m(), self.irr())
    }
}

/// Serialized field description: `{"p": int, "m": int, "irr": [ascending coefficients]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    pub irr: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, m: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p).ok_or(Error::FieldTooLarge { p, m })?;
        if q > i32::MAX as u64 {
            return Err(Error::FieldTooLarge { p, m });
        }
    }
    Ok(q as u32)
}

impl FieldCtx {
    /// `F_{p^m}` with the lexicographically least monic irreducible of degree
    /// `m` (coefficients `(a_{m-1}, …, a_0)` read as a base-`p` integer).
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if !(1..=8).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        checked_order(p, m)?;
        let p32 = p as u32;
        if m == 1 {
            return Self::build(p32, 1, vec![0, 1]);
        }
        let count = p.pow(m);
        for code in 0..count {
            let mut irr = Vec::with_capacity(m as usize + 1);
            let mut c = code;
            for _ in 0..m {
                irr.push((c % p) as u32);
                c /= p;
            }
            irr.push(1);
            if irr[0] == 0 {
                continue;
            }
            if poly_is_irreducible(&irr, p32) {
                return Self::build(p32, m, irr);
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// A field with an explicitly supplied modulus (ascending coefficients,
    /// monic). For `m = 1` the modulus must be the placeholder `x`.
    pub fn with_modulus(p: u64, irr: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if irr.len() < 2 {
            return Err(Error::BadModulus("modulus must have degree at least 1".into()));
        }
        let m = (irr.len() - 1) as u32;
        if !(1..=8).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        checked_order(p, m)?;
        if irr.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus("coefficient not reduced mod p".into()));
        }
        if *irr.last().unwrap() != 1 {
            return Err(Error::BadModulus("modulus is not monic".into()));
        }
        let irr: Vec<u32> = irr.iter().map(|&c| c as u32).collect();
        if m == 1 {
            if irr != [0, 1] {
                return Err(Error::BadModulus("prime fields use the placeholder modulus x".into()));
            }
        } else if !poly_is_irreducible(&irr, p as u32) {
            return Err(Error::BadModulus("modulus is reducible".into()));
        }
        Self::build(p as u32, m, irr)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let f = Self::with_modulus(spec.p, &spec.irr)?;
        if f.m() != spec.m {
            return Err(Error::BadModulus(format!(
                "declared degree {} but modulus has degree {}",
                spec.m,
                f.m()
            )));
        }
        Ok(f)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p() as u64,
            m: self.m(),
            irr: self.irr().iter().map(|&c| c as u64).collect(),
        }
    }

    fn build(p: u32, m: u32, irr: Vec<u32>) -> Result<Self> {
        let q = checked_order(p as u64, m)?;
        let mut inner = Inner { p, m, q, irr, tables: None };
        if m > 1 && (q as u64) <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx { inner: Arc::new(inner) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order `p^m`.
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Stored modulus, ascending coefficients including the leading 1.
    pub fn irr(&self) -> &[u32] {
        &self.inner.irr
    }

    pub fn zero(&self) -> Fel {
        Fel::ZERO
    }

    pub fn one(&self) -> Fel {
        Fel::ONE
    }

    /// The generator `w` (class of `x`). Only meaningful for `m > 1`.
    pub fn gen(&self) -> Fel {
        if self.m() == 1 {
            Fel::ZERO
        } else {
            Fel(self.p())
        }
    }

    pub fn from_int(&self, v: i64) -> Fel {
        let p = self.p() as i64;
        Fel(v.rem_euclid(p) as u32)
    }

    /// Element from ascending power-basis coefficients (length ≤ m, each < p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fel> {
        if coeffs.len() > self.m() as usize {
            return Err(Error::BadFile(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.m()
            )));
        }
        let p = self.p() as u64;
        let mut code: u64 = 0;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::BadFile(format!("coefficient {c} not reduced mod {p}")));
            }
            code = code * p + c;
        }
        Ok(Fel(code as u32))
    }

    /// Ascending power-basis coefficients, always of length m.
    pub fn coeffs(&self, x: Fel) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m() as usize);
        let mut c = x.0;
        for _ in 0..self.m() {
            out.push(c % self.p());
            c /= self.p();
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        (0..self.q()).map(Fel)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fel> {
        (1..self.q()).map(Fel)
    }

    /// Is `x` in the prime subfield?
    pub fn is_prime_subfield(&self, x: Fel) -> bool {
        x.0 < self.p()
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        let inner = &*self.inner;
        if inner.m == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = inner.p as u64;
            return Fel(if s >= p { (s - p) as u32 } else { s as u32 });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &inner.tables {
            let (la, lb) = (t.log[a.0 as usize], t.log[b.0 as usize]);
            let n = inner.q - 1;
            let d = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[d as usize];
            if z == NO_LOG {
                return Fel::ZERO;
            }
            let e = la + z;
            return Fel(t.exp[(if e >= n { e - n } else { e }) as usize]);
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: Fel) -> Fel {
        let inner = &*self.inner;
        if a.0 == 0 {
            return a;
        }
        if inner.m == 1 {
            return Fel(inner.p - a.0);
        }
        if let Some(t) = &inner.tables {
            let n = inner.q - 1;
            let e = t.log[a.0 as usize] + t.neg_one;
            return Fel(t.exp[(if e >= n { e - n } else { e }) as usize]);
        }
        self.digitwise(a, Fel::ZERO, |x, _, p| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        if self.m() == 1 {
            let p = self.p();
            return Fel(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        let inner = &*self.inner;
        if a.0 == 0 || b.0 == 0 {
            return Fel::ZERO;
        }
        if inner.m == 1 {
            return Fel(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        if let Some(t) = &inner.tables {
            let n = inner.q - 1;
            let e = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Fel(t.exp[(if e >= n { e - n } else { e }) as usize]);
        }
        slow_mul(inner, a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fel) -> Option<Fel> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.inner;
        if let Some(t) = &inner.tables {
            let n = inner.q - 1;
            let l = t.log[a.0 as usize];
            return Some(Fel(t.exp[((n - l) % n) as usize]));
        }
        Some(self.pow(a, inner.q as u64 - 2))
    }

    /// `a / b`; panics if `b` is zero.
    pub fn div(&self, a: Fel, b: Fel) -> Fel {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Fel, mut e: u64) -> Fel {
        let mut base = a;
        let mut acc = Fel::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Render as a polynomial in `w`, e.g. `2w^2+w+1`.
    pub fn format(&self, x: Fel) -> String {
        if x.0 == 0 {
            return "0".into();
        }
        let cs = self.coeffs(x);
        let mut parts = Vec::new();
        for (i, &c) in cs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}w^{i}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }

    /// The embedding of this field into `target`, which must contain it.
    pub fn embedding_into(&self, target: &FieldCtx) -> Result<FieldEmbedding> {
        if self.p() != target.p() || !target.m().is_multiple_of(self.m()) {
            return Err(Error::FieldMismatch(format!(
                "F_{}^{} does not embed in F_{}^{}",
                self.p(),
                self.m(),
                target.p(),
                target.m()
            )));
        }
        if self == target {
            return Ok(FieldEmbedding { source: self.clone(), target: target.clone(), powers: None });
        }
        if self.m() == 1 {
            return Ok(FieldEmbedding { source: self.clone(), target: target.clone(), powers: Some(vec![Fel::ONE]) });
        }
        // image of w: the least root of our modulus inside the target
        let modulus = Poly::new(self.irr().iter().map(|&c| Fel(c)).collect());
        let root = target
            .elements()
            .find(|&x| modulus.eval(target, x).is_zero())
            .ok_or_else(|| Error::FieldMismatch("modulus has no root in target".into()))?;
        let mut powers = Vec::with_capacity(self.m() as usize);
        let mut acc = Fel::ONE;
        for _ in 0..self.m() {
            powers.push(acc);
            acc = target.mul(acc, root);
        }
        Ok(FieldEmbedding { source: self.clone(), target: target.clone(), powers: Some(powers) })
    }

    fn digitwise(&self, a: Fel, b: Fel, op: impl Fn(u32, u32, u32) -> u32) -> Fel {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m() {
            out += op(x % p, y % p, p) * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        Fel(out)
    }
}

/// A field homomorphism `F_{p^a} → F_{p^b}` for `a | b`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FieldCtx,
    target: FieldCtx,
    /// Images of `1, w, …, w^{a-1}`; `None` for the identity.
    powers: Option<Vec<Fel>>,
}

impl FieldEmbedding {
    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn apply(&self, x: Fel) -> Fel {
        let Some(powers) = &self.powers else { return x };
        let t = &self.target;
        let mut acc = Fel::ZERO;
        for (c, &w) in self.source.coeffs(x).into_iter().zip(powers) {
            if c != 0 {
                acc = t.add(acc, t.mul(t.from_int(c as i64), w));
            }
        }
        acc
    }
}

fn decode(inner: &Inner, x: Fel, out: &mut [u64]) {
    let mut c = x.0;
    for slot in out.iter_mut().take(inner.m as usize) {
        *slot = (c % inner.p) as u64;
        c /= inner.p;
    }
}

fn slow_mul(inner: &Inner, a: Fel, b: Fel) -> Fel {
    let m = inner.m as usize;
    let p = inner.p as u64;
    let mut da = [0u64; 8];
    let mut db = [0u64; 8];
    decode(inner, a, &mut da);
    decode(inner, b, &mut db);
    let mut t = [0u64; 16];
    for i in 0..m {
        if da[i] == 0 {
            continue;
        }
        for j in 0..m {
            t[i + j] = (t[i + j] + da[i] * db[j]) % p;
        }
    }
    for i in (m..2 * m - 1).rev() {
        let c = t[i];
        if c == 0 {
            continue;
        }
        t[i] = 0;
        for j in 0..m {
            let sub = c * inner.irr[j] as u64 % p;
            t[i - m + j] = (t[i - m + j] + p - sub) % p;
        }
    }
    let mut code = 0u64;
    for i in (0..m).rev() {
        code = code * p + t[i];
    }
    Fel(code as u32)
}

fn slow_add(inner: &Inner, a: Fel, b: Fel) -> Fel {
    let p = inner.p;
    let (mut x, mut y) = (a.0, b.0);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..inner.m {
        out += ((x % p + y % p) % p) * scale;
        x /= p;
        y /= p;
        scale = scale.wrapping_mul(p);
    }
    Fel(out)
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as u64;
    let n = q - 1;
    let factors = prime_factors(n);
    let slow_pow = |mut base: Fel, mut e: u64| {
        let mut acc = Fel::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(inner, acc, base);
            }
            base = slow_mul(inner, base, base);
            e >>= 1;
        }
        acc
    };
    let g = (2..inner.q)
        .map(Fel)
        .find(|&g| factors.iter().all(|&l| slow_pow(g, n / l) != Fel::ONE))
        .expect("multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![NO_LOG; q as usize];
    let mut acc = Fel::ONE;
    for i in 0..n {
        exp.push(acc.0);
        log[acc.0 as usize] = i as u32;
        acc = slow_mul(inner, acc, g);
    }
    let zech = exp
        .iter()
        .map(|&e| {
            let s = slow_add(inner, Fel::ONE, Fel(e));
            if s.0 == 0 {
                NO_LOG
            } else {
                log[s.0 as usize]
            }
        })
        .collect();
    let minus_one = Fel(inner.p - 1);
    Tables { exp, neg_one: log[minus_one.0 as usize], log, zech }
}
