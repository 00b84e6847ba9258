use super::{Fel, FieldCtx};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fel>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fel>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fel::ONE] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Fel::ZERO, Fel::ONE] }
    }

    pub fn constant(c: Fel) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Fel, deg: usize) -> Self {
        let mut coeffs = vec![Fel::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Fel] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fel::ONE]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fel {
        self.coeffs.last().copied().unwrap_or(Fel::ZERO)
    }

    pub fn eval(&self, f: &FieldCtx, x: Fel) -> Fel {
        self.coeffs.iter().rev().fold(Fel::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fel::ZERO);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn sub(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Fel::ZERO);
        Poly::new((0..n).map(|i| f.sub(get(self, i), get(other, i))).collect())
    }

    pub fn scale(&self, f: &FieldCtx, c: Fel) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fel::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, f: &FieldCtx, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else { return (Poly::zero(), Poly::zero()) };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = f.inv(divisor.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fel::ZERO; sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, f: &FieldCtx, divisor: &Poly) -> Poly {
        self.div_rem(f, divisor).1
    }

    pub fn monic(&self, f: &FieldCtx) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()).unwrap())
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, f: &FieldCtx, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, f: &FieldCtx, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(f, modulus);
        let mut acc = Poly::one().rem(f, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, modulus);
            }
            base = base.mul(f, &base).rem(f, modulus);
            e >>= 1;
        }
        acc
    }

    /// Canonical ordering key: degree, then coefficients from the top down.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        (self.coeffs.len(), self.coeffs.iter().rev().map(|c| c.0).collect())
    }

    pub fn format(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let coef = if cs.contains('+') { format!("({cs})") } else { cs };
            parts.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".into(),
                (1, _) => format!("{coef}*x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{coef}*x^{i}"),
            });
        }
        parts.join(" + ")
    }
}
