//! Univariate factorization over finite fields: square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting.

use rand::Rng;

use super::{Fel, FieldCtx, Poly};
use crate::rng::{self, Stream};

/// Irreducibility of a monic polynomial over `F_p` (ascending coefficients),
/// via `gcd(f, x^{p^d} - x) = 1` for every `d ≤ deg f / 2`.
pub fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let fp = FieldCtx::prime(p as u64).expect("prime modulus");
    let poly = Poly::new(f.iter().map(|&c| Fel(c % p)).collect());
    let Some(deg) = poly.degree() else { return false };
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let poly = poly.monic(&fp);
    let x = Poly::x();
    let mut h = x.clone();
    for _ in 1..=deg / 2 {
        h = h.pow_mod(&fp, p as u64, &poly);
        if !poly.gcd(&fp, &h.sub(&fp, &x)).is_one() {
            return false;
        }
    }
    true
}

/// Factor `f` into monic irreducibles with multiplicities. The leading unit is
/// dropped. Output is sorted by degree, then by coefficients from the top
/// down, and is a deterministic function of `(f, seed)`.
pub fn poly_factor(field: &FieldCtx, f: &Poly, seed: u64) -> Vec<(Poly, u32)> {
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let mut rng = rng::stream(seed, 0);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (part, mult) in squarefree(field, &f.monic(field)) {
        for (block, d) in distinct_degree(field, &part) {
            for factor in equal_degree(field, &block, d, &mut rng) {
                out.push((factor, mult));
            }
        }
    }
    out.sort_by_key(|(g, _)| g.sort_key());
    out.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 += b.1;
            true
        } else {
            false
        }
    });
    out
}

fn squarefree(field: &FieldCtx, a: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut i = 1u32;
    let mut c = a.gcd(field, &a.derivative(field));
    let mut w = a.div_rem(field, &c).0;
    while !w.is_one() {
        let y = w.gcd(field, &c);
        let z = w.div_rem(field, &y).0;
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(field, &w).0;
    }
    if !c.is_one() {
        let p = field.p();
        for (g, e) in squarefree(field, &pth_root(field, &c)) {
            out.push((g, e * p));
        }
    }
    out
}

/// Root of a polynomial whose exponents are all multiples of `p`.
fn pth_root(field: &FieldCtx, c: &Poly) -> Poly {
    let p = field.p() as usize;
    let root_exp = field.q() as u64 / p as u64;
    Poly::new(c.coeffs().iter().step_by(p).map(|&a| field.pow(a, root_exp)).collect())
}

fn distinct_degree(field: &FieldCtx, g: &Poly) -> Vec<(Poly, usize)> {
    let q = field.q() as u64;
    let x = Poly::x();
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(field, q, &rest);
        let gd = rest.gcd(field, &h.sub(field, &x));
        if !gd.is_one() {
            rest = rest.div_rem(field, &gd).0;
            h = h.rem(field, &rest);
            out.push((gd, d));
        }
        d += 1;
    }
    if let Some(r) = rest.degree().filter(|&r| r > 0) {
        out.push((rest, r));
    }
    out
}

fn equal_degree(field: &FieldCtx, g: &Poly, d: usize, rng: &mut Stream) -> Vec<Poly> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        return vec![g.clone()];
    }
    let q = field.q();
    loop {
        let a = Poly::new((0..n).map(|_| Fel(rng.gen_range(0..q))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = splitting_element(field, &a, d, g);
        let s = g.gcd(field, &b);
        let sd = s.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let t = g.div_rem(field, &s).0;
            let mut out = equal_degree(field, &s, d, rng);
            out.extend(equal_degree(field, &t, d, rng));
            return out;
        }
    }
}

/// `a^{(q^d-1)/2} - 1` for odd `q`, the absolute trace of `a` for even `q`.
fn splitting_element(field: &FieldCtx, a: &Poly, d: usize, g: &Poly) -> Poly {
    let q = field.q() as u64;
    if field.p() == 2 {
        let steps = field.m() as usize * d;
        let mut term = a.rem(field, g);
        let mut acc = term.clone();
        for _ in 1..steps {
            term = term.mul(field, &term).rem(field, g);
            acc = acc.add(field, &term);
        }
        return acc;
    }
    let mut frob = a.rem(field, g);
    let mut norm = frob.clone();
    for _ in 1..d {
        frob = frob.pow_mod(field, q, g);
        norm = norm.mul(field, &frob).rem(field, g);
    }
    norm.pow_mod(field, (q - 1) / 2, g).sub(field, &Poly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn poly(f: &FieldCtx, cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| f.from_int(c)).collect())
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly_is_irreducible(&[1, 0, 1], 3));
        assert!(!poly_is_irreducible(&[2, 0, 1], 3));
        assert!(poly_is_irreducible(&[0, 1], 3));
        // x^4 + 1 over F_3 = (x^2+x+2)(x^2+2x+2): no roots but reducible
        assert!(!poly_is_irreducible(&[1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn factor_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let sq = poly(&f3, &[1, 0, 1]);
        assert_eq!(poly_factor(&f3, &sq, 1), vec![(sq.clone(), 1)]);

        let cube = Poly::monomial(Fel::ONE, 3);
        assert_eq!(poly_factor(&f3, &cube, 1), vec![(Poly::x(), 3)]);

        let f9 = FieldCtx::new(3, 2).unwrap();
        let w = f9.gen();
        let sq9 = poly(&f9, &[1, 0, 1]);
        let got = poly_factor(&f9, &sq9, 5);
        let x_plus = |c: Fel| Poly::new(vec![c, Fel::ONE]);
        assert_eq!(got, vec![(x_plus(w), 1), (x_plus(f9.mul(f9.from_int(2), w)), 1)]);
    }

    #[test]
    fn leading_unit_dropped_and_repeated_factors() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        // 2 (x+1)^2 (x^2+2)
        let a = poly(&f5, &[1, 1]);
        let b = poly(&f5, &[2, 0, 1]);
        let f = a.mul(&f5, &a).mul(&f5, &b).scale(&f5, f5.from_int(2));
        assert_eq!(poly_factor(&f5, &f, 3), vec![(a, 2), (b, 1)]);
    }

    #[test]
    fn characteristic_two_splitting() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        // x^4 - x splits into all four linear factors over F_4
        let f = poly(&f4, &[0, 1, 0, 0, 1]);
        let got = poly_factor(&f4, &f, 9);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
    }

    fn remultiply(field: &FieldCtx, factors: &[(Poly, u32)]) -> Poly {
        factors.iter().fold(Poly::one(), |acc, (g, e)| {
            (0..*e).fold(acc, |acc, _| acc.mul(field, g))
        })
    }

    #[test]
    fn random_factorizations_remultiply() {
        for (p, m) in [(2u64, 1u32), (3, 1), (5, 1), (3, 2), (2, 3), (7, 1)] {
            let field = FieldCtx::new(p, m).unwrap();
            let mut rng = rng::stream(11, p * 10 + m as u64);
            for trial in 0..1000 {
                let deg = rng.gen_range(1..=8);
                let mut cs: Vec<Fel> = (0..deg).map(|_| Fel(rng.gen_range(0..field.q()))).collect();
                cs.push(Fel(rng.gen_range(1..field.q())));
                let f = Poly::new(cs);
                let factors = poly_factor(&field, &f, trial);
                assert_eq!(remultiply(&field, &factors), f.monic(&field), "p={p} m={m} f={f:?}");
                for (g, _) in &factors {
                    assert_eq!(g.lead(), Fel::ONE);
                    if m == 1 {
                        let raw: Vec<u32> = g.coeffs().iter().map(|c| c.0).collect();
                        assert!(poly_is_irreducible(&raw, p as u32));
                    }
                }
                let keys: Vec<_> = factors.iter().map(|(g, _)| g.sort_key()).collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
