//! Commutant computation and randomized Fitting decomposition.

use rand::Rng;

use super::EAModule;
use crate::gf::{poly_factor, Fel, FieldCtx, Poly};
use crate::linalg::MatF;
use crate::rng;

/// Outcome of a decomposition attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionStatus {
    /// At least one splitting was found.
    Decomposed,
    /// No random commutant element split the module in this many trials.
    NoSplitFound(usize),
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<EAModule>,
    /// Columns are the adapted basis: summand `i` occupies the next
    /// `summands[i].dim()` columns, and `basis⁻¹ · X_j · basis` is the block
    /// diagonal matrix of the summands' generators.
    pub basis: MatF,
    pub status: DecompositionStatus,
}

/// Basis of `{Y : Y X_i = X_i Y for all i}`, starting with the identity.
pub fn endomorphism_basis(m: &EAModule) -> Vec<MatF> {
    let n = m.dim();
    let f = m.field();
    if n == 0 {
        return Vec::new();
    }
    let nn = n * n;
    let mut sys = MatF::zeros(f, m.k() * nn, nn);
    for (g, x) in m.gens().iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let row = g * nn + a * n + b;
                // (Y X)_{ab} − (X Y)_{ab}
                for c in 0..n {
                    let xcb = x.get(c, b);
                    if !xcb.is_zero() {
                        let col = a * n + c;
                        sys.set(row, col, f.add(sys.get(row, col), xcb));
                    }
                    let xac = x.get(a, c);
                    if !xac.is_zero() {
                        let col = c * n + b;
                        sys.set(row, col, f.sub(sys.get(row, col), xac));
                    }
                }
            }
        }
    }
    let kernel = sys.kernel_basis();
    let unflatten = |v: &[Fel]| MatF::from_fn(f, n, n, |r, c| v[r * n + c]);
    let mut out = vec![MatF::identity(f, n)];
    let mut span: Vec<Vec<Fel>> = vec![MatF::identity(f, n).entries().to_vec()];
    for v in kernel {
        span.push(v.clone());
        if MatF::from_rows(f, &span).unwrap().rank() == span.len() {
            out.push(unflatten(&v));
        } else {
            span.pop();
        }
    }
    out
}

/// Minimal polynomial of a square matrix, by the first linear dependence
/// among `I, θ, θ², …`.
pub fn minimal_polynomial(theta: &MatF) -> Poly {
    let f = theta.field();
    let n = theta.rows();
    let mut powers: Vec<Vec<Fel>> = vec![MatF::identity(f, n).entries().to_vec()];
    let mut current = MatF::identity(f, n);
    loop {
        current = current.mul(theta).unwrap();
        let target = current.entries().to_vec();
        let basis = MatF::from_columns(f, n * n, &powers);
        if let Some(c) = basis.solve(&target) {
            let mut coeffs: Vec<Fel> = c.iter().map(|&x| f.neg(x)).collect();
            coeffs.push(Fel::ONE);
            return Poly::new(coeffs);
        }
        powers.push(target);
    }
}

fn eval_at_matrix(f: &FieldCtx, poly: &Poly, theta: &MatF) -> MatF {
    let n = theta.rows();
    let mut acc = MatF::zeros(f, n, n);
    let id = MatF::identity(f, n);
    for &c in poly.coeffs().iter().rev() {
        acc = acc.mul(theta).unwrap();
        acc.add_scaled(c, &id).unwrap();
    }
    acc
}

/// Split `m` along one coprime factorization of the minimal polynomial of a
/// random commutant element, trying up to `trials` elements.
fn try_split(m: &EAModule, trials: usize, seed: u64) -> Option<(MatF, usize)> {
    let f = m.field();
    let endo = endomorphism_basis(m);
    if endo.len() <= 1 {
        return None;
    }
    let q = f.q();
    for t in 0..trials {
        let mut rng = rng::stream(seed, t as u64);
        let mut theta = MatF::zeros(f, m.dim(), m.dim());
        for b in &endo {
            theta.add_scaled(Fel(rng.gen_range(0..q)), b).unwrap();
        }
        let minpoly = minimal_polynomial(&theta);
        let factors = poly_factor(f, &minpoly, rng::derive(seed, t as u64));
        if factors.len() < 2 {
            continue;
        }
        let power = |g: &Poly, e: u32| (0..e).fold(Poly::one(), |acc, _| acc.mul(f, g));
        let first = power(&factors[0].0, factors[0].1);
        let rest = factors[1..].iter().fold(Poly::one(), |acc, (g, e)| acc.mul(f, &power(g, *e)));
        let kf = eval_at_matrix(f, &first, &theta).kernel_basis();
        let kg = eval_at_matrix(f, &rest, &theta).kernel_basis();
        let split_at = kf.len();
        let mut cols = kf;
        cols.extend(kg);
        let p = MatF::from_columns(f, m.dim(), &cols);
        debug_assert_eq!(p.cols(), m.dim());
        return Some((p, split_at));
    }
    None
}

fn decompose_rec(m: &EAModule, trials: usize, seed: u64, out: &mut Vec<(EAModule, MatF)>) -> bool {
    let f = m.field();
    let Some((p, split_at)) = (if m.dim() > 1 { try_split(m, trials, seed) } else { None }) else {
        out.push((m.clone(), MatF::identity(f, m.dim())));
        return false;
    };
    let p_inv = p.inverse().expect("kernels of coprime factors are complementary");
    let n = m.dim();
    let conj: Vec<MatF> = m.gens().iter().map(|x| p_inv.mul(x).unwrap().mul(&p).unwrap()).collect();
    let parts = [(0..split_at).collect::<Vec<_>>(), (split_at..n).collect::<Vec<_>>()];
    for (idx, part) in parts.iter().enumerate() {
        let gens = conj.iter().map(|x| x.submatrix(part, part)).collect();
        let sub = EAModule::new_unchecked(f, part.len(), gens);
        let mut children = Vec::new();
        decompose_rec(&sub, trials, rng::derive(seed, idx as u64 + 1), &mut children);
        let rows: Vec<usize> = (0..n).collect();
        let embed = p.submatrix(&rows, part);
        for (child, basis) in children {
            out.push((child, embed.mul(&basis).unwrap()));
        }
    }
    true
}

/// Decompose `m` by Fitting's lemma applied to random commutant elements.
/// Deterministic in `(m, trials, seed)`. `NoSplitFound` is evidence, not
/// proof, of indecomposability.
pub fn fitting_decompose(m: &EAModule, trials: usize, seed: u64) -> Decomposition {
    let mut parts = Vec::new();
    let split = decompose_rec(m, trials.max(1), seed, &mut parts);
    let f = m.field();
    let cols: Vec<Vec<Fel>> = parts
        .iter()
        .flat_map(|(_, b)| (0..b.cols()).map(|c| b.column(c)).collect::<Vec<_>>())
        .collect();
    Decomposition {
        basis: MatF::from_columns(f, m.dim(), &cols),
        summands: parts.into_iter().map(|(s, _)| s).collect(),
        status: if split { DecompositionStatus::Decomposed } else { DecompositionStatus::NoSplitFound(trials.max(1)) },
    }
}
