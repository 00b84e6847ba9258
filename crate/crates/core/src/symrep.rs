//! The natural simple module `D(1) = D^{(kp−1,1)}` of the symmetric group on
//! `kp` letters, restricted to the elementary abelian subgroup `E_k` generated
//! by the disjoint p-cycles `g_i = ((i−1)p+1, …, ip)`, together with its
//! exterior powers `D(r)` and the polynomial
//! `p_k = Σ_i Π_{j≠i} x_j^{p−1}`.
//!
//! Two models of `D(1)` are built independently. The permutation model comes
//! from the tabloid basis `ē_3, …, ē_{kp}`. The block model is assembled
//! from the chain basis `B = B_1 ∪ … ∪ B_k`. [`basis_change_check`] ties them
//! together.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{is_prime, Fel, FieldCtx};
use crate::linalg::MatF;
use crate::modrep::{EAModule, Point};
use crate::rng;

/// Largest number of points examined by [`rank_lemma_check`].
pub const RANK_LEMMA_CAP: usize = 5000;
const RANK_LEMMA_SEED: u64 = 0x5eed_0001;

/// Parameters of `E_k ≤ S_{kp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymContext {
    p: u32,
    k: usize,
}

impl SymContext {
    pub fn new(p: u32, k: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if p < 3 {
            return Err(Error::BadParams("p = 2 is not supported; need an odd prime".into()));
        }
        if k < 1 {
            return Err(Error::BadParams("rank k must be at least 1".into()));
        }
        Ok(SymContext { p, k })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of letters `kp`.
    pub fn n(&self) -> usize {
        self.k * self.p as usize
    }

    /// Dimension of `D(1)`, `kp − 2`.
    pub fn dim_d1(&self) -> usize {
        self.n() - 2
    }

    /// Image of the letter `j` (1-based) under `g_i` (1-based).
    fn cycle_image(&self, i: usize, j: usize) -> usize {
        let p = self.p as usize;
        let lo = (i - 1) * p + 1;
        if j < lo || j >= lo + p {
            return j;
        }
        lo + (j - lo + 1) % p
    }

    fn check_field(&self, field: &FieldCtx) -> Result<()> {
        if field.p() != self.p {
            return Err(Error::FieldMismatch(format!("field characteristic {} but p = {}", field.p(), self.p)));
        }
        Ok(())
    }

    /// Coordinates of `ē_j` in the basis `ē_3, …, ē_{kp}`, using `ē_1 = 0` and
    /// `ē_2 = −Σ_{j≥3} ē_j`.
    fn ebar(&self, field: &FieldCtx, j: usize) -> Vec<Fel> {
        let dim = self.dim_d1();
        match j {
            1 => vec![Fel::ZERO; dim],
            2 => vec![field.from_int(-1); dim],
            _ => {
                let mut v = vec![Fel::ZERO; dim];
                v[j - 3] = Fel::ONE;
                v
            }
        }
    }
}

fn add_scaled(field: &FieldCtx, acc: &mut [Fel], c: i64, v: &[Fel]) {
    let c = field.from_int(c);
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = field.add(*a, field.mul(c, b));
    }
}

fn binomial(n: usize, r: usize) -> i64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `D(1)↾E_k` from the tabloid action `g ē_j = ē_{g(j)} − ē_{g(1)}`.
pub fn perm_model_d1(ctx: &SymContext, field: &FieldCtx) -> Result<EAModule> {
    ctx.check_field(field)?;
    let dim = ctx.dim_d1();
    let id = MatF::identity(field, dim);
    let gens = (1..=ctx.k)
        .map(|i| {
            let cols: Vec<Vec<Fel>> = (3..=ctx.n())
                .map(|j| {
                    let mut v = ctx.ebar(field, ctx.cycle_image(i, j));
                    add_scaled(field, &mut v, -1, &ctx.ebar(field, ctx.cycle_image(i, 1)));
                    v
                })
                .collect();
            MatF::from_columns(field, dim, &cols).sub(&id).unwrap()
        })
        .collect();
    EAModule::new(field, dim, gens)
}

/// Position of `X_1^r b_1` in the chain basis.
fn pos_b1(r: usize) -> usize {
    r
}

/// Position of `X_i^r b_i` (`i ≥ 2`) in the chain basis.
fn pos_bi(ctx: &SymContext, i: usize, r: usize) -> usize {
    let p = ctx.p as usize;
    (p - 2) + (i - 2) * p + r
}

/// `D(1)↾E_k` assembled directly in the chain basis `B`:
/// `X_1` walks `b_1, …, X_1^{p−3} b_1` and sends the last vector to
/// `Σ_{i≥2} X_i^{p−1} b_i`; `X_1 b_i = b_1`; `X_i` walks its own chain and
/// kills everything else.
pub fn block_model_d1(ctx: &SymContext, field: &FieldCtx) -> Result<EAModule> {
    ctx.check_field(field)?;
    let p = ctx.p as usize;
    let dim = ctx.dim_d1();
    let mut x1 = MatF::zeros(field, dim, dim);
    for r in 0..p - 3 {
        x1.set(pos_b1(r + 1), pos_b1(r), Fel::ONE);
    }
    for i in 2..=ctx.k {
        x1.set(pos_bi(ctx, i, p - 1), pos_b1(p - 3), Fel::ONE);
        x1.set(pos_b1(0), pos_bi(ctx, i, 0), Fel::ONE);
    }
    let mut gens = vec![x1];
    for i in 2..=ctx.k {
        let mut xi = MatF::zeros(field, dim, dim);
        for r in 0..p - 1 {
            xi.set(pos_bi(ctx, i, r + 1), pos_bi(ctx, i, r), Fel::ONE);
        }
        gens.push(xi);
    }
    EAModule::new(field, dim, gens)
}

/// Which closed form to use for the top vector `X_1^{p−3} b_1` of `B_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainFormula {
    /// `Σ_{s=1}^{p−2} s ē_{s+2}`.
    Exact,
    /// `Σ_{s=1}^{p−2} s ē_{s+2} + Σ_{s=p+1}^{kp} ē_s`. Differs from `Exact`
    /// by the orbit sums of `g_2, …, g_k`, which are nonzero in `D(1)` when
    /// `k ≥ 2`.
    WithOrbitTail,
}

/// Columns: the chain basis `B` written in the `ē` basis via the closed
/// formulas for `X_1^r b_1` and `X_i^r b_i`.
pub fn chain_basis_matrix(ctx: &SymContext, field: &FieldCtx, variant: ChainFormula) -> MatF {
    let p = ctx.p as usize;
    let n = ctx.n();
    let dim = ctx.dim_d1();
    let mut cols = vec![vec![Fel::ZERO; dim]; dim];
    for r in 0..p - 3 {
        let v = &mut cols[pos_b1(r)];
        for s in 1..=r + 2 {
            let c = sign((r + 3) as i64 - s as i64) * binomial(r + 1, s - 1);
            add_scaled(field, v, c, &ctx.ebar(field, s + 2));
        }
    }
    // X_1^{p−3} b_1 = Σ_{s=1}^{p−2} s ē_{s+2}; at p = 3 this is b_1 = ē_3
    let v = &mut cols[pos_b1(p - 3)];
    for s in 1..=p - 2 {
        add_scaled(field, v, s as i64, &ctx.ebar(field, s + 2));
    }
    if variant == ChainFormula::WithOrbitTail {
        for s in p + 1..=n {
            add_scaled(field, v, 1, &ctx.ebar(field, s));
        }
    }
    for i in 2..=ctx.k {
        let e_is = |s: usize| ctx.ebar(field, (i - 1) * p + s);
        let v = &mut cols[pos_bi(ctx, i, 0)];
        add_scaled(field, v, 1, &e_is(1));
        add_scaled(field, v, -1, &ctx.ebar(field, 3));
        for r in 1..p {
            let v = &mut cols[pos_bi(ctx, i, r)];
            for s in 1..=r + 1 {
                let c = sign((r + 1) as i64 - s as i64) * binomial(r, s - 1);
                add_scaled(field, v, c, &e_is(s));
            }
        }
    }
    MatF::from_columns(field, dim, &cols)
}

/// Conjugate the permutation model by the chain-basis matrix and compare with
/// the block model entry by entry.
pub fn basis_change_check(ctx: &SymContext, field: &FieldCtx) -> Result<bool> {
    basis_change_check_with(ctx, field, ChainFormula::Exact)
}

pub fn basis_change_check_with(ctx: &SymContext, field: &FieldCtx, variant: ChainFormula) -> Result<bool> {
    let perm = perm_model_d1(ctx, field)?;
    let block = block_model_d1(ctx, field)?;
    let basis = chain_basis_matrix(ctx, field, variant);
    let inv = basis.inverse().ok_or(Error::SingularBasis)?;
    for (x, y) in perm.gens().iter().zip(block.gens()) {
        if &inv.mul(x)?.mul(&basis)? != y {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `D(r) = Λ^r D(1)`, restricted to `E_k`.
pub fn d_r(ctx: &SymContext, field: &FieldCtx, r: usize) -> Result<EAModule> {
    if r > ctx.dim_d1() {
        return Err(Error::BadParams(format!("r = {r} exceeds dim D(1) = {}", ctx.dim_d1())));
    }
    block_model_d1(ctx, field)?.wedge(r)
}

/// The polynomial `p_k(x_1, …, x_k) = Σ_i Π_{j≠i} x_j^{p−1}`; `p_1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PkPoly {
    pub p: u32,
    pub k: usize,
}

impl PkPoly {
    pub fn new(p: u32, k: usize) -> Self {
        PkPoly { p, k }
    }

    /// Total degree `(k−1)(p−1)`.
    pub fn degree(&self) -> usize {
        (self.k - 1) * (self.p as usize - 1)
    }

    pub fn eval(&self, field: &FieldCtx, alpha: &Point) -> Result<Fel> {
        if alpha.k() != self.k {
            return Err(Error::Shape(format!("p_{} evaluated at a point with {} coordinates", self.k, alpha.k())));
        }
        if field.p() != self.p {
            return Err(Error::FieldMismatch(format!("p_k for p = {} over characteristic {}", self.p, field.p())));
        }
        let powers: Vec<Fel> = alpha.coords.iter().map(|&a| field.pow(a, self.p as u64 - 1)).collect();
        let mut total = Fel::ZERO;
        for i in 0..self.k {
            let term = (0..self.k).filter(|&j| j != i).fold(Fel::ONE, |acc, j| field.mul(acc, powers[j]));
            total = field.add(total, term);
        }
        Ok(total)
    }
}

/// `p_k(α)`.
pub fn pk_eval(poly: &PkPoly, field: &FieldCtx, alpha: &Point) -> Result<Fel> {
    poly.eval(field, alpha)
}

/// Outcome of one clause of the rank lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseReport {
    pub clause: String,
    pub points_checked: usize,
    /// Failing points, coordinates rendered in the `--alpha` grammar.
    pub failures: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankLemmaReport {
    pub p: u32,
    pub k: usize,
    pub field: String,
    pub sampled: bool,
    pub clauses: Vec<ClauseReport>,
}

impl RankLemmaReport {
    pub fn failures(&self) -> usize {
        self.clauses.iter().map(|c| c.failures.len()).sum()
    }
}

/// The `i`-th nonzero affine point over `field` in base-`q` counting order.
fn affine_point(field: &FieldCtx, k: usize, mut index: u64) -> Point {
    let q = field.q() as u64;
    let mut coords = vec![Fel::ZERO; k];
    for c in coords.iter_mut().rev() {
        *c = Fel((index % q) as u32);
        index /= q;
    }
    Point::new(coords)
}

/// Check the rank identities for `S = [X_α]_B` at every nonzero `α` over
/// `field` (or a seeded sample of [`RANK_LEMMA_CAP`] points):
///
/// * (i) `rank S ≤ (k−1)(p−1)+p−3`, with equality iff every `α_i ≠ 0`;
/// * (ii) if every `α_i ≠ 0`: `rank S^{p−3} = 3k−2` and `rank S^{p−2} = 2k−2`;
/// * (iii) if every `α_i ≠ 0`: `rank S^{p−1} ≤ k−1`, with equality iff
///   `p_k(α) ≠ 0`.
pub fn rank_lemma_check(ctx: &SymContext, field: &FieldCtx) -> Result<RankLemmaReport> {
    if ctx.k < 2 {
        return Err(Error::BadParams("the rank identities need k ≥ 2".into()));
    }
    let module = block_model_d1(ctx, field)?;
    let (p, k) = (ctx.p as usize, ctx.k);
    let total = (field.q() as u64).checked_pow(k as u32).map(|t| t - 1);
    let indices: Vec<u64> = match total {
        Some(t) if t <= RANK_LEMMA_CAP as u64 => (1..=t).collect(),
        _ => {
            let mut rng = rng::stream(RANK_LEMMA_SEED, 0);
            let q = field.q();
            let mut out = Vec::with_capacity(RANK_LEMMA_CAP);
            while out.len() < RANK_LEMMA_CAP {
                let pt = Point::new((0..k).map(|_| Fel(rng.gen_range(0..q))).collect());
                if !pt.is_zero() {
                    // encode back into the counting index
                    out.push(pt.coords.iter().fold(0u64, |acc, c| acc * q as u64 + c.0 as u64));
                }
            }
            out
        }
    };
    let sampled = total.is_none_or(|t| t > RANK_LEMMA_CAP as u64);
    let pk = PkPoly::new(ctx.p, k);
    let bound = (k - 1) * (p - 1) + p - 3;

    // (clause index, point) for every failure, in point order
    let results: Vec<(Point, [bool; 4], bool)> = indices
        .par_iter()
        .map(|&idx| {
            let alpha = affine_point(field, k, idx);
            let s = module.x_alpha(&alpha).expect("nonzero point");
            let all_nonzero = alpha.coords.iter().all(|c| !c.is_zero());
            let mut ranks = vec![module.dim()];
            let mut power = MatF::identity(field, module.dim());
            for _ in 1..p {
                power = power.mul(&s).unwrap();
                ranks.push(power.rank());
            }
            let clause_i = ranks[1] <= bound && ((ranks[1] == bound) == all_nonzero);
            let clause_ii_a = !all_nonzero || ranks[p - 3] == 3 * k - 2;
            let clause_ii_b = !all_nonzero || ranks[p - 2] == 2 * k - 2;
            let pk_nonzero = !pk.eval(field, &alpha).unwrap().is_zero();
            let clause_iii = !all_nonzero || (ranks[p - 1] < k && ((ranks[p - 1] == k - 1) == pk_nonzero));
            (alpha, [clause_i, clause_ii_a, clause_ii_b, clause_iii], all_nonzero)
        })
        .collect();

    let names = [
        "(i) rank S bound, equality iff all coordinates nonzero",
        "(ii) rank S^(p-3) = 3k-2",
        "(ii) rank S^(p-2) = 2k-2",
        "(iii) rank S^(p-1) = k-1 iff p_k != 0",
    ];
    let clauses = names
        .iter()
        .enumerate()
        .map(|(c, name)| {
            let relevant = results.iter().filter(|(_, _, nz)| c == 0 || *nz);
            let points_checked = relevant.clone().count();
            let failures = relevant
                .filter(|(_, ok, _)| !ok[c])
                .map(|(a, _, _)| a.coords.iter().map(|&x| field.format(x)).collect())
                .collect();
            ClauseReport { clause: name.to_string(), points_checked, failures }
        })
        .collect();
    Ok(RankLemmaReport {
        p: ctx.p,
        k,
        field: format!("F_{}", field.q()),
        sampled,
        clauses,
    })
}
