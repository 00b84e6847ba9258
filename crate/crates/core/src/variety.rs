//! Point sets over a fixed finite field: projective enumeration, rank-variety
//! sweeps, zero sets of `p_k`, generic and maximal Jordan types, the wreath
//! action on coordinates, dimension estimates and base-subspace witnesses.
//!
//! All sweeps run in parallel and aggregate in enumeration order.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx, FieldSpec};
use crate::linalg::{Dominance, JordanType, MatF};
use crate::modrep::{EAModule, Point};
use crate::rng;
use crate::symrep::PkPoly;

/// Upper bound on `q^k` for any sweep.
pub const SWEEP_LIMIT: u64 = 10_000_000;

fn check_sweep(field: &FieldCtx, k: usize) -> Result<u64> {
    let q = field.q() as u64;
    match q.checked_pow(k as u32) {
        Some(t) if t <= SWEEP_LIMIT => Ok(t),
        _ => Err(Error::TooLarge(format!("{q}^{k} points exceeds the sweep limit of {SWEEP_LIMIT}"))),
    }
}

/// All projective points of `P^{k−1}(F_q)`, normalized (first nonzero
/// coordinate 1), in lexicographic order.
pub fn enumerate_projective(field: &FieldCtx, k: usize) -> Result<Vec<Point>> {
    check_sweep(field, k)?;
    let q = field.q() as u64;
    let mut out = Vec::new();
    for lead in (0..k).rev() {
        let tail = k - lead - 1;
        for idx in 0..q.pow(tail as u32) {
            let mut coords = vec![Fel::ZERO; k];
            coords[lead] = Fel::ONE;
            let mut rest = idx;
            for c in coords[lead + 1..].iter_mut().rev() {
                *c = Fel((rest % q) as u32);
                rest /= q;
            }
            out.push(Point { coords, normalized: true });
        }
    }
    Ok(out)
}

/// Set comparison of a rank variety against a target point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equal,
    /// The variety is strictly contained in the target.
    ProperSubset,
    /// The variety strictly contains the target.
    Superset,
    Incomparable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Equal => "Equal",
            Verdict::ProperSubset => "ProperSubset",
            Verdict::Superset => "Superset",
            Verdict::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// Outcome of [`compare_sets`], with witnesses for every difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    /// In the variety but not in the target.
    pub only_in_variety: Vec<Point>,
    /// In the target but not in the variety.
    pub only_in_target: Vec<Point>,
}

/// One classified point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRecord {
    pub point: Point,
    pub jordan: JordanType,
    pub free: bool,
}

/// Every projective point over the module's field, with its Jordan type and
/// whether the module is free on the corresponding shifted subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSetReport {
    pub field: FieldCtx,
    pub k: usize,
    pub points: Vec<PointRecord>,
    pub target: Option<String>,
    pub comparison: Option<Comparison>,
}

impl PointSetReport {
    /// Projective points of the rank variety (non-free points).
    pub fn variety(&self) -> Vec<Point> {
        self.points.iter().filter(|r| !r.free).map(|r| r.point.clone()).collect()
    }

    /// Number of affine points of the variety, origin included.
    pub fn affine_count(&self) -> u64 {
        1 + (self.field.q() as u64 - 1) * self.variety().len() as u64
    }

    /// Attach a comparison against `target` under the given label.
    pub fn with_target(mut self, label: &str, target: &[Point]) -> Self {
        self.comparison = Some(compare_sets(&self, target));
        self.target = Some(label.to_string());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fmt_point = |p: &Point| -> Vec<String> { p.coords.iter().map(|&c| self.field.format(c)).collect() };
        let points: Vec<serde_json::Value> = self
            .points
            .iter()
            .map(|r| {
                serde_json::json!({
                    "coords": fmt_point(&r.point),
                    "type": r.jordan.mult,
                    "free": r.free,
                })
            })
            .collect();
        let mut obj = serde_json::json!({
            "field": self.field.spec(),
            "k": self.k,
            "points": points,
            "variety_size": self.variety().len(),
            "verdict": self.comparison.as_ref().map(|c| c.verdict.to_string()),
        });
        if let (Some(label), Some(c)) = (&self.target, &self.comparison) {
            obj["target"] = serde_json::json!(label);
            obj["only_in_variety"] = serde_json::json!(c.only_in_variety.iter().map(fmt_point).collect::<Vec<_>>());
            obj["only_in_target"] = serde_json::json!(c.only_in_target.iter().map(fmt_point).collect::<Vec<_>>());
        }
        obj
    }

    /// One row per point: coordinates, Jordan type, free flag.
    pub fn to_csv_rows(&self) -> Vec<Vec<String>> {
        let mut header: Vec<String> = (1..=self.k).map(|i| format!("a{i}")).collect();
        header.extend(["type".to_string(), "free".to_string()]);
        let mut rows = vec![header];
        for r in &self.points {
            let mut row: Vec<String> = r.point.coords.iter().map(|&c| self.field.format(c)).collect();
            row.push(r.jordan.to_string());
            row.push(r.free.to_string());
            rows.push(row);
        }
        rows
    }
}

impl Serialize for PointSetReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Classify every projective point over `m.field()`.
pub fn variety_points(m: &EAModule) -> Result<PointSetReport> {
    let points = enumerate_projective(m.field(), m.k())?;
    let records = points
        .into_par_iter()
        .map(|point| {
            let jordan = m.point_jordan_type(&point)?;
            let free = m.is_free_at(&point)?;
            Ok(PointRecord { point, jordan, free })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointSetReport { field: m.field().clone(), k: m.k(), points: records, target: None, comparison: None })
}

/// Projective zeros of `p_k` over `field`.
pub fn zero_points(poly: &PkPoly, field: &FieldCtx) -> Result<Vec<Point>> {
    let points = enumerate_projective(field, poly.k)?;
    let keep: Vec<bool> = points
        .par_iter()
        .map(|a| poly.eval(field, a).map(|v| v.is_zero()))
        .collect::<Result<_>>()?;
    Ok(points.into_iter().zip(keep).filter(|(_, z)| *z).map(|(p, _)| p).collect())
}

/// Affine zeros of `p_k` over `field`, origin included.
pub fn affine_zero_count(poly: &PkPoly, field: &FieldCtx) -> Result<u64> {
    let total = check_sweep(field, poly.k)?;
    let q = field.q() as u64;
    (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut coords = vec![Fel::ZERO; poly.k];
            for c in coords.iter_mut().rev() {
                *c = Fel((idx % q) as u32);
                idx /= q;
            }
            poly.eval(field, &Point::new(coords)).map(|v| v.is_zero() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Compare the report's variety with `target` (projective points over the
/// same field, normalized or not).
pub fn compare_sets(report: &PointSetReport, target: &[Point]) -> Comparison {
    compare_point_sets(&report.field, &report.variety(), target)
}

/// Compare two sets of projective points. The verdict describes `a`
/// relative to `b`.
pub fn compare_point_sets(field: &FieldCtx, a: &[Point], b: &[Point]) -> Comparison {
    let norm = |p: &Point| p.normalize(field).expect("nonzero point").coords;
    let v: BTreeSet<Vec<Fel>> = a.iter().map(norm).collect();
    let t: BTreeSet<Vec<Fel>> = b.iter().map(norm).collect();
    let as_points = |s: Vec<&Vec<Fel>>| -> Vec<Point> {
        s.into_iter().map(|c| Point { coords: c.clone(), normalized: true }).collect()
    };
    let only_in_variety = as_points(v.difference(&t).collect());
    let only_in_target = as_points(t.difference(&v).collect());
    let verdict = match (only_in_variety.is_empty(), only_in_target.is_empty()) {
        (true, true) => Verdict::Equal,
        (true, false) => Verdict::ProperSubset,
        (false, true) => Verdict::Superset,
        (false, false) => Verdict::Incomparable,
    };
    Comparison { verdict, only_in_variety, only_in_target }
}

/// Whether sampling singled out a dominance-maximal type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenericStatus {
    Found,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericTypeResult {
    pub status: GenericStatus,
    /// Dominance maximum of the observed types (absent if inconclusive).
    pub jordan: Option<JordanType>,
    /// Number of samples attaining `jordan`.
    pub attained: usize,
    pub samples: usize,
    /// Extension degree of the field the samples were drawn from.
    pub ext: u32,
    /// Distinct observed types, each with its count.
    pub observed: Vec<(JordanType, usize)>,
}

fn dominance_max(types: &[(JordanType, usize)]) -> Option<&(JordanType, usize)> {
    types.iter().find(|(t, _)| {
        types
            .iter()
            .all(|(o, _)| matches!(t.dominance_compare(o), Ok(Dominance::Greater | Dominance::Equal)))
    })
}

fn sample_types(m: &EAModule, ext: u32, trials: usize, seed: u64) -> Result<Vec<(JordanType, usize)>> {
    let target = FieldCtx::new(m.p() as u64, ext)?;
    let big = m.change_field(&target)?;
    let q = target.q();
    let types: Vec<JordanType> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, i as u64);
            let coords = (0..m.k()).map(|_| Fel(rng.gen_range(1..q))).collect();
            big.point_jordan_type(&Point::new(coords))
        })
        .collect::<Result<_>>()?;
    let mut counts: Vec<(JordanType, usize)> = Vec::new();
    for t in types {
        match counts.iter_mut().find(|(o, _)| *o == t) {
            Some((_, c)) => *c += 1,
            None => counts.push((t, 1)),
        }
    }
    counts.sort_by_key(|c| std::cmp::Reverse(c.0.partition()));
    Ok(counts)
}

/// Estimate the generic Jordan type from `trials` points with nonzero
/// coordinates in `F_{p^ext}`. If the observed types have no dominance
/// maximum, retry once over `F_{p^{ext+2}}`.
pub fn generic_type(m: &EAModule, ext: u32, trials: usize, seed: u64) -> Result<GenericTypeResult> {
    if trials == 0 {
        return Err(Error::BadParams("at least one trial is required".into()));
    }
    if m.k() == 0 {
        return Err(Error::BadParams("generic type needs k ≥ 1".into()));
    }
    let mut ext_used = ext;
    let mut observed = sample_types(m, ext, trials, seed)?;
    if dominance_max(&observed).is_none() && ext + 2 <= 8 {
        ext_used = ext + 2;
        observed = sample_types(m, ext_used, trials, rng::derive(seed, 1))?;
    }
    let best = dominance_max(&observed).cloned();
    Ok(GenericTypeResult {
        status: if best.is_some() { GenericStatus::Found } else { GenericStatus::Inconclusive },
        attained: best.as_ref().map_or(0, |b| b.1),
        jordan: best.map(|b| b.0),
        samples: trials,
        ext: ext_used,
        observed,
    })
}

/// Does `α` attain the given generic type?
pub fn in_max_jordan_set(m: &EAModule, alpha: &Point, generic: &JordanType) -> Result<bool> {
    Ok(&m.point_jordan_type(alpha)? == generic)
}

/// The action of `F_p^× ≀ S_k`: scale coordinate `i` by `gamma[i]`, then move
/// it to slot `sigma[i]` (0-based). The result is not renormalized.
pub fn wreath_act(field: &FieldCtx, gamma: &[Fel], sigma: &[usize], alpha: &Point) -> Result<Point> {
    let k = alpha.k();
    if alpha.is_zero() {
        return Err(Error::ZeroPoint);
    }
    if gamma.len() != k || sigma.len() != k {
        return Err(Error::Shape(format!("wreath element must have {k} components")));
    }
    if gamma.iter().any(|&g| g.is_zero() || !field.is_prime_subfield(g)) {
        return Err(Error::BadParams("scalars must lie in F_p^×".into()));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s >= k || std::mem::replace(&mut seen[s], true) {
            return Err(Error::BadParams("sigma is not a permutation".into()));
        }
    }
    let mut out = vec![Fel::ZERO; k];
    for i in 0..k {
        out[sigma[i]] = field.mul(gamma[i], alpha.coords[i]);
    }
    Ok(Point::new(out))
}

/// Generators of `F_p^× ≀ S_k`: a primitive root of `F_p` in the first slot,
/// and the adjacent transpositions.
pub fn wreath_generators(field: &FieldCtx, k: usize) -> Vec<(Vec<Fel>, Vec<usize>)> {
    let p = field.p() as u64;
    let primitive = (1..p)
        .find(|&g| (1..p - 1).all(|e| field.pow(field.from_int(g as i64), e) != Fel::ONE))
        .unwrap_or(1);
    let ident: Vec<usize> = (0..k).collect();
    let mut gens = Vec::new();
    let mut gamma = vec![Fel::ONE; k];
    gamma[0] = field.from_int(primitive as i64);
    gens.push((gamma, ident.clone()));
    for i in 0..k.saturating_sub(1) {
        let mut sigma = ident.clone();
        sigma.swap(i, i + 1);
        gens.push((vec![Fel::ONE; k], sigma));
    }
    gens
}

/// `round(ln(N_{2m} / N_m) / ln(p^m))`, where `N_m` counts affine points over
/// `F_{p^m}`. Valid when the variety's components are defined over `F_{p^m}`.
pub fn dimension_estimate(n_m: u64, n_2m: u64, p: u32, m: u32) -> Result<u32> {
    if n_m == 0 {
        return Err(Error::BadParams("N_m must be positive".into()));
    }
    let ratio = (n_2m as f64 / n_m as f64).ln() / ((p as f64).ln() * m as f64);
    Ok(ratio.round().max(0.0) as u32)
}

/// Nonzero normal vectors of the `F_p`-rational hyperplanes of `F^k`, one per
/// hyperplane (normalized).
fn rational_hyperplanes(p: u32, k: usize) -> Vec<Vec<u32>> {
    let fp = FieldCtx::prime(p as u64).expect("prime");
    enumerate_projective(&fp, k)
        .expect("small")
        .into_iter()
        .map(|pt| pt.coords.iter().map(|c| c.0).collect())
        .collect()
}

/// Every subspace of `F_p^k`, as reduced row echelon bases (rows of
/// integers in `0..p`), ordered by dimension then lexicographically.
pub fn base_subspaces(p: u32, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for r in 0..=k {
        for pivots in crate::modrep::subsets(k, r) {
            // free slots: (row, col) with col > pivot of row and col not a pivot
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pv = &pivots;
                    ((pv[i] + 1)..k).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let count = (p as u64).pow(free.len() as u32);
            for mut idx in 0..count {
                let mut rows = vec![vec![0u32; k]; r];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for &(i, c) in free.iter().rev() {
                    rows[i][c] = (idx % p as u64) as u32;
                    idx /= p as u64;
                }
                out.push(rows);
            }
        }
    }
    out
}

/// Projective points over `field` in the `F`-span of integer vectors.
pub fn span_points(field: &FieldCtx, k: usize, basis: &[Vec<u32>]) -> Result<Vec<Point>> {
    let span: Vec<Vec<Fel>> = basis.iter().map(|v| v.iter().map(|&c| field.from_int(c as i64)).collect()).collect();
    Ok(enumerate_projective(field, k)?.into_iter().filter(|a| in_span(field, &span, a)).collect())
}

/// A variety point lying in no proper base subspace (a subspace spanned by
/// `F_p`-rational vectors), if one exists. Every proper base subspace lies in
/// an `F_p`-rational hyperplane, so membership is tested against those.
pub fn green_witness(m: &EAModule) -> Result<Option<Point>> {
    let field = m.field();
    let k = m.k();
    let hyperplanes = rational_hyperplanes(field.p(), k);
    let points = enumerate_projective(field, k)?;
    if (hyperplanes.len() as u64).saturating_mul(points.len() as u64) > SWEEP_LIMIT {
        return Err(Error::TooLarge("subspace count times point count exceeds the sweep limit".into()));
    }
    let found = points
        .par_iter()
        .map(|alpha| -> Result<bool> {
            if k > 0 && hyperplanes.iter().any(|n| in_hyperplane(field, n, alpha)) {
                return Ok(false);
            }
            m.variety_contains(alpha)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(points.into_iter().zip(found).find(|(_, f)| *f).map(|(p, _)| p))
}

fn in_hyperplane(field: &FieldCtx, normal: &[u32], alpha: &Point) -> bool {
    let dot = normal
        .iter()
        .zip(&alpha.coords)
        .fold(Fel::ZERO, |acc, (&n, &a)| field.add(acc, field.mul(field.from_int(n as i64), a)));
    dot.is_zero()
}

/// Is `alpha` in the `F`-span of the given vectors?
pub fn in_span(field: &FieldCtx, span: &[Vec<Fel>], alpha: &Point) -> bool {
    if span.is_empty() {
        return alpha.is_zero();
    }
    let base = MatF::from_rows(field, span).expect("rectangular");
    let mut rows = span.to_vec();
    rows.push(alpha.coords.clone());
    MatF::from_rows(field, &rows).expect("rectangular").rank() == base.rank()
}

/// For `k = 2`: the direct sum of one linear-variety module per direction, of
/// dimension `d·p`, whose variety is the union of the `d` lines.
pub fn dv_rank2_builder(field: &FieldCtx, directions: &[Point]) -> Result<EAModule> {
    if directions.is_empty() {
        return Err(Error::BadParams("at least one direction is required".into()));
    }
    let mut seen = BTreeSet::new();
    let mut module: Option<EAModule> = None;
    for d in directions {
        if d.k() != 2 {
            return Err(Error::Shape("directions must lie in F^2".into()));
        }
        let norm = d.normalize(field)?;
        if !seen.insert(norm.coords.clone()) {
            return Err(Error::DuplicateDirection(d.format(field)));
        }
        let line = EAModule::linear_variety_module(field, 2, &[norm.coords])?;
        module = Some(match module {
            None => line,
            Some(acc) => acc.direct_sum(&line)?,
        });
    }
    Ok(module.expect("nonempty"))
}

/// Field description used in reports.
pub fn field_spec(field: &FieldCtx) -> FieldSpec {
    field.spec()
}
