use super::EAModule;
use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx};
use crate::linalg::{jordan_type_nilpotent, JordanType, MatF};

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else { break };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Mixed-radix index of an exponent vector, first coordinate most significant.
fn monomial_index(exps: &[usize], p: usize) -> usize {
    exps.iter().fold(0, |acc, &e| acc * p + e)
}

/// Matrices of multiplication by `Y_1, …, Y_d` on `F[Y_1..Y_d]/(Y_j^p)` in the
/// lexicographic monomial basis.
fn truncated_multiplications(field: &FieldCtx, d: usize) -> Vec<MatF> {
    let p = field.p() as usize;
    let dim = p.pow(d as u32);
    (0..d)
        .map(|j| {
            let mut m = MatF::zeros(field, dim, dim);
            let mut exps = vec![0usize; d];
            for col in 0..dim {
                if exps[j] + 1 < p {
                    exps[j] += 1;
                    m.set(monomial_index(&exps, p), col, Fel::ONE);
                    exps[j] -= 1;
                }
                // advance exps in lex order
                for pos in (0..d).rev() {
                    exps[pos] += 1;
                    if exps[pos] < p {
                        break;
                    }
                    exps[pos] = 0;
                }
            }
            m
        })
        .collect()
}

/// Reduce integer exponent vectors into `F_p` and check independence.
fn prime_field_rows(p: u32, vectors: &[Vec<u32>], k: usize) -> Result<MatF> {
    let fp = FieldCtx::prime(p as u64)?;
    if vectors.iter().any(|v| v.len() != k) {
        return Err(Error::Shape(format!("exponent vectors must have length {k}")));
    }
    let m = MatF::from_fn(&fp, vectors.len(), k, |r, c| fp.from_int(vectors[r][c] as i64));
    if m.rank() < vectors.len() {
        return Err(Error::DependentGenerators);
    }
    Ok(m)
}

impl EAModule {
    /// The trivial module `F` (dimension 1, all `X_i = 0`).
    pub fn trivial(field: &FieldCtx, k: usize) -> Self {
        EAModule::new_unchecked(field, 1, vec![MatF::zeros(field, 1, 1); k])
    }

    /// The zero module.
    pub fn zero(field: &FieldCtx, k: usize) -> Self {
        EAModule::new_unchecked(field, 0, vec![MatF::zeros(field, 0, 0); k])
    }

    /// The regular module `F E`, basis the monomials `X^a` in lexicographic order.
    pub fn regular(field: &FieldCtx, k: usize) -> Self {
        let gens = truncated_multiplications(field, k);
        EAModule::new_unchecked(field, field.p().pow(k as u32) as usize, gens)
    }

    /// The three-dimensional module `M_{λ,μ}` for `E = C_p × C_p`:
    /// `X_1` has subdiagonal ones, `X_2` has subdiagonal `λ` and corner `μ`.
    pub fn benson(field: &FieldCtx, lambda: Fel, mu: Fel) -> Result<Self> {
        if field.p() < 3 {
            return Err(Error::BadParams("M_{λ,μ} needs p ≥ 3".into()));
        }
        let mut x1 = MatF::zeros(field, 3, 3);
        x1.set(1, 0, Fel::ONE);
        x1.set(2, 1, Fel::ONE);
        let mut x2 = MatF::zeros(field, 3, 3);
        x2.set(1, 0, lambda);
        x2.set(2, 1, lambda);
        x2.set(2, 0, mu);
        EAModule::new(field, 3, vec![x1, x2])
    }

    /// Module with rank variety `span(W)`: the truncated polynomial algebra on
    /// a basis `K` of the annihilator of `W`, with `X_i` acting as
    /// multiplication by `Σ_j K_j[i] Y_j`. Dimension `p^{k − r}`.
    pub fn linear_variety_module(field: &FieldCtx, k: usize, w: &[Vec<Fel>]) -> Result<Self> {
        if w.iter().any(|v| v.len() != k) {
            return Err(Error::Shape(format!("spanning vectors must have length {k}")));
        }
        let wm = if w.is_empty() { MatF::zeros(field, 0, k) } else { MatF::from_rows(field, w)? };
        if wm.rank() < w.len() {
            return Err(Error::DependentGenerators);
        }
        let annihilator = wm.kernel_basis();
        let ys = truncated_multiplications(field, annihilator.len());
        let dim = field.p().pow(annihilator.len() as u32) as usize;
        let gens = (0..k)
            .map(|i| {
                let mut x = MatF::zeros(field, dim, dim);
                for (kv, y) in annihilator.iter().zip(&ys) {
                    x.add_scaled(kv[i], y).unwrap();
                }
                x
            })
            .collect();
        Ok(EAModule::new_unchecked(field, dim, gens))
    }

    fn check_compatible(&self, other: &EAModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MismatchedContext("modules over different fields".into()));
        }
        if self.k() != other.k() {
            return Err(Error::MismatchedContext(format!("group ranks {} and {}", self.k(), other.k())));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &EAModule) -> Result<EAModule> {
        self.check_compatible(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<_>>()?;
        Ok(EAModule::new_unchecked(&self.field, self.n + other.n, gens))
    }

    /// Diagonal action: `X_i ↦ u_i ⊗ u'_i − I`.
    pub fn tensor(&self, other: &EAModule) -> Result<EAModule> {
        self.check_compatible(other)?;
        let n = self.n * other.n;
        let id = MatF::identity(&self.field, n);
        let gens = (0..self.k())
            .map(|i| self.group_matrix(i).kron(&other.group_matrix(i))?.sub(&id))
            .collect::<Result<_>>()?;
        Ok(EAModule::new_unchecked(&self.field, n, gens))
    }

    /// Contragredient module: `X_i ↦ (u_i^{-1})ᵀ − I`.
    pub fn dual(&self) -> EAModule {
        let id = MatF::identity(&self.field, self.n);
        let p = self.p() as u64;
        let gens = self
            .gens
            .iter()
            .map(|x| {
                // u^{-1} = Σ_{j<p} (−X)^j
                let neg = x.scale(self.field.from_int(-1));
                let mut inv = id.clone();
                let mut term = id.clone();
                for _ in 1..p {
                    term = term.mul(&neg).unwrap();
                    inv = inv.add(&term).unwrap();
                }
                inv.transpose().sub(&id).unwrap()
            })
            .collect();
        EAModule::new_unchecked(&self.field, self.n, gens)
    }

    /// Exterior power `Λ^r`, basis the `r`-subsets of the original basis in
    /// lexicographic order; `X_i ↦ Λ^r(u_i) − I`.
    pub fn wedge(&self, r: usize) -> Result<EAModule> {
        if r > self.n {
            return Err(Error::BadParams(format!("exterior power {r} exceeds dimension {}", self.n)));
        }
        let basis = subsets(self.n, r);
        let dim = basis.len();
        let id = MatF::identity(&self.field, dim);
        let gens = (0..self.k())
            .map(|i| {
                let u = self.group_matrix(i);
                let lu = MatF::from_fn(&self.field, dim, dim, |a, b| u.submatrix(&basis[a], &basis[b]).det());
                lu.sub(&id)
            })
            .collect::<Result<_>>()?;
        Ok(EAModule::new_unchecked(&self.field, dim, gens))
    }

    /// Restriction to the subgroup generated by `Π_i g_i^{w_{ji}}`, one per
    /// exponent vector; generator `j` becomes `Π_i u_i^{w_{ji}} − I`.
    pub fn restrict_to_subgroup(&self, w: &[Vec<u32>]) -> Result<EAModule> {
        prime_field_rows(self.p(), w, self.k())?;
        let p = self.p();
        let id = MatF::identity(&self.field, self.n);
        let us: Vec<MatF> = (0..self.k()).map(|i| self.group_matrix(i)).collect();
        let gens = w
            .iter()
            .map(|row| {
                let mut g = id.clone();
                for (u, &e) in us.iter().zip(row) {
                    if e % p != 0 {
                        g = g.mul(&u.pow((e % p) as u64)?)?;
                    }
                }
                g.sub(&id)
            })
            .collect::<Result<_>>()?;
        Ok(EAModule::new_unchecked(&self.field, self.n, gens))
    }

    /// Induction from the subgroup `E′ = ⟨f_1, …, f_s⟩` with
    /// `f_j = Π_i g_i^{embed[j][i]}` (`self` is an `F E′` module) to the rank-`k`
    /// group `E`. Realized as `F E″ ⊗ M` with `E = E′ × E″`, where `E″` is
    /// generated by the standard generators completing `embed` to a basis.
    pub fn induce(&self, k: usize, embed: &[Vec<u32>]) -> Result<EAModule> {
        if embed.len() != self.k() {
            return Err(Error::Shape(format!(
                "{} embedding vectors for a module of rank {}",
                embed.len(),
                self.k()
            )));
        }
        let p = self.p();
        let fp = FieldCtx::prime(p as u64)?;
        let mut basis = prime_field_rows(p, embed, k)?;
        let mut complement = Vec::new();
        for j in 0..k {
            let mut e = MatF::zeros(&fp, 1, k);
            e.set(0, j, Fel::ONE);
            let trial = MatF::from_fn(&fp, basis.rows() + 1, k, |r, c| {
                if r < basis.rows() {
                    basis.get(r, c)
                } else {
                    e.get(0, c)
                }
            });
            if trial.rank() > basis.rows() {
                basis = trial;
                complement.push(j);
            }
        }
        let s = self.k();
        let t = complement.len();
        let reg = EAModule::regular(&self.field, t);
        let reg_us: Vec<MatF> = (0..t).map(|l| reg.group_matrix(l)).collect();
        let us: Vec<MatF> = (0..s).map(|j| self.group_matrix(j)).collect();
        let basis_t = basis.transpose();
        let n = reg.dim() * self.n;
        let id = MatF::identity(&self.field, n);
        let gens = (0..k)
            .map(|i| {
                let mut target = vec![Fel::ZERO; k];
                target[i] = Fel::ONE;
                let c = basis_t.solve(&target).expect("basis spans F_p^k");
                let mut left = MatF::identity(&self.field, reg.dim());
                for (l, u) in reg_us.iter().enumerate() {
                    left = left.mul(&u.pow(c[s + l].0 as u64)?)?;
                }
                let mut right = MatF::identity(&self.field, self.n);
                for (j, u) in us.iter().enumerate() {
                    right = right.mul(&u.pow(c[j].0 as u64)?)?;
                }
                left.kron(&right)?.sub(&id)
            })
            .collect::<Result<_>>()?;
        Ok(EAModule::new_unchecked(&self.field, n, gens))
    }

    /// The same module with scalars extended along `self.field ⊆ target`.
    pub fn change_field(&self, target: &FieldCtx) -> Result<EAModule> {
        let emb = self.field.embedding_into(target)?;
        let gens = self
            .gens
            .iter()
            .map(|x| MatF::from_fn(target, self.n, self.n, |r, c| emb.apply(x.get(r, c))))
            .collect();
        Ok(EAModule::new_unchecked(target, self.n, gens))
    }
}

/// Jordan type of `Λ^r` applied to a single nilpotent operator of type `t`.
pub fn wedge_jordan(t: &JordanType, r: usize, p: u32) -> Result<JordanType> {
    let fp = FieldCtx::prime(p as u64)?;
    if t.p != p as usize {
        return Err(Error::BadParams(format!("type has cap {} but p = {p}", t.p)));
    }
    let n = t.dim();
    let m = EAModule::new_unchecked(&fp, n, vec![t.canonical_matrix(&fp)]);
    let w = m.wedge(r)?;
    jordan_type_nilpotent(&w.gens[0], p as usize)
}
