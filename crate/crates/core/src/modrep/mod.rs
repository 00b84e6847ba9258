//! Modules for the group algebra `F E` of an elementary abelian p-group
//! `E = ⟨g_1, …, g_k⟩`, stored as commuting nilpotent matrices
//! `X_i = g_i − 1`.
//!
//! Constructions that are functorial only on group elements (tensor, dual,
//! exterior powers, restriction, induction) go through `u_i = I + X_i`.

mod build;
mod endo;

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx};
use crate::linalg::{jordan_type_nilpotent, JordanType, MatF};

pub use build::{subsets, wedge_jordan};
pub use endo::{endomorphism_basis, fitting_decompose, minimal_polynomial, Decomposition, DecompositionStatus};

/// A finite-dimensional `F E` module for `E ≅ (C_p)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EAModule {
    field: FieldCtx,
    n: usize,
    gens: Vec<MatF>,
}

/// An affine point `α ∈ F^k`, optionally normalized projectively (first
/// nonzero coordinate equal to 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub coords: Vec<Fel>,
    pub normalized: bool,
}

impl Point {
    pub fn new(coords: Vec<Fel>) -> Self {
        Point { coords, normalized: false }
    }

    pub fn from_ints(field: &FieldCtx, coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Projective representative; `ZeroPoint` for the origin.
    pub fn normalize(&self, field: &FieldCtx) -> Result<Point> {
        let lead = *self.coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = field.inv(lead).unwrap();
        Ok(Point {
            coords: self.coords.iter().map(|&c| field.mul(c, inv)).collect(),
            normalized: true,
        })
    }

    pub fn format(&self, field: &FieldCtx) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| field.format(c)).collect();
        format!("({})", parts.join(","))
    }
}

impl EAModule {
    /// Module of dimension `n` with the given generators; validated.
    pub fn new(field: &FieldCtx, n: usize, gens: Vec<MatF>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.field() != field {
                return Err(Error::MismatchedContext(format!("generator X_{} over another field", i + 1)));
            }
            if g.rows() != n || g.cols() != n {
                return Err(Error::Shape(format!(
                    "generator X_{} is {}x{}, expected {n}x{n}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let m = EAModule { field: field.clone(), n, gens };
        m.validate()?;
        Ok(m)
    }

    /// Construction helper for generators that are correct by construction.
    pub(crate) fn new_unchecked(field: &FieldCtx, n: usize, gens: Vec<MatF>) -> Self {
        debug_assert!(gens.iter().all(|g| g.rows() == n && g.cols() == n));
        EAModule { field: field.clone(), n, gens }
    }

    /// Check that the generators commute pairwise and satisfy `X_i^p = 0`.
    pub fn validate(&self) -> Result<()> {
        let p = self.p() as u64;
        for (i, x) in self.gens.iter().enumerate() {
            if !x.pow(p)?.is_zero() {
                return Err(Error::NotNilpotentGenerator(i + 1));
            }
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let (a, b) = (&self.gens[i], &self.gens[j]);
                if a.mul(b)? != b.mul(a)? {
                    return Err(Error::NonCommuting(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Rank of the acting group.
    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[MatF] {
        &self.gens
    }

    /// Group matrix `u_i = I + X_i`.
    pub fn group_matrix(&self, i: usize) -> MatF {
        MatF::identity(&self.field, self.n).add(&self.gens[i]).expect("square generator")
    }

    fn check_point(&self, alpha: &Point) -> Result<()> {
        if alpha.k() != self.k() {
            return Err(Error::Shape(format!("point has {} coordinates, module rank is {}", alpha.k(), self.k())));
        }
        if alpha.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(())
    }

    /// `X_α = Σ α_i X_i`.
    pub fn x_alpha(&self, alpha: &Point) -> Result<MatF> {
        self.check_point(alpha)?;
        let mut acc = MatF::zeros(&self.field, self.n, self.n);
        for (x, &a) in self.gens.iter().zip(&alpha.coords) {
            acc.add_scaled(a, x)?;
        }
        Ok(acc)
    }

    /// Jordan type of `u_α − 1` on the module.
    pub fn point_jordan_type(&self, alpha: &Point) -> Result<JordanType> {
        jordan_type_nilpotent(&self.x_alpha(alpha)?, self.p() as usize)
    }

    /// Is the restriction to `⟨u_α⟩` free? Decided by `rank(X_α^{p−1}) = n/p`.
    pub fn is_free_at(&self, alpha: &Point) -> Result<bool> {
        let xa = self.x_alpha(alpha)?;
        let p = self.p() as usize;
        if !self.n.is_multiple_of(p) {
            return Ok(false);
        }
        Ok(xa.pow(p as u64 - 1)?.rank() == self.n / p)
    }

    /// Membership of `α` in the rank variety (the origin always belongs).
    pub fn variety_contains(&self, alpha: &Point) -> Result<bool> {
        if alpha.is_zero() {
            return Ok(true);
        }
        Ok(!self.is_free_at(alpha)?)
    }

    /// Number of free summands `rank(Π X_i^{p−1})`, and whether the module is
    /// projective (free summands account for the whole dimension).
    pub fn projective_test(&self) -> Result<(bool, usize)> {
        let p = self.p() as u64;
        let mut z = MatF::identity(&self.field, self.n);
        for x in &self.gens {
            z = z.mul(&x.pow(p - 1)?)?;
        }
        let free = z.rank();
        let block = (p as usize).checked_pow(self.k() as u32);
        Ok((block.is_some_and(|b| free * b == self.n), free))
    }
}

#[cfg(test)]
mod tests;
