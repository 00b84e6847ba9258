use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatF {
    field: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Fel>,
}

impl fmt::Debug for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatF {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon data from an elimination pass.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Reduced row echelon form (pivot rows first, pivots normalized to 1).
    pub rref: MatF,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl MatF {
    pub fn zeros(field: &FieldCtx, rows: usize, cols: usize) -> Self {
        MatF { field: field.clone(), rows, cols, data: vec![Fel::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fel::ONE);
        }
        m
    }

    pub fn from_fn(field: &FieldCtx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fel) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        MatF { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &FieldCtx, rows: &[Vec<Fel>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(MatF {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Matrix of small integers reduced into the field.
    pub fn from_ints(field: &FieldCtx, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |r, c| field.from_int(rows[r][c]))
    }

    /// Columns given as vectors.
    pub fn from_columns(field: &FieldCtx, n_rows: usize, columns: &[Vec<Fel>]) -> Self {
        Self::from_fn(field, n_rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fel {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fel) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fel] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fel> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[Fel] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_shape(&self, other: &MatF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MismatchedContext("matrices over different fields".into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MatF) -> Result<MatF> {
        self.check_same_shape(other)?;
        let f = &self.field;
        Ok(MatF {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, other: &MatF) -> Result<MatF> {
        self.check_same_shape(other)?;
        let f = &self.field;
        Ok(MatF {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: Fel) -> MatF {
        let f = &self.field;
        MatF {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Fel, other: &MatF) -> Result<()> {
        self.check_same_shape(other)?;
        if c.is_zero() {
            return Ok(());
        }
        let f = self.field.clone();
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = f.add(*a, f.mul(c, b));
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatF) -> Result<MatF> {
        if self.field != other.field {
            return Err(Error::MismatchedContext("matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatF::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = r * other.cols;
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k);
                for (c, &b) in src.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[dst + c] = f.add(out.data[dst + c], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fel]) -> Vec<Fel> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fel::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Result<MatF> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = MatF::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> MatF {
        MatF::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Kronecker product `self ⊗ other` (row index `i * other.rows + j`).
    pub fn kron(&self, other: &MatF) -> Result<MatF> {
        if self.field != other.field {
            return Err(Error::MismatchedContext("matrices over different fields".into()));
        }
        let f = &self.field;
        Ok(MatF::from_fn(f, self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                return Fel::ZERO;
            }
            f.mul(a, other.get(r % other.rows, c % other.cols))
        }))
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &MatF) -> Result<MatF> {
        if self.field != other.field {
            return Err(Error::MismatchedContext("matrices over different fields".into()));
        }
        let (r0, c0) = (self.rows, self.cols);
        Ok(MatF::from_fn(&self.field, r0 + other.rows, c0 + other.cols, |r, c| {
            match (r < r0, c < c0) {
                (true, true) => self.get(r, c),
                (false, false) => other.get(r - r0, c - c0),
                _ => Fel::ZERO,
            }
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatF {
        MatF::from_fn(&self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &MatF) -> Result<MatF> {
        if self.rows != other.rows {
            return Err(Error::Shape("hcat with different row counts".into()));
        }
        let c0 = self.cols;
        Ok(MatF::from_fn(&self.field, self.rows, c0 + other.cols, |r, c| {
            if c < c0 {
                self.get(r, c)
            } else {
                other.get(r, c - c0)
            }
        }))
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(piv, row);
            let inv = f.inv(m.get(row, col)).unwrap();
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                m.eliminate(r, row, factor, col);
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { rref: m, pivots }
    }

    /// Rank by forward elimination; `self` is left untouched.
    pub fn rank(&self) -> usize {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(piv, row);
            let inv = f.inv(m.get(row, col)).unwrap();
            for r in row + 1..m.rows {
                let v = m.get(r, col);
                if v.is_zero() {
                    continue;
                }
                m.eliminate(r, row, f.mul(v, inv), col);
            }
            row += 1;
        }
        row
    }

    /// Basis of the right null space `{v : self·v = 0}`, one vector per free
    /// column, in reduced echelon normalization (free coordinate 1, other free
    /// coordinates 0).
    pub fn kernel_basis(&self) -> Vec<Vec<Fel>> {
        let f = &self.field;
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fel::ZERO; self.cols];
                v[free] = Fel::ONE;
                for (i, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = f.neg(ech.rref.get(i, free));
                }
                v
            })
            .collect()
    }

    /// A solution of `self·x = b`, if any.
    pub fn solve(&self, b: &[Fel]) -> Option<Vec<Fel>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = MatF::from_fn(&self.field, self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                b[r]
            }
        });
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fel::ZERO; self.cols];
        for (i, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.rref.get(i, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<MatF> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hcat(&MatF::identity(&self.field, n)).ok()?;
        let ech = aug.echelon();
        if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(ech.rref.submatrix(&rows, &cols))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Fel {
        assert!(self.is_square());
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = Fel::ONE;
        for col in 0..m.cols {
            let Some(piv) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Fel::ZERO;
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = f.neg(det);
            }
            let p = m.get(col, col);
            det = f.mul(det, p);
            let inv = f.inv(p).unwrap();
            for r in col + 1..m.rows {
                let v = m.get(r, col);
                if !v.is_zero() {
                    m.eliminate(r, col, f.mul(v, inv), col);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[target] -= factor * row[source]`, starting at column `from`.
    fn eliminate(&mut self, target: usize, source: usize, factor: Fel, from: usize) {
        let f = &self.field;
        let cols = self.cols;
        for c in from..cols {
            let s = self.data[source * cols + c];
            if s.is_zero() {
                continue;
            }
            let t = &mut self.data[target * cols + c];
            *t = f.sub(*t, f.mul(factor, s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn random_matrix(f: &FieldCtx, rows: usize, cols: usize, rng: &mut rng::Stream) -> MatF {
        MatF::from_fn(f, rows, cols, |_, _| Fel(rng.gen_range(0..f.q())))
    }

    #[test]
    fn rank_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(MatF::identity(&f3, 3).rank(), 3);
        assert_eq!(MatF::zeros(&f3, 4, 4).rank(), 0);
        let x1 = MatF::from_ints(&f3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(x1.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(MatF::identity(&f3, 3).kernel_basis().is_empty());
        let z = MatF::zeros(&f3, 2, 2).kernel_basis();
        assert_eq!(z, vec![vec![Fel(1), Fel(0)], vec![Fel(0), Fel(1)]]);
        let a = MatF::from_ints(&f3, &[&[1, 1], &[2, 2]]);
        assert_eq!(a.kernel_basis(), vec![vec![Fel(2), Fel(1)]]);
    }

    #[test]
    fn solve_and_inverse() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let a = MatF::from_ints(&f5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatF::identity(&f5, 2));
        let x = a.solve(&[Fel(1), Fel(0)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Fel(1), Fel(0)]);
        let singular = MatF::from_ints(&f5, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[Fel(1), Fel(0)]).is_none());
        assert_eq!(singular.det(), Fel(0));
        assert_eq!(a.det(), f5.from_int(-2));
    }

    #[test]
    fn random_rank_properties() {
        for (p, m) in [(3u64, 1u32), (3, 2), (5, 1), (2, 3)] {
            let f = FieldCtx::new(p, m).unwrap();
            let mut rng = rng::stream(3, p + m as u64);
            for _ in 0..40 {
                let (r, k, c) = (rng.gen_range(1..7), rng.gen_range(1..7), rng.gen_range(1..7));
                let mut a = random_matrix(&f, r, k, &mut rng);
                // force some rank deficiency
                if rng.gen_bool(0.5) && r > 1 {
                    for col in 0..k {
                        let v = a.get(0, col);
                        a.set(r - 1, col, f.mul(v, f.from_int(2)));
                    }
                }
                let b = random_matrix(&f, k, c, &mut rng);
                let ab = a.mul(&b).unwrap();
                assert!(ab.rank() <= a.rank().min(b.rank()));
                assert_eq!(a.rank(), a.transpose().rank());
                assert_eq!(a.rank(), a.echelon().rank());
                let ker = a.kernel_basis();
                assert_eq!(ker.len(), k - a.rank());
                for v in &ker {
                    assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn kron_and_block_diag_shapes() {
        let f = FieldCtx::new(3, 1).unwrap();
        let a = MatF::from_ints(&f, &[&[1, 2], &[0, 1]]);
        let i3 = MatF::identity(&f, 3);
        let k = a.kron(&i3).unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(1, 4), Fel(2));
        let d = a.block_diag(&i3).unwrap();
        assert_eq!(d.rank(), 5);
    }
}
