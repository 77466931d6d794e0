//! Exact rational linear algebra: kernel and row-space bases, Moore-Penrose
//! pseudoinverse, orthogonal projectors, and the range/kernel split
//! x = x_r + x_k used by the diagnostics.
//!
//! Gaussian elimination with exact pivoting (first nonzero pivot); no
//! tolerance parameters exist anywhere in this module.

use crate::scalar::Rat;
use num_traits::{One, Zero};

pub const MAX_ENTRIES: usize = 10_000;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix too large: {rows} x {cols} exceeds {MAX_ENTRIES} entries")]
    SizeLimit { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinalgError> {
        if rows * cols > MAX_ENTRIES {
            return Err(LinalgError::SizeLimit { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix::new(rows, cols, vec![Rat::zero(); rows * cols]).expect("size")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        RationalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} cols, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    acc += self.at(i, j) * &x[j];
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for r in 0..m.rows {
            if lead >= m.cols {
                break;
            }
            let mut pivot_row = None;
            for i in r..m.rows {
                if !m.at(i, lead).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let i = match pivot_row {
                Some(i) => i,
                None => {
                    lead += 1;
                    // retry this row against the next column
                    let (mm, mut ps) = m.rref_from(r, lead);
                    pivots.append(&mut ps);
                    return (mm, pivots);
                }
            };
            m.swap_rows(r, i);
            let pv = m.at(r, lead).clone();
            for j in 0..m.cols {
                *m.at_mut(r, j) = m.at(r, j) / &pv;
            }
            for k in 0..m.rows {
                if k != r && !m.at(k, lead).is_zero() {
                    let factor = m.at(k, lead).clone();
                    for j in 0..m.cols {
                        let v = m.at(k, j) - &factor * m.at(r, j);
                        *m.at_mut(k, j) = v;
                    }
                }
            }
            pivots.push(lead);
            lead += 1;
        }
        (m, pivots)
    }

    fn rref_from(&self, start_row: usize, start_col: usize) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = start_col;
        let mut r = start_row;
        while r < m.rows && lead < m.cols {
            let mut pivot_row = None;
            for i in r..m.rows {
                if !m.at(i, lead).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let i = match pivot_row {
                Some(i) => i,
                None => {
                    lead += 1;
                    continue;
                }
            };
            m.swap_rows(r, i);
            let pv = m.at(r, lead).clone();
            for j in 0..m.cols {
                *m.at_mut(r, j) = m.at(r, j) / &pv;
            }
            for k in 0..m.rows {
                if k != r && !m.at(k, lead).is_zero() {
                    let factor = m.at(k, lead).clone();
                    for j in 0..m.cols {
                        let v = m.at(k, j) - &factor * m.at(r, j);
                        *m.at_mut(k, j) = v;
                    }
                }
            }
            pivots.push(lead);
            lead += 1;
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RationalMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Rat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        let mut out = RationalMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Moore-Penrose pseudoinverse via the rank factorization A = C F,
    /// A^+ = F^T (F F^T)^{-1} (C^T C)^{-1} C^T; exact in rational arithmetic.
    pub fn pseudoinverse(&self) -> RationalMatrix {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        if rank == 0 {
            return RationalMatrix::zero(self.cols, self.rows);
        }
        // C: pivot columns of A (rows x rank); F: nonzero rows of rref (rank x cols)
        let mut c = RationalMatrix::zero(self.rows, rank);
        for (k, &p) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                *c.at_mut(i, k) = self.at(i, p).clone();
            }
        }
        let mut f = RationalMatrix::zero(rank, self.cols);
        for i in 0..rank {
            for j in 0..self.cols {
                *f.at_mut(i, j) = r.at(i, j).clone();
            }
        }
        let ft = f.transpose();
        let ct = c.transpose();
        let fft = f.mul(&ft).expect("dims");
        let ctc = ct.mul(&c).expect("dims");
        let fft_inv = fft.inverse().expect("F F^T invertible at full row rank");
        let ctc_inv = ctc.inverse().expect("C^T C invertible at full col rank");
        ft.mul(&fft_inv)
            .and_then(|m| m.mul(&ctc_inv))
            .and_then(|m| m.mul(&ct))
            .expect("dims")
    }
}

/// Linear subspace given by an independent spanning set; empty basis is {0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(ambient: usize, basis: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        for v in &basis {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch(
                    "basis vector has wrong length".into(),
                ));
            }
        }
        if !basis.is_empty() {
            let m = RationalMatrix::from_rows(basis.clone())?;
            if m.rank() != basis.len() {
                return Err(LinalgError::DimensionMismatch(
                    "basis vectors are linearly dependent".into(),
                ));
            }
        }
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..ambient {
            let mut v = vec![Rat::zero(); ambient];
            v[i] = Rat::one();
            basis.push(v);
        }
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.ambient);
        if x.iter().all(|v| v.is_zero()) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        let m = RationalMatrix::from_rows(rows).expect("dims");
        m.rank() == self.basis.len()
    }

    /// Orthogonal projector P = V (V^T V)^{-1} V^T onto the span.
    pub fn projector(&self) -> RationalMatrix {
        if self.basis.is_empty() {
            return RationalMatrix::zero(self.ambient, self.ambient);
        }
        let v = RationalMatrix::from_rows(self.basis.clone())
            .expect("dims")
            .transpose();
        let vt = v.transpose();
        let gram = vt.mul(&v).expect("dims");
        let gram_inv = gram.inverse().expect("independent basis");
        v.mul(&gram_inv)
            .and_then(|m| m.mul(&vt))
            .expect("dims")
    }

    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.projector().mul_vec(x).expect("dims")
    }

    /// Basis of the orthogonal complement.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = RationalMatrix::from_rows(self.basis.clone()).expect("dims");
        kernel_basis(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Basis of {x : Ax = 0} from the reduced row-echelon form.
pub fn kernel_basis(a: &RationalMatrix) -> Subspace {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|j| !pivot_set.contains(j)).collect();
    let mut basis = Vec::new();
    for &fj in &free {
        let mut v = vec![Rat::zero(); n];
        v[fj] = Rat::one();
        for (row, &pj) in pivots.iter().enumerate() {
            v[pj] = -r.at(row, fj).clone();
        }
        basis.push(v);
    }
    Subspace::new(n, basis).expect("construction yields independent vectors")
}

/// Basis of ran A^T (the row space), the orthogonal complement of ker A.
pub fn rowspace_basis(a: &RationalMatrix) -> Subspace {
    let (r, pivots) = a.rref();
    let mut basis = Vec::new();
    for row in 0..pivots.len() {
        basis.push(r.row(row));
    }
    Subspace::new(a.cols(), basis).expect("rref rows independent")
}

/// Splits x into x_r + x_k with x_r in ran A^T and x_k in ker A.
pub fn decompose(a: &RationalMatrix, x: &[Rat]) -> Result<(Vec<Rat>, Vec<Rat>), LinalgError> {
    if x.len() != a.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "vector length {} vs {} matrix columns",
            x.len(),
            a.cols()
        )));
    }
    let row_space = rowspace_basis(a);
    let x_r = row_space.project(x);
    let x_k: Vec<Rat> = x.iter().zip(&x_r).map(|(a, b)| a - b).collect();
    Ok((x_r, x_k))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], k: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}
