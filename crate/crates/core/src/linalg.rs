//! Dense exact linear algebra on tensor-product spaces.
//!
//! Basis ordering is lexicographic with site 1 varying slowest, so the
//! basis vector `e_{d1} ⊗ … ⊗ e_{dn}` has index `Σ d_k m^{n-k}`. An auxiliary
//! space, when present, is always the first Kronecker factor.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square matrix over [`Scalar`], row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    dim: usize,
    entries: Vec<Scalar>,
}

/// Wire form: `{"dim": N, "entries": [["p/q", ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<Scalar>>,
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.entries.len() != json.dim {
            return Err(Error::MalformedMatrix(format!(
                "declared dim {} but found {} rows",
                json.dim,
                json.entries.len()
            )));
        }
        Matrix::from_rows(json.entries)
    }
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        MatrixJson { dim: m.dim, entries: m.entries.chunks(m.dim.max(1)).map(<[Scalar]>::to_vec).collect() }
    }
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, entries: vec![Scalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.entries[i * dim + i] = Scalar::one();
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix { dim, entries }
    }

    /// Builds a matrix from its rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::MalformedMatrix(format!("row {r} has {} entries, expected {dim}", row.len())));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    /// Integer literal rows, mostly for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut out = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            out.entries[i * values.len() + i] = v.clone();
        }
        out
    }

    /// Matrix unit with a single 1 at zero-based `(row, col)`.
    pub fn unit(dim: usize, row: usize, col: usize) -> Self {
        let mut out = Self::zeros(dim);
        out.set(row, col, Scalar::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() }))
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.entries.iter().position(|v| !v.is_zero()).map(|k| (k / self.dim, k % self.dim, &self.entries[k]))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|v| v * factor).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, exp: u32) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact inverse by Gauss–Jordan elimination, taking the first nonzero
    /// entry of each column as pivot.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.dim;
        let mut work = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero()).ok_or(Error::Singular { pivot_row: col })?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let scale = work.get(col, col).inverse()?;
            work.scale_row(col, &scale);
            inv.scale_row(col, &scale);
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                work.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Exact determinant by fraction-field elimination.
    pub fn determinant(&self) -> Scalar {
        let n = self.dim;
        let mut work = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !work.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if pivot != col {
                work.swap_rows(pivot, col);
                det = -det;
            }
            let p = work.get(col, col).clone();
            det *= &p;
            let p_inv = p.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col) * &p_inv;
                work.sub_row_multiple(r, col, &factor);
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.dim {
            self.entries.swap(a * self.dim + c, b * self.dim + c);
        }
    }

    fn scale_row(&mut self, row: usize, factor: &Scalar) {
        for v in &mut self.entries[row * self.dim..(row + 1) * self.dim] {
            *v *= factor;
        }
    }

    /// row[target] -= factor · row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.dim {
            let s = &self.entries[source * self.dim + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            self.entries[target * self.dim + c] -= &delta;
        }
    }

    fn assert_same_dim(&self, other: &Matrix) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({})[", self.dim)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.assert_same_dim(rhs);
        Matrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.assert_same_dim(rhs);
        Matrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.assert_same_dim(rhs);
        let n = self.dim;
        let mut entries = vec![Scalar::zero(); n * n];
        let fill_row = |r: usize, out: &mut [Scalar]| {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, slot) in out.iter_mut().enumerate() {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        *slot += &(a * b);
                    }
                }
            }
        };
        #[cfg(feature = "parallel")]
        if n >= PARALLEL_MUL_MIN_DIM {
            use rayon::prelude::*;
            entries.par_chunks_mut(n).enumerate().for_each(|(r, out)| fill_row(r, out));
            return Matrix { dim: n, entries };
        }
        for (r, out) in entries.chunks_mut(n).enumerate() {
            fill_row(r, out);
        }
        Matrix { dim: n, entries }
    }
}

/// Below this size the row split costs more than it saves.
#[cfg(feature = "parallel")]
const PARALLEL_MUL_MIN_DIM: usize = 64;

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Kronecker product, lexicographic in (first factor, second factor).
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let db = b.dim;
    let mut out = Matrix::zeros(a.dim * db);
    for (i1, j1, va) in nonzeros(a) {
        for (i2, j2, vb) in nonzeros(b) {
            out.set(i1 * db + i2, j1 * db + j2, va * vb);
        }
    }
    out
}

fn nonzeros(m: &Matrix) -> impl Iterator<Item = (usize, usize, &Scalar)> {
    m.entries.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / m.dim, k % m.dim, v))
}

/// `m^n`, or `None` on overflow.
pub fn space_dim(m: usize, n: usize) -> Option<usize> {
    m.checked_pow(u32::try_from(n).ok()?)
}

/// An operator on the two-site space `C^m ⊗ C^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalOperator {
    m: usize,
    mat: Matrix,
}

impl LocalOperator {
    pub fn new(m: usize, mat: Matrix) -> Result<Self> {
        if m < 2 {
            return Err(Error::LocalDimension(m));
        }
        if mat.dim() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: mat.dim() });
        }
        Ok(LocalOperator { m, mat })
    }

    /// Infers `m` from a square matrix of dimension `m²`.
    pub fn from_matrix(mat: Matrix) -> Result<Self> {
        let m = (2..=mat.dim()).find(|k| k * k >= mat.dim()).unwrap_or(0);
        if m * m != mat.dim() {
            return Err(Error::MalformedMatrix(format!("dimension {} is not a perfect square", mat.dim())));
        }
        Self::new(m, mat)
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, Matrix::zeros(m * m))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mat(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// Same local dimension, new matrix. The caller guarantees the dimension.
    pub(crate) fn with_matrix(&self, mat: Matrix) -> LocalOperator {
        debug_assert_eq!(mat.dim(), self.m * self.m);
        LocalOperator { m: self.m, mat }
    }
}

impl fmt::Debug for LocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalOperator(m = {}) {:?}", self.m, self.mat)
    }
}

/// `I^{⊗(i−1)} ⊗ op ⊗ I^{⊗(n−i−1)}` on an `n`-site chain, with `1 ≤ i ≤ n−1`.
pub fn embed(op: &LocalOperator, i: usize, n: usize) -> Result<Matrix> {
    if i == 0 || i >= n {
        return Err(Error::SiteOutOfRange { site: i, n });
    }
    let left = Matrix::identity(op.m.pow((i - 1) as u32));
    let right = Matrix::identity(op.m.pow((n - i - 1) as u32));
    Ok(kron(&kron(&left, &op.mat), &right))
}

/// Places `op` on an arbitrary ordered pair of distinct sites (1-based) of an
/// `n`-site chain: its first tensor slot acts on `first`, its second on `second`.
pub fn place_pair(op: &LocalOperator, first: usize, second: usize, n: usize) -> Result<Matrix> {
    for site in [first, second] {
        if site == 0 || site > n {
            return Err(Error::SiteOutOfRange { site, n });
        }
    }
    if first == second {
        return Err(Error::InvalidParameter(format!("sites must differ, both are {first}")));
    }
    let m = op.m;
    let dim = space_dim(m, n).ok_or(Error::DimensionGuard { dim: usize::MAX, limit: usize::MAX })?;
    let weight = |site: usize| m.pow((n - site) as u32);
    let (w1, w2) = (weight(first), weight(second));
    let mut out = Matrix::zeros(dim);
    for col in 0..dim {
        let d1 = (col / w1) % m;
        let d2 = (col / w2) % m;
        let base = col - d1 * w1 - d2 * w2;
        let local_col = d1 * m + d2;
        for local_row in 0..m * m {
            let v = op.mat.get(local_row, local_col);
            if v.is_zero() {
                continue;
            }
            let row = base + (local_row / m) * w1 + (local_row % m) * w2;
            out.set(row, col, v.clone());
        }
    }
    Ok(out)
}

/// The swap `u ⊗ v ↦ v ⊗ u` on `C^m ⊗ C^m`.
pub fn permutation_op(m: usize) -> Result<LocalOperator> {
    if m < 2 {
        return Err(Error::LocalDimension(m));
    }
    let mut mat = Matrix::zeros(m * m);
    for i in 0..m {
        for j in 0..m {
            mat.set(j * m + i, i * m + j, Scalar::one());
        }
    }
    LocalOperator::new(m, mat)
}

/// Traces out the first (auxiliary) factor of an operator on `(C^m)^{⊗(n+1)}`.
pub fn partial_trace_first(mat: &Matrix, m: usize, n: usize) -> Result<Matrix> {
    let inner = space_dim(m, n).ok_or(Error::DimensionGuard { dim: usize::MAX, limit: usize::MAX })?;
    if mat.dim() != inner * m {
        return Err(Error::DimensionMismatch { expected: inner * m, found: mat.dim() });
    }
    Ok(Matrix::from_fn(inner, |r, c| (0..m).map(|k| mat.get(k * inner + r, k * inner + c).clone()).sum()))
}

/// Transformations that map solutions of the `S` relation to solutions.
#[derive(Clone, Debug, PartialEq)]
pub enum SymKind {
    /// `S⁻¹`
    Inverse,
    /// `(P S P)^{t₁t₂}`
    TransposeFlip,
    /// `(Q⊗Q) S (Q⊗Q)⁻¹`
    Conjugate(Matrix),
}

pub fn sym_transform(op: &LocalOperator, kind: &SymKind) -> Result<LocalOperator> {
    let mat = match kind {
        SymKind::Inverse => op.mat.inverse()?,
        SymKind::TransposeFlip => flip(op)?.transpose(),
        SymKind::Conjugate(q) => conjugate(op, q)?,
    };
    Ok(op.with_matrix(mat))
}

/// Maps between `S`-type and `T`-type generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StKind {
    /// Full transpose `S^{t₁t₂}`.
    Transpose,
    /// `P S P`.
    Flip,
}

pub fn st_map(op: &LocalOperator, kind: StKind) -> Result<LocalOperator> {
    let mat = match kind {
        StKind::Transpose => op.mat.transpose(),
        StKind::Flip => flip(op)?,
    };
    Ok(op.with_matrix(mat))
}

fn flip(op: &LocalOperator) -> Result<Matrix> {
    let p = permutation_op(op.m)?;
    Ok(&(&p.mat * &op.mat) * &p.mat)
}

/// `(Q⊗Q) M (Q⊗Q)⁻¹` for a single-site `Q`.
pub(crate) fn conjugate(op: &LocalOperator, q: &Matrix) -> Result<Matrix> {
    if q.dim() != op.m {
        return Err(Error::DimensionMismatch { expected: op.m, found: q.dim() });
    }
    let qq = kron(q, q);
    let qq_inv = qq.inverse()?;
    Ok(&(&qq * &op.mat) * &qq_inv)
}
