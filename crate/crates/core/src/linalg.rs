//! Small dense complex matrices with Jacobi eigen- and singular-value solvers.
//!
//! Everything here is sized for the desk-scale problems of this crate (sides
//! up to a few hundred), so plain row-major storage and cyclic Jacobi sweeps
//! are accurate and fast enough.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

// Supplies sqrt and friends on f64 without std (the lint misfires here).
#[allow(unused_imports)]
use num_traits::Float;

pub use num_complex::Complex64 as C64;

use crate::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Wraps row-major data; fails if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(CMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Column vector |v⟩.
    pub fn column_vector(v: &[C64]) -> Self {
        CMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Rank-one projector |v⟩⟨v|.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, &x) in v.iter().enumerate().take(self.rows) {
            self[(i, j)] = x;
        }
    }

    /// Stacks the given equal-length vectors as columns.
    pub fn from_columns(cols: &[Vec<C64>]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            m.set_column(j, c);
        }
        Ok(m)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Matrix product; panics on inner-dimension mismatch (programmer error).
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        (0..self.rows).map(|i| dot_u(self.row(i), v)).collect()
    }

    /// v† M (returned as the row vector's entries).
    pub fn vec_mul(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.rows, v.len(), "vec_mul: dimension mismatch");
        let mut out = vec![ZERO; self.cols];
        for (i, vi) in v.iter().enumerate() {
            let c = vi.conj();
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o += c * m;
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn add_assign_scaled(&mut self, other: &CMatrix, s: C64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = CMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise deviation of M†M from the identity.
    pub fn isometry_deviation(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&CMatrix::identity(self.cols))
    }

    /// Returns `NotUnitary` unless the matrix is square with U†U = I to `tol`.
    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotUnitary(f64::INFINITY));
        }
        let dev = self.isometry_deviation();
        if dev > tol {
            return Err(Error::NotUnitary(dev));
        }
        Ok(())
    }

    /// Symmetrized copy (M + M†)/2 with exactly real diagonal.
    pub fn hermitian_part(&self) -> CMatrix {
        let mut h = CMatrix::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        for i in 0..self.rows {
            h[(i, i)].im = 0.0;
        }
        h
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Σ aᵢ bᵢ (no conjugation).
#[inline]
pub fn dot_u(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// ⟨a|b⟩ = Σ conj(aᵢ) bᵢ.
#[inline]
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

#[inline]
pub fn norm(v: &[C64]) -> f64 {
    norm_sqr(v).sqrt()
}

/// Normalizes in place and returns the original norm (zero vectors untouched).
pub fn normalize(v: &mut [C64]) -> f64 {
    let n = norm(v);
    if n > 0.0 {
        let inv = 1.0 / n;
        for z in v.iter_mut() {
            *z *= inv;
        }
    }
    n
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigh {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Only the Hermitian part of `a` is used. Eigenvalues are returned in
/// descending order; ties keep their original diagonal order.
pub fn eigh(a: &CMatrix) -> Eigh {
    assert!(a.is_square(), "eigh: matrix must be square");
    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let total = m.frobenius_norm();
    if n > 1 && total > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += m[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-15 * total {
                break;
            }
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    rotated |= jacobi_rotate(&mut m, &mut v, p, q, total);
                }
            }
            if !rotated {
                break;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(core::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Eigh { values, vectors }
}

fn jacobi_rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, total: f64) -> bool {
    let apq = m[(p, q)];
    let b = apq.norm();
    if b <= 1e-300 || b <= 1e-18 * total {
        return false;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Phase e^{-iφ} turning a_pq real, followed by a real rotation.
    let ph = apq.conj() / b;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let s = if theta >= 0.0 { 1.0 } else { -1.0 };
        s / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = ph * (-s);
    let g_qq = ph * c;
    let n = m.rows;
    // A ← A G
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * g_pp + akq * g_qp;
        m[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A ← G† A
    let (c_pp, c_pq, c_qp, c_qq) = (g_pp.conj(), g_pq.conj(), g_qp.conj(), g_qq.conj());
    for j in 0..n {
        let apj = m[(p, j)];
        let aqj = m[(q, j)];
        m[(p, j)] = c_pp * apj + c_qp * aqj;
        m[(q, j)] = c_pq * apj + c_qq * aqj;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
    // V ← V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    true
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigvalsh(a: &CMatrix) -> Vec<f64> {
    eigh(a).values
}

/// Leading eigenpair of a Hermitian matrix.
pub fn top_eigenpair(a: &CMatrix) -> (f64, Vec<C64>) {
    let e = eigh(a);
    (e.values[0], e.vectors.column(0))
}

/// Thin singular value decomposition A = U diag(s) V†.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Singular values in descending order (length min(rows, cols)).
    pub values: Vec<f64>,
    /// rows × k, orthonormal columns for every nonzero singular value.
    pub u: CMatrix,
    /// cols × k, orthonormal columns.
    pub v: CMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(a: &CMatrix) -> Svd {
    if a.rows < a.cols {
        let t = svd(&a.adjoint());
        return Svd { values: t.values, u: t.v, v: t.u };
    }
    let (m, n) = (a.rows, a.cols);
    // Work on columns: store transposed so each column is contiguous.
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut vcols: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            e
        })
        .collect();
    let total: f64 = cols.iter().map(|c| norm_sqr(c)).sum();
    if total > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let alpha = norm_sqr(&cols[i]);
                    let beta = norm_sqr(&cols[j]);
                    let gamma = inner(&cols[i], &cols[j]);
                    let g = gamma.norm();
                    if g <= 1e-15 * (alpha * beta).sqrt() || g <= 1e-300 {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let sgn = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    let t = sgn / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let ph = gamma.conj() / g;
                    rotate_pair(&mut cols, i, j, c, s, ph);
                    rotate_pair(&mut vcols, i, j, c, s, ph);
                }
            }
            if !rotated {
                break;
            }
        }
    }
    let norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(core::cmp::Ordering::Equal));
    let values: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let mut u = CMatrix::zeros(m, n);
    let mut v = CMatrix::zeros(n, n);
    let floor = 1e-14 * values.first().copied().unwrap_or(0.0);
    for (k, &i) in order.iter().enumerate() {
        if norms[i] > floor && norms[i] > 0.0 {
            let inv = 1.0 / norms[i];
            for r in 0..m {
                u[(r, k)] = cols[i][r] * inv;
            }
        }
        v.set_column(k, &vcols[i]);
    }
    Svd { values, u, v }
}

// a_i ← c a_i − s e^{-iφ} a_j,  a_j ← s a_i + c e^{-iφ} a_j
fn rotate_pair(cols: &mut [Vec<C64>], i: usize, j: usize, c: f64, s: f64, ph: C64) {
    let (lo, hi) = cols.split_at_mut(j);
    let (ci, cj) = (&mut lo[i], &mut hi[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yp = *y * ph;
        let xi = *x;
        *x = xi * c - yp * s;
        *y = xi * s + yp * c;
    }
}

/// Singular values, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    svd(a).values
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_fn(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let e = eigh(a);
    let n = a.rows;
    let fv: Vec<f64> = e.values.iter().map(|&x| f(x)).collect();
    CMatrix::from_fn(n, n, |i, j| {
        let mut acc = ZERO;
        for (k, &x) in fv.iter().enumerate() {
            acc += e.vectors[(i, k)] * e.vectors[(j, k)].conj() * x;
        }
        acc
    })
}

/// Orthonormalizes vectors by modified Gram-Schmidt, dropping those whose
/// residual norm falls below `tol`.
pub fn gram_schmidt(vectors: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        if normalize(&mut w) > tol {
            out.push(w);
        }
    }
    out
}

/// Orthonormal basis of the orthogonal complement of span(`vectors`) in Cⁿ.
pub fn orthogonal_complement(vectors: &[Vec<C64>], n: usize, tol: f64) -> Vec<Vec<C64>> {
    let mut all = gram_schmidt(vectors, tol);
    let k = all.len();
    for i in 0..n {
        let mut e = vec![ZERO; n];
        e[i] = ONE;
        all.push(e);
    }
    let basis = gram_schmidt(&all, tol);
    basis[k..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 5, 9, 16] {
            let g = random::ginibre(&mut rng, n, n);
            let h = g.add(&g.adjoint());
            let e = eigh(&h);
            assert!(e.vectors.isometry_deviation() < 1e-12);
            let d = CMatrix::diag(&e.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
            let back = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
            assert!(back.max_abs_diff(&h) < 1e-11 * (1.0 + h.max_abs()));
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eigh_known_spectrum() {
        // Pauli Y has eigenvalues ±1.
        let y = CMatrix::from_vec(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap();
        let e = eigh(&y);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n) in [(3, 3), (4, 2), (2, 5), (9, 3), (1, 4)] {
            let a = random::ginibre(&mut rng, m, n);
            let s = svd(&a);
            let k = m.min(n);
            let mut us = s.u.clone();
            for j in 0..k {
                for i in 0..m {
                    us[(i, j)] *= s.values[j];
                }
            }
            let back = us.matmul(&s.v.adjoint());
            assert!(back.max_abs_diff(&a) < 1e-12, "{m}x{n}");
            assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_of_diagonal() {
        let a = CMatrix::from_real(2, 2, &[0.5, 0.0, 0.0, 0.75f64.sqrt()]).unwrap();
        let s = singular_values(&a);
        assert!((s[0] - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((s[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_svd() {
        let v = [c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)];
        let w = [c(0.5, 0.5), c(1.0, 0.0)];
        let a = CMatrix::from_fn(3, 2, |i, j| v[i] * w[j].conj());
        let s = singular_values(&a);
        assert!((s[0] - norm(&v) * norm(&w)).abs() < 1e-13);
        assert!(s[1].abs() < 1e-13);
    }

    #[test]
    fn kron_and_complement() {
        let x = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let k = x.kron(&CMatrix::identity(2));
        assert_eq!(k[(0, 2)], ONE);
        assert_eq!(k[(3, 1)], ONE);
        let comp = orthogonal_complement(&[vec![ONE, ZERO, ZERO]], 3, 1e-12);
        assert_eq!(comp.len(), 2);
        for v in &comp {
            assert!(v[0].norm() < 1e-15);
        }
    }

    #[test]
    fn hermitian_fn_square_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random::ginibre(&mut rng, 4, 4);
        let p = g.matmul(&g.adjoint());
        let r = hermitian_fn(&p, |x| x.max(0.0).sqrt());
        assert!(r.matmul(&r).max_abs_diff(&p) < 1e-11);
    }
}
